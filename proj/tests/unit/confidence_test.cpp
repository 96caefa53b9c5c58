#include <gtest/gtest.h>

#include <cmath>

#include "hmmforge/confidence.hpp"
#include "hmmforge/error.hpp"
#include "hmmforge/inference.hpp"
#include "hmmforge/sampling.hpp"
#include "hmmforge/stationary.hpp"
#include "support/fixtures.hpp"

namespace hmmforge {
namespace {

// One-sided normal quantiles z_{1-alpha}, from tables.
struct ZRow {
  double alpha;
  double z;
};
constexpr ZRow kZ[] = {{0.01, 2.326347874}, {0.05, 1.644853627}, {0.1, 1.281551566}};

TEST(RequiredVisits, HalfGammaNeedsThree) { EXPECT_EQ(required_visits_normal(0.5, 0.05), 3u); }

TEST(RequiredVisits, ClosedFormOverGrid) {
  for (const auto& row : kZ) {
    for (int i = 1; i <= 99; ++i) {
      const double gamma = i / 100.0;
      const double raw = row.z * row.z * (1.0 - gamma) / gamma;
      const auto expected = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(raw)));
      EXPECT_EQ(required_visits_normal(gamma, row.alpha), expected) << gamma << " " << row.alpha;
    }
  }
}

TEST(RequiredVisits, ExactBinomialVariant) {
  // (1 - 0.5)^n <= 0.05 first holds at n = 5.
  EXPECT_EQ(required_visits_exact(0.5, 0.05), 5u);
  EXPECT_EQ(required_visits_exact(0.1, 0.05), 29u);
}

TEST(RequiredVisits, MonotoneInEpsilonAndAlpha) {
  const auto m = testing::model_0901();
  for (double alpha : {0.1, 0.05, 0.01}) {
    std::uint64_t prev = UINT64_MAX;
    for (double eps = 0.01; eps < 0.16; eps += 0.01) {
      const auto r = required_samples(m, ConfidenceConfig{eps, alpha, false});
      const auto v = r.states[0].required_visits;
      EXPECT_LE(v, prev);
      prev = v;
    }
  }
  for (int i = 1; i < 50; ++i) {
    const double gamma = i / 50.0;
    EXPECT_LE(required_visits_normal(gamma, 0.1), required_visits_normal(gamma, 0.05));
    EXPECT_LE(required_visits_normal(gamma, 0.05), required_visits_normal(gamma, 0.01));
  }
}

TEST(RequiredSamples, SymmetricModel) {
  const auto r = required_samples(testing::symmetric_pair(), ConfidenceConfig{0.05, 0.05, false});
  ASSERT_EQ(r.states.size(), 2u);
  EXPECT_NEAR(r.states[0].gamma, 0.1, 1e-12);
  EXPECT_EQ(r.states[0].required_visits, r.states[1].required_visits);
  EXPECT_EQ(r.states[0].required_visits, 25u);
  EXPECT_EQ(r.required_length, 2 * r.states[0].required_visits);
  EXPECT_FALSE(r.states[0].visits);
  EXPECT_EQ(r.verdict, Verdict::NeedMoreData);
  EXPECT_EQ(r.x_bar_unobserved, 0.0);
}

TEST(RequiredSamples, GammaTimesPiIsEpsilon) {
  const auto r = required_samples(testing::model_a(), ConfidenceConfig{0.07, 0.05, false});
  for (const auto& s : r.states) EXPECT_NEAR(s.gamma * s.pi, 0.07, 1e-12);
}

TEST(RequiredSamples, GammaOutOfRangeNamesStates) {
  // pi(s2) = 1/6 < 0.2
  try {
    required_samples(testing::model_0901(), ConfidenceConfig{0.2, 0.05, false});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::GammaOutOfRange);
    EXPECT_NE(std::string(e.what()).find("s2"), std::string::npos);
  }
  ConfidenceConfig vac{0.2, 0.05, false, true};
  const auto r = required_samples(testing::model_0901(), vac);
  EXPECT_FALSE(r.states[0].vacuous);
  EXPECT_TRUE(r.states[1].vacuous);
  EXPECT_EQ(r.required_length, static_cast<std::uint64_t>(std::ceil(r.states[0].required_visits / (5.0 / 6.0))));
}

TEST(RequiredSamples, ConfigChecks) {
  EXPECT_THROW(required_samples(testing::model_a(), ConfidenceConfig{0.0, 0.05, false}), Error);
  EXPECT_THROW(required_samples(testing::model_a(), ConfidenceConfig{0.1, 1.0, false}), Error);
}

TEST(Assess, VerdictIsAllStatesSufficient) {
  const auto m = testing::model_a();
  const ConfidenceConfig cfg{0.05, 0.05, false};
  const auto seq = generate(m, 5000, 3);
  const auto r = assess_confidence(m, seq, cfg);
  bool all = true;
  for (const auto& s : r.states) {
    ASSERT_TRUE(s.visits);
    EXPECT_EQ(s.sufficient, *s.visits >= s.required_visits);
    EXPECT_NEAR(*s.z_statistic, std::sqrt(*s.visits * s.gamma / (1 - s.gamma)), 1e-12);
    all = all && s.sufficient;
  }
  EXPECT_EQ(r.verdict == Verdict::Sufficient, all);
}

TEST(Assess, SufficiencyPersistsOnExtension) {
  const auto m = testing::model_0901();
  const ConfidenceConfig cfg{0.1, 0.05, false};
  const auto seq = generate(m, 3000, 12);
  bool seen = false;
  for (std::size_t n = 10; n <= seq.size(); n += 10) {
    const auto r = assess_confidence(m, seq.prefix(n), cfg);
    if (seen) EXPECT_EQ(r.verdict, Verdict::Sufficient) << n;
    seen = seen || r.verdict == Verdict::Sufficient;
  }
  EXPECT_TRUE(seen);
}

TEST(Assess, BrokenTraceNeedsMoreData) {
  const auto seq = SymbolSequence::from_tokens(testing::ab(), std::string(40, 'a') + "bb");
  const auto r = assess_confidence(testing::two_cycle(), seq, ConfidenceConfig{0.1, 0.05, false});
  EXPECT_EQ(r.verdict, Verdict::NeedMoreData);
  EXPECT_TRUE(r.trace_broken_at);
}

TEST(Online, ShortSequenceHasNoModel) {
  const auto r = online_confidence_check(SymbolSequence::from_tokens(testing::ab(), "a"),
                                         ConfidenceConfig{0.1, 0.05, false}, InferenceConfig{});
  EXPECT_FALSE(r.model);
  EXPECT_EQ(r.report.verdict, Verdict::NeedMoreData);
  EXPECT_FALSE(r.report.note.empty());
}

TEST(Online, FlipsAtTwentyTwoOnAlternation) {
  // epsilon 0.1 over pi 1/2 gives gamma 0.2, n* = ceil(1.6449^2 * 4) = 11,
  // D* = 22.
  const auto cfg = ConfidenceConfig{0.1, 0.05, false};
  const auto full = generate(testing::two_cycle(), 200, 1, StateId{0});
  EXPECT_EQ(required_samples(testing::two_cycle(), cfg).required_length, 22u);
  for (std::size_t n = 2; n <= 200; ++n) {
    const auto r = online_confidence_check(full.prefix(n), cfg, InferenceConfig{});
    EXPECT_EQ(r.report.verdict, n >= 22 ? Verdict::Sufficient : Verdict::NeedMoreData) << n;
  }
}

}  // namespace
}  // namespace hmmforge
