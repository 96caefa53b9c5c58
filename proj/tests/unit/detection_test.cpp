#include <gtest/gtest.h>

#include <numeric>

#include "hmmforge/canonical.hpp"
#include "hmmforge/detection.hpp"
#include "hmmforge/error.hpp"
#include "hmmforge/rng.hpp"
#include "hmmforge/sampling.hpp"
#include "hmmforge/synthesis.hpp"
#include "support/fixtures.hpp"

namespace hmmforge {
namespace {

using testing::ab;

DetectionConfig transition_ci(double threshold = 0.8) {
  DetectionConfig c;
  c.threshold = threshold;
  return c;
}

DetectionConfig state_ci(double threshold = 0.8) {
  DetectionConfig c;
  c.method = DetectionMethod::StateCI;
  c.threshold = threshold;
  return c;
}

TEST(TransitionCI, OwnDataIsUsuallyAccepted) {
  // The two transitions of a state miss together, so acceptance at 0.8
  // needs both states covered: about 0.95^2 per sequence.
  const auto m = testing::model_0901();
  int accepted = 0;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    accepted += detect(m, generate(m, 100'000, seed), transition_ci()).accept;
  }
  EXPECT_GE(accepted, 32);
}

TEST(TransitionCI, ImmediateBreakScoresZero) {
  const auto seq = SymbolSequence::from_tokens(ab(), std::string(30, 'b'));
  const auto r = detect(testing::two_cycle(), seq, transition_ci(0.0));
  ASSERT_TRUE(r.broken_at);
  EXPECT_LT(r.traced_symbols, kMinTracedSymbols);
  EXPECT_EQ(r.proportion, 0.0);
  EXPECT_FALSE(r.accept);
}

TEST(TransitionCI, DegenerateIntervalMatchesExactly) {
  const auto seq = SymbolSequence::from_tokens(Alphabet({"a"}), "aaaa");
  const auto r = detect(testing::single_loop(), seq, transition_ci(1.0));
  EXPECT_EQ(r.matched, 1u);
  EXPECT_EQ(r.total, 1u);
  EXPECT_EQ(r.proportion, 1.0);
  EXPECT_TRUE(r.accept);
  EXPECT_EQ(r.items[0].ci_low, 1.0);
  EXPECT_EQ(r.items[0].ci_high, 1.0);
}

TEST(TransitionCI, UnvisitedSourceCountsAsMiss) {
  // Known start in s1 and a sequence that never leaves it.
  const auto seq = SymbolSequence::from_tokens(ab(), std::string(50, 'a'));
  auto cfg = transition_ci(0.0);
  cfg.start_state = "s1";
  const auto r = detect(testing::model_0901(), seq, cfg);
  EXPECT_EQ(r.total, 4u);
  EXPECT_EQ(r.matched, 0u);  // a-estimate is 1 with a degenerate CI, s2 unseen
  EXPECT_TRUE(r.accept);
}

TEST(TransitionCI, ItemsAreConsistent) {
  const auto m = testing::model_a();
  const auto r = detect(m, generate(m, 20'000, 5), transition_ci());
  std::size_t matched = 0;
  for (const auto& it : r.items) matched += it.matched;
  EXPECT_EQ(matched, r.matched);
  EXPECT_EQ(r.total, m.transitions().size());
  EXPECT_DOUBLE_EQ(r.proportion, static_cast<double>(r.matched) / r.total);
  EXPECT_EQ(r.accept, r.proportion >= r.threshold);
}

TEST(StateCI, ExactAlternation) {
  std::string s;
  for (int i = 0; i < 5000; ++i) s += "ab";
  const auto r = detect(testing::two_cycle(), SymbolSequence::from_tokens(ab(), s), state_ci(1.0));
  EXPECT_EQ(r.matched, 2u);
  EXPECT_EQ(r.proportion, 1.0);
  for (const auto& it : r.items) EXPECT_TRUE(it.ci_low <= 0.5 && 0.5 <= it.ci_high);
}

TEST(StateCI, BrokenAlternationRejected) {
  const auto r = detect(testing::two_cycle(), SymbolSequence::from_tokens(ab(), std::string(100, 'a')), state_ci());
  EXPECT_FALSE(r.accept);
  EXPECT_EQ(r.proportion, 0.0);
}

TEST(StateCI, OccupancyCoversStationaryMostOfTheTime) {
  // Wald intervals ignore the chain's autocorrelation (variance inflation
  // (1 + 0.4) / (1 - 0.4) here), so coverage is about P(|Z| < 1.96 / 1.53).
  const auto m = testing::model_0901();
  int full = 0;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    full += detect(m, generate(m, 100'000, seed), state_ci(1.0)).accept;
  }
  EXPECT_GE(full, 26);
}

TEST(Detection, ProportionIgnoresStateLabels) {
  const auto m = testing::model_a();
  const auto shuffled = relabel(m, {2, 0, 1}, {"x", "y", "z"});
  const auto seq = generate(m, 10'000, 9);
  for (auto cfg : {transition_ci(), state_ci()}) {
    EXPECT_EQ(detect(m, seq, cfg).proportion, detect(shuffled, seq, cfg).proportion);
  }
}

TEST(Detection, AlphabetMismatch) {
  const auto seq = SymbolSequence::from_tokens(Alphabet({"x"}), "xxxx");
  try {
    detect(testing::two_cycle(), seq, transition_ci());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::AlphabetMismatch);
  }
}

TEST(Detection, ParsersAndChecks) {
  EXPECT_EQ(detection_method_from_string("state-ci"), DetectionMethod::StateCI);
  EXPECT_EQ(interval_kind_from_string("wilson"), IntervalKind::Wilson);
  EXPECT_THROW(detection_method_from_string("viterbi"), Error);
  auto bad = transition_ci(1.5);
  EXPECT_THROW(check(bad), Error);
}

TEST(Roc, SeparableScores) {
  const auto roc = roc_from_scores({1.0, 1.0, 1.0}, {0.0, 0.0});
  EXPECT_EQ(roc.optimal_distance, 0.0);
  EXPECT_GT(roc.optimal_threshold, 0.0);
  EXPECT_EQ(roc.optimal_threshold, 1.0);  // every positive threshold ties; largest wins
  ASSERT_EQ(roc.points.size(), 101u);
}

TEST(Roc, IdenticalScoresStayOnDiagonal) {
  const std::vector<double> s{0.2, 0.4, 0.6, 0.9};
  const auto roc = roc_from_scores(s, s);
  for (const auto& p : roc.points) EXPECT_EQ(p.tpr, p.fpr);
  // Distance to (0,1) along the diagonal is minimised at rate 1/2 and
  // ties go to the largest threshold with that rate.
  double best = 10;
  for (const auto& p : roc.points) best = std::min(best, std::hypot(p.fpr, 1 - p.tpr));
  EXPECT_EQ(roc.optimal_distance, best);
  EXPECT_DOUBLE_EQ(roc.optimal_threshold, 0.6);
}

TEST(Roc, ZeroThresholdAcceptsAllAndRatesFall) {
  Rng r(4);
  std::vector<double> pos(30), neg(30);
  for (auto& x : pos) x = r.uniform();
  for (auto& x : neg) x = r.uniform() * 0.7;
  const auto roc = roc_from_scores(pos, neg);
  EXPECT_EQ(roc.points.front().tpr, 1.0);
  EXPECT_EQ(roc.points.front().fpr, 1.0);
  for (std::size_t i = 1; i < roc.points.size(); ++i) {
    EXPECT_LT(roc.points[i - 1].threshold, roc.points[i].threshold);
    EXPECT_LE(roc.points[i].tpr, roc.points[i - 1].tpr);
    EXPECT_LE(roc.points[i].fpr, roc.points[i - 1].fpr);
  }
}

TEST(Roc, EmptySet) {
  try {
    roc_from_scores({}, {0.5});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptySet);
  }
}

TEST(Roc, DeterministicOverSequences) {
  const auto m = testing::model_a();
  const auto other = perturb_transition(m, 0, 0, 0.3);
  std::vector<SymbolSequence> pos, neg;
  for (std::uint64_t s = 1; s <= 5; ++s) {
    pos.push_back(generate(m, 5000, s));
    neg.push_back(generate(other, 5000, 100 + s));
  }
  const auto a = roc_optimal_threshold(m, pos, neg, transition_ci());
  const auto b = roc_optimal_threshold(m, pos, neg, transition_ci());
  EXPECT_EQ(a.positive_scores, b.positive_scores);
  EXPECT_EQ(a.optimal_threshold, b.optimal_threshold);
}

}  // namespace
}  // namespace hmmforge
