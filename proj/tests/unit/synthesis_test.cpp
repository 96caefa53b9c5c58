#include <gtest/gtest.h>

#include <cmath>

#include "hmmforge/error.hpp"
#include "hmmforge/sampling.hpp"
#include "hmmforge/synthesis.hpp"
#include "support/fixtures.hpp"

namespace hmmforge {
namespace {

class Synth : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(Synth, ModelsMeetTheirConstraints) {
  for (std::size_t states : {2u, 3u, 5u, 7u}) {
    for (std::size_t symbols : {2u, 3u, 4u}) {
      if (states == 7 && symbols == 2) continue;  // seven rows 0.1 apart on [0.05, 0.95] rarely fit
      SynthConfig c;
      c.states = states;
      c.symbols = symbols;
      c.seed = GetParam();
      const auto m = random_definite_model(c);
      ASSERT_TRUE(validate(m).empty());
      EXPECT_TRUE(is_irreducible(m));
      EXPECT_EQ(m.state_count(), states);
      EXPECT_EQ(m.alphabet().size(), symbols);
      for (const auto& t : m.transitions()) EXPECT_GE(t.p, c.min_p - 1e-12);
      // Rows differ by at least the separation in some symbol.
      for (StateId a = 0; a < states; ++a) {
        for (StateId b = a + 1; b < states; ++b) {
          double gap = 0.0;
          for (SymbolId x = 0; x < symbols; ++x) {
            const auto* ta = m.next(a, x);
            const auto* tb = m.next(b, x);
            gap = std::max(gap, std::abs((ta ? ta->p : 0.0) - (tb ? tb->p : 0.0)));
          }
          EXPECT_GE(gap, c.min_separation - 1e-12);
        }
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, Synth, ::testing::Range<std::uint64_t>(1, 6));

TEST(Synthesis, SameSeedSameModel) {
  SynthConfig c;
  c.seed = 42;
  EXPECT_EQ(random_definite_model(c).transitions(), random_definite_model(c).transitions());
}

TEST(Synthesis, InfeasibleMinimum) {
  SynthConfig c;
  c.symbols = 3;
  c.min_p = 0.6;
  try {
    check(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
  }
}

TEST(Synthesis, AlphabetNames) {
  EXPECT_EQ(synthetic_alphabet(3).symbols(), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(synthetic_alphabet(30).symbol(29), "s29");
}

TEST(Synthesis, PerturbKeepsRowStochastic) {
  const auto m = testing::model_a();
  const auto p = perturb_transition(m, 1, 2, 0.6);
  EXPECT_TRUE(validate(p).empty());
  EXPECT_DOUBLE_EQ(p.next(1, 2)->p, 0.6);
  // remaining 0.4 split 2:5 as before
  EXPECT_NEAR(p.next(1, 0)->p, 0.4 * 0.2 / 0.7, 1e-12);
  EXPECT_EQ(p.next(0, 0)->p, m.next(0, 0)->p);
}

TEST(Synthesis, TimestampsAreIncreasing) {
  const auto seq = generate(testing::model_a(), 1000, 1);
  const auto ts = symbol_timestamps(seq, 2);
  ASSERT_EQ(ts.size(), seq.size() + 1);
  for (std::size_t i = 1; i < ts.size(); ++i) {
    const double gap = ts[i] - ts[i - 1];
    EXPECT_GE(gap, seq[i - 1] + 0.1 - 1e-9);
    EXPECT_LT(gap, seq[i - 1] + 0.9 + 1e-9);
  }
}

}  // namespace
}  // namespace hmmforge
