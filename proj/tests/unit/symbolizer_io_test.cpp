#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "hmmforge/error.hpp"
#include "hmmforge/model_io.hpp"
#include "hmmforge/rng.hpp"
#include "hmmforge/sampling.hpp"
#include "hmmforge/stats.hpp"
#include "hmmforge/symbolizer.hpp"
#include "hmmforge/synthesis.hpp"
#include "support/fixtures.hpp"

namespace hmmforge {
namespace {

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no hmmforge::Error thrown";
  return ErrorKind::Io;
}

TEST(Stats, QuantilesMatchTables) {
  EXPECT_NEAR(stats::normal_quantile(0.95), 1.644853627, 1e-8);
  EXPECT_NEAR(stats::normal_quantile(0.975), 1.959963985, 1e-8);
  EXPECT_NEAR(stats::chi_squared_quantile(0.95, 1), 3.841458821, 1e-8);
  EXPECT_NEAR(stats::chi_squared_quantile(0.95, 2), 5.991464547, 1e-8);
  EXPECT_NEAR(stats::chi_squared_sf(3.841458821, 1), 0.05, 1e-9);
}

TEST(Stats, OppositeRowsAreHeterogeneous) {
  // Expected 500 per cell, so the statistic is 4 * 400^2 / 500.
  const std::vector<std::uint64_t> a{900, 100}, b{100, 900};
  const auto r = stats::chi_squared_homogeneity(a, b, 0.05);
  EXPECT_DOUBLE_EQ(r.statistic, 1280.0);
  EXPECT_EQ(r.df, 1u);
  EXPECT_TRUE(r.reject);
  EXPECT_FALSE(r.fallback);
}

TEST(Stats, IdenticalRowsAreHomogeneous) {
  const std::vector<std::uint64_t> a{500, 500};
  const auto r = stats::chi_squared_homogeneity(a, a, 0.05);
  EXPECT_DOUBLE_EQ(r.statistic, 0.0);
  EXPECT_FALSE(r.reject);
}

TEST(Stats, SparseRowsUseSupportFallback) {
  const std::vector<std::uint64_t> a{2, 0}, b{3, 0}, c{0, 3};
  EXPECT_TRUE(stats::chi_squared_homogeneity(a, b, 0.05).fallback);
  EXPECT_FALSE(stats::chi_squared_homogeneity(a, b, 0.05).reject);
  EXPECT_TRUE(stats::chi_squared_homogeneity(a, c, 0.05).reject);
}

TEST(Stats, GoodnessOfFitOnFairCounts) {
  const std::vector<std::uint64_t> obs{50, 50};
  const std::vector<double> p{0.5, 0.5};
  const auto r = stats::chi_squared_goodness_of_fit(obs, p, 0.05);
  EXPECT_DOUBLE_EQ(r.statistic, 0.0);
  EXPECT_FALSE(r.reject);
  const std::vector<std::uint64_t> skew{80, 20};
  // (80-50)^2/50 * 2
  EXPECT_DOUBLE_EQ(stats::chi_squared_goodness_of_fit(skew, p, 0.05).statistic, 36.0);
}

TEST(Stats, WaldAndWilson) {
  const auto w = stats::wald_interval(50, 100, 0.05);
  EXPECT_NEAR(w.low, 0.5 - 1.959963985 * 0.05, 1e-9);
  EXPECT_NEAR(w.high, 0.5 + 1.959963985 * 0.05, 1e-9);
  const auto degenerate = stats::wald_interval(10, 10, 0.05);
  EXPECT_EQ(degenerate.low, 1.0);
  EXPECT_EQ(degenerate.high, 1.0);

  const double z = 1.959963985, n = 10.0;
  const double centre = (z * z / 2) / (n + z * z);
  const double half = z / (n + z * z) * std::sqrt(z * z / 4);
  const auto s = stats::wilson_interval(0, 10, 0.05);
  EXPECT_NEAR(s.low, centre - half, 1e-9);
  EXPECT_NEAR(s.high, centre + half, 1e-9);
}

TEST(Symbolizer, MidpointEdge) {
  const std::vector<double> v{1, 2, 3, 4};
  const auto spec = fit_quantile_bins(v, 2);
  ASSERT_EQ(spec.bin_edges.size(), 1u);
  EXPECT_DOUBLE_EQ(spec.bin_edges[0], 2.5);
  EXPECT_FALSE(spec.collapsed);
}

TEST(Symbolizer, FitErrors) {
  const std::vector<double> seven(20, 7.0), none;
  EXPECT_EQ(kind_of([&] { fit_quantile_bins(seven, 2); }), ErrorKind::DegenerateInput);
  EXPECT_EQ(kind_of([&] { fit_quantile_bins(none, 2); }), ErrorKind::EmptyInput);
}

TEST(Symbolizer, DuplicateQuantilesCollapse) {
  const std::vector<double> v{1, 1, 1, 1, 1, 1, 2, 3};
  const auto spec = fit_quantile_bins(v, 4);
  EXPECT_TRUE(spec.collapsed);
  EXPECT_LT(spec.bin_count(), 4u);
  for (std::size_t i = 1; i < spec.bin_edges.size(); ++i) EXPECT_LT(spec.bin_edges[i - 1], spec.bin_edges[i]);
}

TEST(Symbolizer, UniformQuartiles) {
  Rng r(12);
  std::vector<double> v(100'000);
  for (auto& x : v) x = r.uniform();
  const auto spec = fit_quantile_bins(v, 4);
  ASSERT_EQ(spec.bin_edges.size(), 3u);
  EXPECT_NEAR(spec.bin_edges[0], 0.25, 0.01);
  EXPECT_NEAR(spec.bin_edges[1], 0.50, 0.01);
  EXPECT_NEAR(spec.bin_edges[2], 0.75, 0.01);
}

TEST(Symbolizer, HandBinnedExamples) {
  SymbolizerSpec deltas{SymbolizerMode::InterEventDeltas, {2.5}, false};
  const std::vector<double> ts{0, 1, 4, 5};
  EXPECT_EQ(symbolize(deltas, ts).to_string(" "), "b0 b1 b0");

  SymbolizerSpec raw{SymbolizerMode::RawValues, {0.0}, false};
  const std::vector<double> vals{-1, 1, 0};
  EXPECT_EQ(symbolize(raw, vals).to_string(" "), "b0 b1 b0");
}

TEST(Symbolizer, TimestampErrors) {
  SymbolizerSpec spec{SymbolizerMode::InterEventDeltas, {1.0}, false};
  const std::vector<double> one{3.0}, back{0, 2, 1};
  EXPECT_EQ(kind_of([&] { symbolize(spec, one); }), ErrorKind::InsufficientData);
  EXPECT_EQ(kind_of([&] { symbolize(spec, back); }), ErrorKind::NonMonotonicTimestamps);
}

TEST(Symbolizer, BinningIsMonotone) {
  SymbolizerSpec spec{SymbolizerMode::RawValues, {-1.0, 0.0, 0.5, 3.0}, false};
  Rng r(8);
  for (int i = 0; i < 2000; ++i) {
    const double a = r.uniform(-5, 5), b = r.uniform(-5, 5);
    if (a <= b) EXPECT_LE(spec.bin(a), spec.bin(b));
    else EXPECT_GE(spec.bin(a), spec.bin(b));
  }
}

TEST(Symbolizer, TrainingDataIsNearlyUniform) {
  Rng r(21);
  std::vector<double> v(20'000);
  for (auto& x : v) x = -std::log1p(-r.uniform());
  const auto spec = fit_quantile_bins(v, 8);
  const auto seq = symbolize(spec, v);
  std::vector<std::size_t> hist(spec.bin_count(), 0);
  for (auto s : seq.data()) ++hist[s];
  const double tol = 2.0 / std::sqrt(static_cast<double>(v.size()));
  for (auto h : hist) EXPECT_NEAR(static_cast<double>(h) / v.size(), 1.0 / 8.0, tol);
}

TEST(Symbolizer, SpecRoundTripIsBitExact) {
  Rng r(5);
  std::vector<double> v(999);
  for (auto& x : v) x = r.uniform() * 1e-3 + 1.0 / 3.0;
  const auto spec = fit_quantile_bins(v, 7, SymbolizerMode::InterEventDeltas);
  const auto back = spec_from_json(spec_to_json(spec));
  EXPECT_EQ(back, spec);
}

TEST(Symbolizer, TimestampSpecInvertsSyntheticGaps) {
  const auto m = testing::model_a();
  const auto seq = generate(m, 3000, 4);
  const auto ts = symbol_timestamps(seq, 6);
  const auto back = symbolize(symbol_timestamp_spec(3), ts);
  EXPECT_EQ(back.data(), seq.data());
}

TEST(ModelIo, ModelRoundTripIsExact) {
  SynthConfig c;
  c.states = 5;
  c.symbols = 3;
  c.seed = 3;
  const auto m = random_definite_model(c);
  ModelMeta meta;
  meta.generator = std::string(Rng::kAlgorithm);
  meta.seed = 3;
  meta.created_by = "test";
  ModelMeta got;
  const auto back = model_from_json(model_to_json(m, meta), &got);
  EXPECT_EQ(back.states(), m.states());
  EXPECT_EQ(back.alphabet(), m.alphabet());
  EXPECT_EQ(back.transitions(), m.transitions());
  EXPECT_EQ(got.seed, meta.seed);
  EXPECT_EQ(got.generator, meta.generator);
}

TEST(ModelIo, SequenceRoundTripWithManifest) {
  const auto seq = generate(testing::model_a(), 200, 1);
  const auto text = sequence_to_text(seq, R"({"command":"x"})");
  EXPECT_EQ(text.rfind("#alphabet: a,b,c\n", 0), 0u);
  EXPECT_EQ(sequence_from_text(text), seq);
}

TEST(ModelIo, ParseErrors) {
  EXPECT_EQ(kind_of([] { sequence_from_text("a b a\n"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { sequence_from_text("#alphabet: a,b\na c\n"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { model_from_json("{not json"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { read_file("/nonexistent/dir/file"); }), ErrorKind::Io);
}

TEST(ModelIo, AtomicWriteReplacesContent) {
  const auto dir = std::filesystem::temp_directory_path() / "hmmforge_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "f.txt";
  write_file_atomic(path, "one");
  write_file_atomic(path, "two");
  EXPECT_EQ(read_file(path), "two");
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++files;
  EXPECT_EQ(files, 1u);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace hmmforge
