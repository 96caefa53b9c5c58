#include "hmmforge_cli/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <functional>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "commands.hpp"
#include "hmmforge/error.hpp"
#include "reports.hpp"

namespace hmmforge::cli {

namespace {

constexpr const char* kSeedEnv = "HMMFORGE_SEED";

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  const char* env = std::getenv(kSeedEnv);
  if (!env || !*env) return 0;
  std::uint64_t v = 0;
  const std::string_view s(env);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::InvalidArgument, fmt::format("{}='{}' is not an unsigned integer", kSeedEnv, s));
  }
  return v;
}

struct Flags {
  std::optional<std::uint64_t> seed;
  std::string report;
  bool no_correction = false;
  std::string method = "transition-ci";
  std::string interval = "wald";
  std::string start;
  std::optional<std::size_t> length;
};

void common(CLI::App* sub, Flags& f) {
  sub->add_option("--seed", f.seed, fmt::format("RNG seed (falls back to ${}, then 0)", kSeedEnv));
  sub->add_option("--report", f.report, "Also write the JSON report to this file");
}

void detection_flags(CLI::App* sub, DetectionConfig& cfg, Flags& f) {
  sub->add_option("--method", f.method, "transition-ci or state-ci")
      ->check(CLI::IsMember({"transition-ci", "state-ci"}))
      ->capture_default_str();
  sub->add_option("--ci-alpha", cfg.ci_alpha, "Significance of the confidence intervals")->capture_default_str();
  sub->add_option("--interval", f.interval, "wald or wilson")
      ->check(CLI::IsMember({"wald", "wilson"}))
      ->capture_default_str();
  sub->add_option("--start", f.start, "Known start state label (default: synchronize)");
}

void inference_flags(CLI::App* sub, InferenceConfig& cfg, Flags& f, const std::string& alpha_flag = "--alpha") {
  sub->add_option(alpha_flag, cfg.alpha, "Significance of the merge and stabilization tests")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  sub->add_option("--max-l", cfg.max_l, "Largest history window")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--min-count", cfg.min_count, "Occurrences needed for a history to become a state")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_flag("--no-correction", f.no_correction, "Test every state at alpha (no Bonferroni correction)");
}

void apply(const Flags& f, DetectionConfig& cfg) {
  cfg.method = detection_method_from_string(f.method);
  cfg.interval = interval_kind_from_string(f.interval);
  if (!f.start.empty()) cfg.start_state = f.start;
}

Correction correction(const Flags& f) { return f.no_correction ? Correction::None : Correction::Bonferroni; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Deterministic HMM inference, confidence, detection and distance"};
  app.name("hmmforge");
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);

  Flags f;
  Common c;
  std::function<int()> action;

  SymbolizeOptions sym;
  auto* s = app.add_subcommand("symbolize", "Bin a CSV column into a symbol sequence");
  s->add_option("--input", sym.input, "CSV file (one value or timestamp per line)")->required();
  s->add_option("--column", sym.column, "Column index or header name")->capture_default_str();
  s->add_option("--mode", sym.mode, "deltas (timestamps) or values")
      ->check(CLI::IsMember({"deltas", "values", "interEventDeltas", "rawValues"}))
      ->capture_default_str();
  s->add_option("--bins", sym.bins, "Number of quantile bins")->check(CLI::Range(2, 1000))->capture_default_str();
  s->add_option("--spec", sym.spec_in, "Apply an existing spec instead of fitting one");
  s->add_option("--spec-out", sym.spec_out, "Where to write the fitted spec");
  s->add_option("--output", sym.output, "Sequence file to write")->required();
  common(s, f);
  s->callback([&] { action = [&] { return cmd_symbolize(sym, c, out); }; });

  SynthOptions syn;
  auto* y = app.add_subcommand("synth", "Random model and sequences sampled from it");
  y->add_option("--states", syn.model.states, "State count")->check(CLI::PositiveNumber)->capture_default_str();
  y->add_option("--symbols", syn.model.symbols, "Alphabet size")->check(CLI::PositiveNumber)->capture_default_str();
  y->add_option("--min-p", syn.model.min_p, "Smallest transition probability")->capture_default_str();
  y->add_option("--separation", syn.model.min_separation,
                "Minimum difference between any two states in some symbol's probability")
      ->capture_default_str();
  y->add_option("--seqs", syn.seqs, "Sequences to sample")->capture_default_str();
  y->add_option("--len", syn.length, "Symbols per sequence")->capture_default_str();
  y->add_option("--out-dir", syn.out_dir, "Output directory")->required();
  y->add_flag("--timestamps", syn.timestamps, "Also write event-time CSVs whose gaps encode the symbols");
  common(y, f);
  y->callback([&] { action = [&] { return cmd_synth(syn, c, out); }; });

  InferOptions inf;
  double infer_epsilon = 0.0;
  auto* i = app.add_subcommand("infer", "Infer a model from a symbol sequence");
  i->add_option("--input", inf.input, "Sequence file")->required();
  i->add_option("--output", inf.output, "Model file to write")->required();
  inference_flags(i, inf.cfg, f);
  auto* eps_opt = i->add_option("--epsilon", infer_epsilon, "Also assess model confidence at this epsilon");
  common(i, f);
  i->callback([&] {
    inf.cfg.correction = correction(f);
    if (eps_opt->count()) inf.epsilon = infer_epsilon;
    action = [&] { return cmd_infer(inf, c, out); };
  });

  ConfidenceOptions con;
  auto* k = app.add_subcommand("confidence", "Required data and sufficiency test");
  k->add_option("--model", con.model, "Model file (omit to infer one from --input)");
  k->add_option("--input", con.input, "Sequence file (omit for the prospective bound)");
  k->add_option("--epsilon", con.cfg.epsilon, "Smallest joint probability that must not go unseen")
      ->capture_default_str();
  k->add_option("--alpha", con.cfg.alpha, "Significance")->capture_default_str();
  k->add_flag("--exact-binomial", con.cfg.exact_binomial, "Use ceil(ln a / ln(1 - gamma)) instead of the z bound");
  inference_flags(k, con.infer, f, "--infer-alpha");
  common(k, f);
  k->callback([&] {
    con.infer.correction = correction(f);
    action = [&] { return cmd_confidence(con, c, out); };
  });

  DetectOptions det;
  auto* d = app.add_subcommand("detect", "Was this sequence generated by the model?");
  d->add_option("--model", det.model, "Model file")->required();
  d->add_option("--input", det.input, "Sequence file")->required();
  d->add_option("--threshold", det.cfg.threshold, "Matching proportion needed to accept")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  detection_flags(d, det.cfg, f);
  common(d, f);
  d->callback([&] {
    apply(f, det.cfg);
    action = [&] { return cmd_detect(det, c, out); };
  });

  RocOptions roc;
  auto* r = app.add_subcommand("roc", "ROC sweep and optimal threshold");
  r->add_option("--model", roc.model, "Model file")->required();
  r->add_option("--positives", roc.positives, "Sequence files or directories")->required();
  r->add_option("--negatives", roc.negatives, "Sequence files or directories")->required();
  r->add_option("--output", roc.output, "CSV file (threshold,tpr,fpr)");
  detection_flags(r, roc.cfg, f);
  common(r, f);
  r->callback([&] {
    apply(f, roc.cfg);
    action = [&] { return cmd_roc(roc, c, out); };
  });

  CompareOptions cmp;
  auto compare_flags = [&](CLI::App* sub) {
    sub->add_option("--model-a", cmp.model_a, "First model")->required();
    sub->add_option("--model-b", cmp.model_b, "Second model")->required();
    sub->add_option("--alpha", cmp.eq.alpha, "Significance")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    sub->add_flag("--no-correction", f.no_correction, "Test every state at alpha (no Bonferroni correction)");
    common(sub, f);
  };
  auto* ds = app.add_subcommand("distance", "Pruning distance between two models");
  compare_flags(ds);
  ds->callback([&] {
    cmp.eq.correction = correction(f);
    action = [&] { return cmd_distance(cmp, c, out); };
  });
  auto* eq = app.add_subcommand("equiv", "Statistical equivalence of two models");
  compare_flags(eq);
  eq->add_option("--length", f.length, "Minimum generated length");
  eq->callback([&] {
    cmp.eq.correction = correction(f);
    cmp.eq.length = f.length;
    action = [&] { return cmd_equiv(cmp, c, out); };
  });

  PipelineOptions pip;
  auto* p = app.add_subcommand("pipeline", "symbolize, infer, confidence and detect on a holdout split");
  p->add_option("--input", pip.input, "CSV file")->required();
  p->add_option("--column", pip.column, "Column index or header name")->capture_default_str();
  p->add_option("--mode", pip.mode, "deltas or values")
      ->check(CLI::IsMember({"deltas", "values", "interEventDeltas", "rawValues"}))
      ->capture_default_str();
  p->add_option("--bins", pip.bins, "Number of quantile bins")->check(CLI::Range(2, 1000))->capture_default_str();
  p->add_option("--spec", pip.spec_in, "Apply an existing spec instead of fitting one");
  p->add_option("--holdout", pip.holdout, "Fraction of symbols held out for detection")->capture_default_str();
  p->add_option("--segments", pip.segments, "Holdout sequences to cut the holdout into")->capture_default_str();
  inference_flags(p, pip.infer, f);
  p->add_option("--epsilon", pip.confidence.epsilon, "Confidence epsilon")->capture_default_str();
  p->add_option("--conf-alpha", pip.confidence.alpha, "Confidence significance")->capture_default_str();
  p->add_flag("--exact-binomial", pip.confidence.exact_binomial, "Exact-binomial confidence bound");
  p->add_option("--threshold", pip.detect.threshold, "Detection threshold (ignored with --negatives)")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  detection_flags(p, pip.detect, f);
  p->add_option("--negatives", pip.negatives, "CSV files or directories from other sources; enables the ROC threshold");
  p->add_option("--out-dir", pip.out_dir, "Directory for all artifacts")->required();
  common(p, f);
  p->callback([&] {
    pip.infer.correction = correction(f);
    apply(f, pip.detect);
    action = [&] { return cmd_pipeline(pip, c, out); };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    c.seed = resolve_seed(f.seed);
    c.report = f.report;
    return action();
  } catch (const Error& e) {
    err << "hmmforge: " << e.what() << "\n";
    return kUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "hmmforge: Io: " << e.what() << "\n";
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "hmmforge: ParseError: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace hmmforge::cli
