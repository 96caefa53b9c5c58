#include "commands.hpp"

#include <algorithm>
#include <filesystem>

#include <fmt/format.h>

#include "csv.hpp"
#include "hmmforge/digest.hpp"
#include "hmmforge/error.hpp"
#include "hmmforge/model_io.hpp"
#include "hmmforge/rng.hpp"
#include "hmmforge/sampling.hpp"
#include "hmmforge/symbolizer.hpp"
#include "hmmforge_cli/cli.hpp"
#include "reports.hpp"

namespace fs = std::filesystem;

namespace hmmforge::cli {

namespace {

class Outputs {
 public:
  void write(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    write_file_atomic(path, content);
    list_.push_back(Json{{"path", path.string()}, {"sha256", sha256_hex(content)}});
  }
  const Json& json() const { return list_; }

 private:
  Json list_ = Json::array();
};

int emit(const Manifest& m, Json result, const Outputs& outputs, const Common& c, std::ostream& out, int code) {
  Json report{{"schemaVersion", kSchemaVersion},
              {"command", m.to_json()["command"]},
              {"exitCode", code},
              {"manifest", m.to_json()},
              {"result", std::move(result)},
              {"outputs", outputs.json()}};
  const auto text = report.dump(2) + "\n";
  if (!c.report.empty()) write_file_atomic(c.report, text);
  out << text;
  return code;
}

std::string load(Manifest& m, const std::string& path) {
  auto bytes = read_file(path);
  m.input(path, bytes);
  return bytes;
}

DeterministicHmm load_model(Manifest& m, const std::string& path) { return model_from_json(load(m, path)); }
SymbolSequence load_sequence(Manifest& m, const std::string& path) { return sequence_from_text(load(m, path)); }

std::string model_document(const DeterministicHmm& model, const Manifest& m, bool seeded) {
  ModelMeta meta;
  meta.created_by = tool_version();
  if (seeded) {
    meta.generator = std::string(Rng::kAlgorithm);
    meta.seed = m.seed();
  }
  meta.manifest_json = m.to_json().dump();
  return model_to_json(model, meta);
}

// Directories expand to their files with the given extension, sorted.
std::vector<fs::path> expand(const std::vector<std::string>& paths, std::string_view extension) {
  std::vector<fs::path> out;
  for (const auto& p : paths) {
    if (fs::is_directory(p)) {
      std::vector<fs::path> files;
      for (const auto& e : fs::directory_iterator(p)) {
        if (e.is_regular_file() && e.path().extension() == extension) files.push_back(e.path());
      }
      std::sort(files.begin(), files.end());
      out.insert(out.end(), files.begin(), files.end());
    } else {
      out.emplace_back(p);
    }
  }
  return out;
}

void describe(Manifest& m, const InferenceConfig& cfg, const std::string& prefix = "") {
  m.param(prefix + "alpha", cfg.alpha);
  m.param(prefix + "maxL", cfg.max_l);
  m.param(prefix + "minCount", cfg.min_count);
  m.param(prefix + "correction", cfg.correction == Correction::Bonferroni ? "bonferroni" : "none");
}

void describe(Manifest& m, const DetectionConfig& cfg) {
  m.param("method", std::string(to_string(cfg.method)));
  m.param("ciAlpha", cfg.ci_alpha);
  m.param("threshold", cfg.threshold);
  m.param("interval", std::string(to_string(cfg.interval)));
  m.param("start", cfg.start_state ? Json(*cfg.start_state) : Json(nullptr));
}

void describe(Manifest& m, const ConfidenceConfig& cfg) {
  m.param("epsilon", cfg.epsilon);
  m.param("confidenceAlpha", cfg.alpha);
  m.param("exactBinomial", cfg.exact_binomial);
}

Json histogram(const SymbolSequence& seq) {
  std::vector<std::uint64_t> counts(seq.alphabet().size(), 0);
  for (auto x : seq.data()) ++counts[x];
  Json j = Json::object();
  for (std::size_t i = 0; i < counts.size(); ++i) j[seq.alphabet().symbol(static_cast<SymbolId>(i))] = counts[i];
  return j;
}

SymbolSequence bin_values(const SymbolizerSpec& spec, std::span<const double> values) {
  std::vector<SymbolId> ids;
  ids.reserve(values.size());
  for (double v : values) ids.push_back(static_cast<SymbolId>(spec.bin(v)));
  return SymbolSequence(spec.alphabet(), std::move(ids));
}

// Values the bins apply to: deltas of timestamps, or the raw values.
std::vector<double> binned_values(SymbolizerMode mode, const std::vector<double>& raw) {
  return mode == SymbolizerMode::InterEventDeltas ? inter_event_deltas(raw) : raw;
}

}  // namespace

int cmd_symbolize(const SymbolizeOptions& o, const Common& c, std::ostream& out) {
  Manifest m("symbolize", c.seed);
  m.param("input", o.input);
  m.param("column", o.column);
  m.param("output", o.output);
  m.param("specOut", o.spec_out);
  const auto raw = read_csv_column(o.input, o.column);
  m.input(o.input, read_file(o.input));

  SymbolizerSpec spec;
  if (!o.spec_in.empty()) {
    m.param("spec", o.spec_in);
    spec = spec_from_json(load(m, o.spec_in));
  } else {
    const auto mode = symbolizer_mode_from_string(o.mode);
    m.param("mode", std::string(to_string(mode)));
    m.param("bins", o.bins);
    spec = fit_quantile_bins(binned_values(mode, raw), o.bins, mode);
  }
  const auto seq = symbolize(spec, raw);

  Outputs outputs;
  const auto manifest = m.to_json().dump();
  if (!o.spec_out.empty()) outputs.write(o.spec_out, spec_to_json(spec, manifest));
  outputs.write(o.output, sequence_to_text(seq, manifest));
  Json result{{"values", raw.size()}, {"symbols", seq.size()}, {"spec", to_json(spec)}, {"histogram", histogram(seq)}};
  return emit(m, std::move(result), outputs, c, out, kOk);
}

int cmd_synth(const SynthOptions& o, const Common& c, std::ostream& out) {
  Manifest m("synth", c.seed);
  m.param("states", o.model.states);
  m.param("symbols", o.model.symbols);
  m.param("minP", o.model.min_p);
  m.param("separation", o.model.min_separation);
  m.param("seqs", o.seqs);
  m.param("length", o.length);
  m.param("outDir", o.out_dir);
  m.param("timestamps", o.timestamps);

  auto cfg = o.model;
  cfg.seed = mix_seed(c.seed, 0);
  const auto model = random_definite_model(cfg);
  Outputs outputs;
  const fs::path dir(o.out_dir);
  outputs.write(dir / "model.json", model_document(model, m, true));
  const auto manifest = m.to_json().dump();
  for (std::size_t i = 0; i < o.seqs; ++i) {
    const auto seed = mix_seed(c.seed, i + 1);
    const auto seq = generate(model, o.length, seed);
    outputs.write(dir / fmt::format("seq_{:03}.txt", i), sequence_to_text(seq, manifest));
    if (o.timestamps) outputs.write(dir / fmt::format("ts_{:03}.csv", i), timestamps_csv(symbol_timestamps(seq, mix_seed(seed, 1))));
  }
  if (o.timestamps) outputs.write(dir / "spec.json", spec_to_json(symbol_timestamp_spec(model.alphabet().size()), manifest));
  Json result{{"states", model.state_count()}, {"symbols", model.alphabet().size()}, {"sequences", o.seqs}};
  return emit(m, std::move(result), outputs, c, out, kOk);
}

int cmd_infer(const InferOptions& o, const Common& c, std::ostream& out) {
  Manifest m("infer", c.seed);
  m.param("input", o.input);
  m.param("output", o.output);
  describe(m, o.cfg);
  auto cfg = o.cfg;
  cfg.seed = c.seed;
  if (o.epsilon) {
    m.param("epsilon", *o.epsilon);
    cfg.confidence = ConfidenceConfig{*o.epsilon, o.cfg.alpha, false};
  }
  const auto seq = load_sequence(m, o.input);
  const auto result = infer(seq, cfg);
  Outputs outputs;
  outputs.write(o.output, model_document(result.model, m, true));
  return emit(m, to_json(result), outputs, c, out, kOk);
}

int cmd_confidence(const ConfidenceOptions& o, const Common& c, std::ostream& out) {
  Manifest m("confidence", c.seed);
  describe(m, o.cfg);
  Outputs outputs;
  if (o.model.empty() && o.input.empty()) throw Error(ErrorKind::InvalidArgument, "need --model, --input, or both");
  if (o.model.empty()) {
    m.param("mode", "online");
    describe(m, o.infer, "infer.");
    auto icfg = o.infer;
    icfg.seed = c.seed;
    const auto check = online_confidence_check(load_sequence(m, o.input), o.cfg, icfg);
    Json result = to_json(check.report);
    result["modelBuilt"] = check.model.has_value();
    return emit(m, std::move(result), outputs, c, out,
                check.report.verdict == Verdict::Sufficient ? kOk : kNeedMoreData);
  }
  const auto model = load_model(m, o.model);
  if (o.input.empty()) {
    m.param("mode", "prospective");
    return emit(m, to_json(required_samples(model, o.cfg)), outputs, c, out, kOk);
  }
  m.param("mode", "assess");
  const auto report = assess_confidence(model, load_sequence(m, o.input), o.cfg);
  return emit(m, to_json(report), outputs, c, out, report.verdict == Verdict::Sufficient ? kOk : kNeedMoreData);
}

int cmd_detect(const DetectOptions& o, const Common& c, std::ostream& out) {
  Manifest m("detect", c.seed);
  describe(m, o.cfg);
  const auto model = load_model(m, o.model);
  const auto report = detect(model, load_sequence(m, o.input), o.cfg);
  return emit(m, to_json(report), Outputs{}, c, out, report.accept ? kOk : kReject);
}

int cmd_roc(const RocOptions& o, const Common& c, std::ostream& out) {
  Manifest m("roc", c.seed);
  describe(m, o.cfg);
  m.param("output", o.output);
  const auto model = load_model(m, o.model);
  auto load_set = [&](const std::vector<std::string>& paths, Json& names) {
    std::vector<SymbolSequence> set;
    for (const auto& p : expand(paths, ".txt")) {
      set.push_back(load_sequence(m, p.string()));
      names.push_back(p.string());
    }
    return set;
  };
  Json pos_names = Json::array(), neg_names = Json::array();
  const auto positives = load_set(o.positives, pos_names);
  const auto negatives = load_set(o.negatives, neg_names);
  const auto roc = roc_optimal_threshold(model, positives, negatives, o.cfg);
  Outputs outputs;
  if (!o.output.empty()) outputs.write(o.output, roc_csv(roc));
  Json result = to_json(roc);
  result["positives"] = std::move(pos_names);
  result["negatives"] = std::move(neg_names);
  return emit(m, std::move(result), outputs, c, out, kOk);
}

namespace {

void describe(Manifest& m, const EquivalenceOptions& eq) {
  m.param("alpha", eq.alpha);
  m.param("correction", eq.correction == Correction::Bonferroni ? "bonferroni" : "none");
  m.param("length", eq.length ? Json(*eq.length) : Json(nullptr));
}

}  // namespace

int cmd_distance(const CompareOptions& o, const Common& c, std::ostream& out) {
  Manifest m("distance", c.seed);
  describe(m, o.eq);
  const auto a = load_model(m, o.model_a);
  const auto b = load_model(m, o.model_b);
  auto eq = o.eq;
  eq.seed = c.seed;
  return emit(m, to_json(distance(a, b, eq)), Outputs{}, c, out, kOk);
}

int cmd_equiv(const CompareOptions& o, const Common& c, std::ostream& out) {
  Manifest m("equiv", c.seed);
  describe(m, o.eq);
  const auto a = load_model(m, o.model_a);
  const auto b = load_model(m, o.model_b);
  auto eq = o.eq;
  eq.seed = c.seed;
  const auto r = equivalent(a, b, eq);
  return emit(m, to_json(r), Outputs{}, c, out, r.equivalent ? kOk : kReject);
}

int cmd_pipeline(const PipelineOptions& o, const Common& c, std::ostream& out) {
  Manifest m("pipeline", c.seed);
  m.param("input", o.input);
  m.param("column", o.column);
  m.param("holdout", o.holdout);
  m.param("segments", o.segments);
  m.param("outDir", o.out_dir);
  describe(m, o.infer, "infer.");
  describe(m, o.confidence);
  describe(m, o.detect);
  if (!(o.holdout > 0.0 && o.holdout < 1.0)) throw Error(ErrorKind::InvalidArgument, "holdout fraction must lie in (0, 1)");
  if (o.segments < 1) throw Error(ErrorKind::InvalidArgument, "need at least one holdout segment");

  const auto raw = read_csv_column(o.input, o.column);
  m.input(o.input, read_file(o.input));
  std::optional<SymbolizerSpec> given;
  if (!o.spec_in.empty()) {
    m.param("spec", o.spec_in);
    given = spec_from_json(load(m, o.spec_in));
  }
  const auto mode = given ? given->mode : symbolizer_mode_from_string(o.mode);
  m.param("mode", std::string(to_string(mode)));
  m.param("bins", given ? given->bin_count() : o.bins);
  const auto values = binned_values(mode, raw);
  std::vector<std::vector<double>> negative_values;
  Json negative_names = Json::array();
  for (const auto& p : expand(o.negatives, ".csv")) {
    negative_values.push_back(binned_values(mode, read_csv_column(p, o.column)));
    m.input(p, read_file(p));
    negative_names.push_back(p.string());
  }
  const auto n_hold = static_cast<std::size_t>(o.holdout * static_cast<double>(values.size()));
  if (n_hold < o.segments) {
    throw Error(ErrorKind::InvalidArgument, fmt::format("holdout of {} symbols cannot form {} segments", n_hold, o.segments));
  }
  const std::span<const double> train_values(values.data(), values.size() - n_hold);
  const auto spec = given ? *given : fit_quantile_bins(train_values, o.bins, mode);

  Outputs outputs;
  const fs::path dir(o.out_dir);
  const auto manifest = m.to_json().dump();
  outputs.write(dir / "spec.json", spec_to_json(spec, manifest));
  const auto train = bin_values(spec, train_values);
  outputs.write(dir / "train.txt", sequence_to_text(train, manifest));
  std::vector<SymbolSequence> holdout;
  for (std::size_t i = 0; i < o.segments; ++i) {
    const auto begin = train.size() + i * n_hold / o.segments;
    const auto end = train.size() + (i + 1) * n_hold / o.segments;
    holdout.push_back(bin_values(spec, std::span<const double>(values.data() + begin, end - begin)));
    outputs.write(dir / fmt::format("holdout_{:03}.txt", i), sequence_to_text(holdout.back(), manifest));
  }

  Json result{{"spec", to_json(spec)}, {"trainSymbols", train.size()}, {"holdoutSymbols", n_hold}};
  auto icfg = o.infer;
  icfg.seed = c.seed;
  const auto inferred = infer(train, icfg);
  outputs.write(dir / "model.json", model_document(inferred.model, m, true));
  result["inference"] = to_json(inferred);

  auto ccfg = o.confidence;
  ccfg.allow_vacuous = true;
  const auto conf = assess_confidence(inferred.model, train, ccfg);
  result["confidence"] = to_json(conf);
  if (conf.verdict != Verdict::Sufficient) {
    result["halted"] = "confidence";
    return emit(m, std::move(result), outputs, c, out, kNeedMoreData);
  }

  auto dcfg = o.detect;
  if (!o.negatives.empty()) {
    std::vector<SymbolSequence> negatives;
    for (const auto& v : negative_values) negatives.push_back(bin_values(spec, v));
    const auto roc = roc_optimal_threshold(inferred.model, holdout, negatives, dcfg);
    dcfg.threshold = roc.optimal_threshold;
    Json rj = to_json(roc);
    rj["negatives"] = std::move(negative_names);
    result["roc"] = std::move(rj);
    outputs.write(dir / "roc.csv", roc_csv(roc));
  }

  Json verdicts = Json::array();
  bool all = true;
  for (std::size_t i = 0; i < holdout.size(); ++i) {
    const auto r = detect(inferred.model, holdout[i], dcfg);
    all = all && r.accept;
    verdicts.push_back(Json{{"segment", i}, {"symbols", holdout[i].size()}, {"proportion", r.proportion}, {"accept", r.accept}});
  }
  result["threshold"] = dcfg.threshold;
  result["holdout"] = std::move(verdicts);
  return emit(m, std::move(result), outputs, c, out, all ? kOk : kReject);
}

}  // namespace hmmforge::cli
