#include "hmmforge/model_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <fmt/format.h>
#include <json.hpp>

#include "hmmforge/error.hpp"

namespace hmmforge {

using nlohmann::json;

std::string format_real(double v) { return fmt::format("{:.17g}", v); }

namespace {

std::string quote(const std::string& s) { return json(s).dump(); }

}  // namespace

std::string model_to_json(const DeterministicHmm& model, const ModelMeta& meta) {
  std::string out = "{\n  \"alphabet\": [";
  const auto& sym = model.alphabet().symbols();
  for (std::size_t i = 0; i < sym.size(); ++i) out += (i ? ", " : "") + quote(sym[i]);
  out += "],\n  \"states\": [";
  for (std::size_t i = 0; i < model.state_count(); ++i) out += (i ? ", " : "") + quote(model.state_label(i));
  out += "],\n  \"transitions\": [";
  const auto& ts = model.transitions();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const auto& t = ts[i];
    const std::string to = t.to < model.state_count() ? model.state_label(t.to) : std::string("?");
    out += fmt::format("{}\n    {{\"from\": {}, \"symbol\": {}, \"to\": {}, \"p\": {}}}", i ? "," : "",
                       quote(model.state_label(t.from)), quote(sym[t.symbol]), quote(to), format_real(t.p));
  }
  out += ts.empty() ? "],\n" : "\n  ],\n";
  out += "  \"meta\": {";
  out += "\"generator\": " + quote(meta.generator);
  out += ", \"seed\": " + (meta.seed ? std::to_string(*meta.seed) : std::string("null"));
  out += ", \"createdBy\": " + quote(meta.created_by);
  if (!meta.manifest_json.empty()) out += ", \"manifest\": " + meta.manifest_json;
  out += "}\n}\n";
  return out;
}

DeterministicHmm model_from_json(std::string_view text, ModelMeta* meta) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("model JSON: ") + e.what());
  }
  try {
    Alphabet alphabet(doc.at("alphabet").get<std::vector<std::string>>());
    auto states = doc.at("states").get<std::vector<std::string>>();
    std::unordered_map<std::string, StateId> index;
    for (std::size_t i = 0; i < states.size(); ++i) index.emplace(states[i], static_cast<StateId>(i));
    auto state_id = [&](const std::string& label) {
      auto it = index.find(label);
      if (it == index.end()) throw Error(ErrorKind::ParseError, "unknown state '" + label + "' in transition");
      return it->second;
    };
    std::vector<Transition> ts;
    for (const auto& t : doc.at("transitions")) {
      ts.push_back({state_id(t.at("from").get<std::string>()),
                    alphabet.index_of(t.at("symbol").get<std::string>()),
                    state_id(t.at("to").get<std::string>()), t.at("p").get<double>()});
    }
    if (meta) {
      *meta = {};
      if (auto it = doc.find("meta"); it != doc.end() && it->is_object()) {
        meta->generator = it->value("generator", std::string());
        meta->created_by = it->value("createdBy", std::string());
        if (auto s = it->find("seed"); s != it->end() && s->is_number_unsigned()) meta->seed = s->get<std::uint64_t>();
        if (auto m = it->find("manifest"); m != it->end()) meta->manifest_json = m->dump();
      }
    }
    return DeterministicHmm(std::move(alphabet), std::move(states), std::move(ts));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("model JSON: ") + e.what());
  }
}

std::string sequence_to_text(const SymbolSequence& seq, std::string_view manifest_json) {
  std::string out = "#alphabet: ";
  const auto& sym = seq.alphabet().symbols();
  for (std::size_t i = 0; i < sym.size(); ++i) out += (i ? "," : "") + sym[i];
  out += '\n';
  if (!manifest_json.empty()) {
    out += "#manifest: ";
    out += manifest_json;
    out += '\n';
  }
  constexpr std::size_t kPerLine = 32;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    out += sym[seq[i]];
    out += ((i + 1) % kPerLine == 0 || i + 1 == seq.size()) ? '\n' : ' ';
  }
  return out;
}

SymbolSequence sequence_from_text(std::string_view text) {
  constexpr std::string_view kHeader = "#alphabet:";
  const auto eol = text.find('\n');
  std::string_view header = text.substr(0, eol);
  if (!header.empty() && header.back() == '\r') header.remove_suffix(1);
  if (header.substr(0, kHeader.size()) != kHeader) {
    throw Error(ErrorKind::ParseError, "sequence file must start with '#alphabet:'");
  }
  std::vector<std::string> symbols;
  std::string current;
  for (char c : header.substr(kHeader.size())) {
    if (c == ',') {
      symbols.push_back(current);
      current.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      current.push_back(c);
    }
  }
  symbols.push_back(current);
  Alphabet alphabet = [&] {
    try {
      return Alphabet(symbols);
    } catch (const Error& e) {
      throw Error(ErrorKind::ParseError, e.what());
    }
  }();
  // Later '#' lines are comments (symbols never start with '#').
  std::string body;
  if (eol != std::string_view::npos) {
    std::string_view rest = text.substr(eol + 1);
    while (!rest.empty()) {
      const auto nl = rest.find('\n');
      const auto line = rest.substr(0, nl);
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string_view::npos || line[first] != '#') {
        body += line;
        body += '\n';
      }
      if (nl == std::string_view::npos) break;
      rest.remove_prefix(nl + 1);
    }
  }
  return SymbolSequence::from_tokens(alphabet, body);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorKind::Io, "short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot rename " + tmp.string() + ": " + ec.message());
}

DeterministicHmm read_model(const std::filesystem::path& path, ModelMeta* meta) {
  return model_from_json(read_file(path), meta);
}

SymbolSequence read_sequence(const std::filesystem::path& path) { return sequence_from_text(read_file(path)); }

}  // namespace hmmforge
