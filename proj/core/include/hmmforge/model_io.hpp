#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "hmmforge/hmm.hpp"

namespace hmmforge {

struct ModelMeta {
  std::string generator;             // RNG algorithm id, empty if no randomness was involved
  std::optional<std::uint64_t> seed;
  std::string created_by;
  std::string manifest_json;         // raw JSON object embedded as meta.manifest; empty to omit
};

/// Model document: alphabet, states, transitions {from, symbol, to, p}, meta.
/// Probabilities are written with 17 significant digits, so the text
/// round-trips to identical doubles.
std::string model_to_json(const DeterministicHmm& model, const ModelMeta& meta = {});
DeterministicHmm model_from_json(std::string_view text, ModelMeta* meta = nullptr);

/// Sequence document: "#alphabet: a,b,c" then whitespace-separated symbols.
/// Further lines starting with '#' are comments; the manifest, when given, is
/// written as "#manifest: {...}".
std::string sequence_to_text(const SymbolSequence& seq, std::string_view manifest_json = {});
SymbolSequence sequence_from_text(std::string_view text);

std::string read_file(const std::filesystem::path& path);
/// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

DeterministicHmm read_model(const std::filesystem::path& path, ModelMeta* meta = nullptr);
SymbolSequence read_sequence(const std::filesystem::path& path);

/// "%.17g" rendering used by every document that stores reals.
std::string format_real(double v);

}  // namespace hmmforge
