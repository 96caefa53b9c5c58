#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hmmforge {

using SymbolId = std::uint32_t;
using StateId = std::uint32_t;

/// Ordered set of opaque symbol tokens. Index order is the canonical order used
/// everywhere (generation, tracing, serialization).
class Alphabet {
 public:
  Alphabet() = default;
  /// Throws InvalidArgument on an empty list, duplicates, or tokens that cannot
  /// be written to a sequence file (empty, whitespace, ',' or '#').
  explicit Alphabet(std::vector<std::string> symbols);

  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }
  const std::string& symbol(SymbolId id) const { return symbols_.at(id); }
  const std::vector<std::string>& symbols() const noexcept { return symbols_; }
  std::optional<SymbolId> find(std::string_view token) const;
  /// Like find(), but throws ParseError naming the unknown token.
  SymbolId index_of(std::string_view token) const;

  /// True when every token is a single character; history labels then
  /// concatenate without separators.
  bool single_char() const noexcept { return single_char_; }

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.symbols_ == b.symbols_; }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, SymbolId> index_;
  bool single_char_ = true;
};

/// Finite string over an alphabet.
class SymbolSequence {
 public:
  SymbolSequence() = default;
  SymbolSequence(Alphabet alphabet, std::vector<SymbolId> data);

  /// Parses whitespace-separated tokens. With single-character symbols a
  /// token may hold several symbols ("abba").
  static SymbolSequence from_tokens(const Alphabet& alphabet, std::string_view text);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const std::vector<SymbolId>& data() const noexcept { return data_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }
  SymbolId operator[](std::size_t i) const { return data_[i]; }

  SymbolSequence prefix(std::size_t n) const;
  std::string to_string(std::string_view separator = " ") const;

  friend bool operator==(const SymbolSequence&, const SymbolSequence&) = default;

 private:
  Alphabet alphabet_;
  std::vector<SymbolId> data_;
};

}  // namespace hmmforge
