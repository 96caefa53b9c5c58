#include "hmmforge/alphabet.hpp"

#include <algorithm>
#include <cctype>

#include "hmmforge/error.hpp"

namespace hmmforge {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidModel: return "InvalidModel";
    case ErrorKind::NotIrreducible: return "NotIrreducible";
    case ErrorKind::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::NonMonotonicTimestamps: return "NonMonotonicTimestamps";
    case ErrorKind::GammaOutOfRange: return "GammaOutOfRange";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

namespace {

bool writable_token(const std::string& s) {
  if (s.empty() || s.front() == '#') return false;
  return std::none_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isspace(c) != 0 || c == ',';
  });
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw Error(ErrorKind::InvalidArgument, "alphabet is empty");
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    const auto& s = symbols_[i];
    if (!writable_token(s)) {
      throw Error(ErrorKind::InvalidArgument, "invalid symbol token '" + s + "'");
    }
    if (!index_.emplace(s, static_cast<SymbolId>(i)).second) {
      throw Error(ErrorKind::InvalidArgument, "duplicate symbol '" + s + "'");
    }
    single_char_ = single_char_ && s.size() == 1;
  }
}

std::optional<SymbolId> Alphabet::find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SymbolId Alphabet::index_of(std::string_view token) const {
  if (auto id = find(token)) return *id;
  throw Error(ErrorKind::ParseError, "symbol '" + std::string(token) + "' not in alphabet");
}

SymbolSequence::SymbolSequence(Alphabet alphabet, std::vector<SymbolId> data)
    : alphabet_(std::move(alphabet)), data_(std::move(data)) {
  for (SymbolId s : data_) {
    if (s >= alphabet_.size()) {
      throw Error(ErrorKind::InvalidArgument, "symbol index out of range for alphabet");
    }
  }
}

SymbolSequence SymbolSequence::from_tokens(const Alphabet& alphabet, std::string_view text) {
  std::vector<SymbolId> data;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    const auto token = text.substr(i, j - i);
    if (token.size() > 1 && alphabet.single_char()) {
      for (char c : token) data.push_back(alphabet.index_of(std::string_view(&c, 1)));
    } else if (!token.empty()) {
      data.push_back(alphabet.index_of(token));
    }
    i = j;
  }
  return SymbolSequence(alphabet, std::move(data));
}

SymbolSequence SymbolSequence::prefix(std::size_t n) const {
  n = std::min(n, data_.size());
  return SymbolSequence(alphabet_, std::vector<SymbolId>(data_.begin(), data_.begin() + n));
}

std::string SymbolSequence::to_string(std::string_view separator) const {
  std::string out;
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (i) out += separator;
    out += alphabet_.symbol(data_[i]);
  }
  return out;
}

}  // namespace hmmforge
