#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hmmforge {

enum class ErrorKind {
  InvalidArgument,
  InvalidModel,
  NotIrreducible,
  AlphabetMismatch,
  InsufficientData,
  EmptyInput,
  DegenerateInput,
  NonMonotonicTimestamps,
  GammaOutOfRange,
  EmptySet,
  ParseError,
  Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries a kind so callers (and the CLI's
// exit-code mapping) can dispatch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hmmforge
