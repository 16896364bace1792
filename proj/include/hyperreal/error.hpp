#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperreal {

enum class ErrorKind {
  UnresolvedZero,
  ExactZero,
  DivisionByExactZero,
  NegativeLeadingCoefficient,
  RootNotExact,
  Unlimited,
  InsufficientPrecision,
  NotInfinitesimal,
  SyntaxError,
  UnknownIdentifier,
  NotRationalFunction,
  DimensionMismatch,
  NotNearStandard,
  NotInLanguage,
  NotAStatement,
  AlreadyStarred,
  Undecidable,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

/// Domain error raised by every module. `position()` is a 0-based column into
/// the parsed text when the error originates from a parser or a positioned node.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<std::size_t> position = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<std::size_t> position() const noexcept { return position_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> position_;
};

}  // namespace hyperreal
