#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace leonard {

/// Every failure the library reports carries one of these kinds. The names
/// returned by `error_name` are stable and appear verbatim in CLI reports.
enum class ErrorKind {
  DivisionByZero,
  FieldMismatch,
  InvalidField,
  ParseError,
  DimensionMismatch,
  DimensionTooLarge,
  NotAnEigenvalue,
  DegenerateEigenspace,
  SingularBasisMatrix,
  RepeatedEigenvalue,
  SpectrumNotSplit,
  SpectrumUnavailable,
  InvalidParameterArray,
  NotTridiagonalizable,
  SplitBasisDegenerate,
  NotUpperBidiagonal,
  NotLeonardPair,
  FieldTooSmall,
  SearchGuard,
  RatioInconsistent,
  NotEnoughTerms,
  EvenIndexUnsupported,
  IndexOutOfRange,
  BracketVanished,
  EvenD,
  OddD,
};

std::string_view error_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }
  /// Detail without the leading kind name.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace leonard
