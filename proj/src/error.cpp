#include "leonard/error.hpp"

namespace leonard {

std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::InvalidField: return "InvalidField";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorKind::NotAnEigenvalue: return "NotAnEigenvalue";
    case ErrorKind::DegenerateEigenspace: return "DegenerateEigenspace";
    case ErrorKind::SingularBasisMatrix: return "SingularBasisMatrix";
    case ErrorKind::RepeatedEigenvalue: return "RepeatedEigenvalue";
    case ErrorKind::SpectrumNotSplit: return "SpectrumNotSplit";
    case ErrorKind::SpectrumUnavailable: return "SpectrumUnavailable";
    case ErrorKind::InvalidParameterArray: return "InvalidParameterArray";
    case ErrorKind::NotTridiagonalizable: return "NotTridiagonalizable";
    case ErrorKind::SplitBasisDegenerate: return "SplitBasisDegenerate";
    case ErrorKind::NotUpperBidiagonal: return "NotUpperBidiagonal";
    case ErrorKind::NotLeonardPair: return "NotLeonardPair";
    case ErrorKind::FieldTooSmall: return "FieldTooSmall";
    case ErrorKind::SearchGuard: return "SearchGuard";
    case ErrorKind::RatioInconsistent: return "RatioInconsistent";
    case ErrorKind::NotEnoughTerms: return "NotEnoughTerms";
    case ErrorKind::EvenIndexUnsupported: return "EvenIndexUnsupported";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::BracketVanished: return "BracketVanished";
    case ErrorKind::EvenD: return "EvenD";
    case ErrorKind::OddD: return "OddD";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(error_name(kind)) + ": " + detail),
      kind_(kind),
      detail_(detail) {}

}  // namespace leonard
