#include "srk/errors.hpp"

namespace srk {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPrimeCharacteristic: return "NonPrimeCharacteristic";
    case ErrorCode::ReducibleModulus: return "ReducibleModulus";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::RationalFieldUnsupported: return "RationalFieldUnsupported";
    case ErrorCode::InfiniteField: return "InfiniteField";
    case ErrorCode::UnsupportedField: return "UnsupportedField";
    case ErrorCode::AmbientMismatch: return "AmbientMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InhomogeneousInput: return "InhomogeneousInput";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::EmptyCollection: return "EmptyCollection";
    case ErrorCode::CollectionTooLarge: return "CollectionTooLarge";
    case ErrorCode::InputNotOnHypersurface: return "InputNotOnHypersurface";
    case ErrorCode::TheoremViolation: return "TheoremViolation";
    case ErrorCode::RationalityFailure: return "RationalityFailure";
    case ErrorCode::ZeroTraceFallbackFailed: return "ZeroTraceFallbackFailed";
    case ErrorCode::ActionDoesNotVanish: return "ActionDoesNotVanish";
    case ErrorCode::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorCode::LinearlyDependentCollection: return "LinearlyDependentCollection";
    case ErrorCode::WedgeTooLarge: return "WedgeTooLarge";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::FieldParseError: return "FieldParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::PropertyFailure: return "PropertyFailure";
    case ErrorCode::InternalError: return "InternalError";
  }
  return "Unknown";
}

}  // namespace srk
