#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace srk {

enum class ErrorCode {
  // field
  NonPrimeCharacteristic,
  ReducibleModulus,
  DegreeMismatch,
  DivisionByZero,
  FieldMismatch,
  RationalFieldUnsupported,
  InfiniteField,
  UnsupportedField,
  // linalg
  AmbientMismatch,
  DimensionMismatch,
  // poly
  InhomogeneousInput,
  ZeroPolynomial,
  // slicerank
  BudgetExceeded,
  // descent
  EmptyCollection,
  CollectionTooLarge,
  InputNotOnHypersurface,
  TheoremViolation,
  RationalityFailure,
  ZeroTraceFallbackFailed,
  // grank
  ActionDoesNotVanish,
  TruncationTooSmall,
  LinearlyDependentCollection,
  WedgeTooLarge,
  // parsing / cli
  SyntaxError,
  UnknownVariable,
  FieldParseError,
  InvalidArgument,
  PropertyFailure,
  InternalError,
};

std::string_view error_name(ErrorCode code);

/// Base exception for every failure raised by the library. The code names
/// the failure the way it appears in JSON reports.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

/// Raised when a scan hits its membership-test budget. `verified_lower`
/// is the slice-rank lower bound established before the abort.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& detail, int verified_lower, std::uint64_t tests)
      : Error(ErrorCode::BudgetExceeded, detail), verified_lower_(verified_lower), tests_(tests) {}

  int verified_lower() const noexcept { return verified_lower_; }
  std::uint64_t tests_performed() const noexcept { return tests_; }

 private:
  int verified_lower_;
  std::uint64_t tests_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& detail) { throw Error(code, detail); }

}  // namespace srk
