#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gsieve {

/// Failure categories raised by the library. Every throwing operation raises
/// `gsieve::Error` carrying one of these codes.
enum class Errc {
  denominator_divisible_by_p,
  not_determinant_one,
  cap_exceeded,
  not_regular_semisimple,
  unsupported_dimension,
  dimension_mismatch,
  not_converged,
  too_large_for_dense,
  not_a_subgroup,
  insufficient_signal,
  table_mismatch,
  not_symmetric,
  missing_identity,
  search_bound_exceeded,
  empty_battery,
  predicate_missing_prime,
  verification_failure,
  config_error,
  invalid_argument,
};

constexpr std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::denominator_divisible_by_p: return "DenominatorDivisibleByP";
    case Errc::not_determinant_one: return "NotDeterminantOne";
    case Errc::cap_exceeded: return "CapExceeded";
    case Errc::not_regular_semisimple: return "NotRegularSemisimple";
    case Errc::unsupported_dimension: return "UnsupportedDimension";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::not_converged: return "NotConverged";
    case Errc::too_large_for_dense: return "TooLargeForDense";
    case Errc::not_a_subgroup: return "NotASubgroup";
    case Errc::insufficient_signal: return "InsufficientSignal";
    case Errc::table_mismatch: return "TableMismatch";
    case Errc::not_symmetric: return "NotSymmetric";
    case Errc::missing_identity: return "MissingIdentity";
    case Errc::search_bound_exceeded: return "SearchBoundExceeded";
    case Errc::empty_battery: return "EmptyBattery";
    case Errc::predicate_missing_prime: return "PredicateMissingPrime";
    case Errc::verification_failure: return "VerificationFailure";
    case Errc::config_error: return "ConfigError";
    case Errc::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Thrown by enumeration when the closure outgrows its cap; remembers how far
/// it got.
class CapExceeded : public Error {
 public:
  CapExceeded(std::size_t partial, std::size_t cap)
      : Error(Errc::cap_exceeded, "closure reached " + std::to_string(partial) +
                                      " elements (cap " + std::to_string(cap) + ")"),
        partial_size(partial) {}

  std::size_t partial_size;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool condition, Errc code, const std::string& what) {
  if (!condition) fail(code, what);
}

}  // namespace gsieve
