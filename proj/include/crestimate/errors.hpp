#pragma once

#include <stdexcept>
#include <string>

namespace crestimate {

/// Reason a user-supplied value was rejected.
enum class ErrorKind {
  non_monotone_breakpoints,
  negative_value,
  length_mismatch,
  non_finite_value,
  non_positive_parameter,
  zero_function,
  not_decreasing,
  support_below_zero,
  not_one_crest,
  too_many_pieces,
  empty_grid,
  weight_margin,
  unsupported_input,
  parse_error,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::non_monotone_breakpoints: return "non_monotone_breakpoints";
    case ErrorKind::negative_value: return "negative_value";
    case ErrorKind::length_mismatch: return "length_mismatch";
    case ErrorKind::non_finite_value: return "non_finite_value";
    case ErrorKind::non_positive_parameter: return "non_positive_parameter";
    case ErrorKind::zero_function: return "zero_function";
    case ErrorKind::not_decreasing: return "not_decreasing";
    case ErrorKind::support_below_zero: return "support_below_zero";
    case ErrorKind::not_one_crest: return "not_one_crest";
    case ErrorKind::too_many_pieces: return "too_many_pieces";
    case ErrorKind::empty_grid: return "empty_grid";
    case ErrorKind::weight_margin: return "weight_margin";
    case ErrorKind::unsupported_input: return "unsupported_input";
    case ErrorKind::parse_error: return "parse_error";
  }
  return "unknown";
}

/// Thrown when an input violates an operation's precondition. Maps to CLI exit code 1.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(ErrorKind kind, const std::string& what)
      : std::invalid_argument(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Thrown when a numerical procedure exhausts its budget. Maps to CLI exit code 2.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw ValidationError(kind, what);
}

inline void require_positive(double value, const char* name) {
  if (!(value > 0.0)) {
    fail(ErrorKind::non_positive_parameter,
         std::string(name) + " must be positive, got " + std::to_string(value));
  }
}

}  // namespace detail
}  // namespace crestimate
