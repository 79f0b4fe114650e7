#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dynforge {

// Root of the toolkit's error hierarchy. Everything thrown on purpose derives
// from this, so callers can catch dynforge::error and still see what() text.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// make_field(p, s) with composite or non-positive p.
struct not_prime_error : error {
  using error::error;
};

// Arithmetic mixing elements of different fields. Always a bug in the caller;
// there is no implicit coercion anywhere in the toolkit.
struct field_mismatch_error : error {
  using error::error;
};

// normalize_family: the input pair reduces to z-degree < 2 (or b == 0).
struct degenerate_family_error : error {
  using error::error;
};

// A degree or combinatorial cap was exceeded (iterate caps, recombination
// pool size). Carries no partial result on purpose.
struct size_limit_error : error {
  using error::error;
};

// bifactor: every admissible specialization point in the configured search
// range was rejected (degree drop or repeated roots).
struct no_good_specialization_error : error {
  using error::error;
};

// Newton-Puiseux: inseparable residual equation with p dividing the slope
// denominator. The expansion does not exist in the tame Puiseux field, so
// this is a first-class outcome, not a retryable failure.
struct wild_ramification_error : error {
  using error::error;
};

// A requested quantity is not determined at the working precision, after the
// configured retries.
struct precision_loss_error : error {
  using error::error;
};

// taylor_at: the denominator vanishes at the expansion center.
struct pole_at_center_error : error {
  using error::error;
};

// Family expression parser: carries the byte offset of the offending token.
struct parse_error : error {
  std::size_t position;
  parse_error(const std::string& msg, std::size_t pos)
      : error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

// Violated internal invariant (hard assertions such as fiber accounting).
struct internal_error : error {
  using error::error;
};

}  // namespace dynforge
