#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dynforge/ff.hpp"

namespace dynforge {

// Dense univariate polynomial over a fixed F_q. Coefficient i is the code of
// the coefficient of x^i. Invariant: no trailing zero codes, so deg() of the
// zero polynomial is -1.
class FqPoly {
 public:
  FqPoly() = default;
  explicit FqPoly(FieldPtr f) : field_(f) {}
  FqPoly(FieldPtr f, std::vector<std::uint32_t> coeffs)
      : field_(f), c_(std::move(coeffs)) {
    trim();
  }
  static FqPoly constant(const Fq& a);
  static FqPoly x(FieldPtr f);        // the monomial x
  static FqPoly monomial(const Fq& a, long k);

  FieldPtr field() const { return field_; }
  long deg() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }

  Fq coeff(long i) const;
  std::uint32_t code(long i) const {
    return (i >= 0 && i < static_cast<long>(c_.size())) ? c_[i] : 0;
  }
  Fq lc() const;                       // leading coefficient; zero poly -> 0
  const std::vector<std::uint32_t>& codes() const { return c_; }

  void set_coeff(long i, const Fq& a);

  FqPoly operator+(const FqPoly& o) const;
  FqPoly operator-(const FqPoly& o) const;
  FqPoly operator-() const;
  FqPoly operator*(const FqPoly& o) const;
  FqPoly operator*(const Fq& a) const;
  bool operator==(const FqPoly& o) const;
  bool operator!=(const FqPoly& o) const { return !(*this == o); }

  FqPoly shifted(long k) const;        // multiply by x^k, k >= 0
  FqPoly monic() const;                // zero poly stays zero
  FqPoly derivative() const;
  Fq eval(const Fq& a) const;
  FqPoly compose(const FqPoly& inner) const;

  std::string str(const std::string& var = "x") const;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  void check_same(const FqPoly& o) const;

  FieldPtr field_ = nullptr;
  std::vector<std::uint32_t> c_;
};

// Quotient and remainder; divisor must be nonzero.
std::pair<FqPoly, FqPoly> poly_divrem(const FqPoly& a, const FqPoly& b);
FqPoly poly_div(const FqPoly& a, const FqPoly& b);   // asserts exact
FqPoly poly_rem(const FqPoly& a, const FqPoly& b);

// Monic gcd; gcd(0, 0) = 0.
FqPoly poly_gcd(FqPoly a, FqPoly b);
// Returns (g, u, v) with u*a + v*b = g and g monic.
struct XgcdResult {
  FqPoly g, u, v;
};
XgcdResult poly_xgcd(const FqPoly& a, const FqPoly& b);

// a^e mod f, with f nonconstant.
FqPoly poly_pow_mod(const FqPoly& a, std::uint64_t e, const FqPoly& f);

struct FqFactorization {
  Fq unit;                                       // overall scalar
  std::vector<std::pair<FqPoly, int>> factors;   // monic irreducible, exponent
};

// Complete factorization into monic irreducibles. Deterministic output order
// (degree, then coefficient codes) regardless of the internal random choices.
FqFactorization poly_factor(const FqPoly& f);

// Roots in the extension of the coefficient field of the given relative
// degree (1 = the field itself). Returned as (root, multiplicity) sorted by
// code; roots live in extension_field(f.field(), ext_degree).
std::vector<std::pair<Fq, int>> poly_roots(const FqPoly& f, int ext_degree = 1);

bool poly_is_irreducible(const FqPoly& f);
bool poly_is_squarefree(const FqPoly& f);

// Squarefree decomposition: list of (g_i, e_i) with f = unit * prod g_i^{e_i},
// g_i monic squarefree pairwise coprime, e_i strictly increasing.
struct SquarefreeDecomposition {
  Fq unit;
  std::vector<std::pair<FqPoly, int>> parts;
};
SquarefreeDecomposition poly_squarefree_decomposition(const FqPoly& f);

// Coefficient-wise embedding into a larger field of the same characteristic.
FqPoly poly_lift(const FqPoly& f, const Field& target);
// Coefficient-wise projection; empty optional if any coefficient is outside.
std::optional<FqPoly> poly_project(const FqPoly& f, const Field& target);

// p-th root of a polynomial all of whose exponents are multiples of p.
FqPoly poly_pth_root(const FqPoly& f);

}  // namespace dynforge
