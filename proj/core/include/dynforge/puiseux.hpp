#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dynforge/bipoly.hpp"
#include "dynforge/rational.hpp"

namespace dynforge {

// Truncated Puiseux series at the place t = infinity, normalized so that
// v(t) = -1. A series is a finite sum of terms c * t^(-n/e) (that term has
// valuation n/e) plus an error of valuation >= prec(). Exponents live in
// (1/e)Z; e is kept minimal (the gcd of all stored exponent numerators and
// the precision is divided out), so ram() of t itself is 1.
//
// Coefficients sit in one absolute field F_{p^m}. Binary operations align
// both operands to the compositum field and a common ramification index, so
// mixing extensions of the same characteristic is fine; mixing
// characteristics throws field_mismatch_error.
//
// An exact series has prec() == +infinity. The exact zero is the only series
// with no terms and infinite precision; a series with no terms and finite
// precision is "zero to that precision" and its valuation is undetermined
// (valuation() throws precision_loss_error).
class PuiseuxSeries {
 public:
  explicit PuiseuxSeries(FieldPtr f);                    // exact zero
  static PuiseuxSeries constant(const Fq& a);
  // c * (term of valuation val); the exact zero if c == 0
  static PuiseuxSeries monomial(const Fq& a, const Rational& val);
  static PuiseuxSeries t(FieldPtr f);                    // valuation -1
  // no known terms, finite precision cap
  static PuiseuxSeries zero_to(FieldPtr f, const Rational& prec);

  FieldPtr field() const { return f_; }
  long ram() const { return e_; }
  Rational prec() const;
  bool is_exact() const;
  bool is_exact_zero() const { return terms_.empty() && is_exact(); }
  bool known_nonzero() const { return !terms_.empty(); }

  // min term valuation; +infinity for the exact zero; throws
  // precision_loss_error when no term is known at finite precision
  Rational valuation() const;
  Fq leading_coeff() const;
  // ascending valuation
  std::vector<std::pair<Rational, Fq>> term_list() const;
  // coefficient of the term of valuation v (zero when absent); throws
  // precision_loss_error when v >= prec()
  Fq coeff_at(const Rational& v) const;

  PuiseuxSeries truncated(const Rational& prec) const;   // new prec = min
  PuiseuxSeries lifted(const Field& to) const;
  PuiseuxSeries coeff_power(std::uint64_t k) const;      // c -> c^k termwise
  // t^(-1/e) -> zeta * t^(-1/e) on the minimal-e presentation: the term of
  // valuation n/e picks up zeta^(-n mod e). zeta must lie in field().
  PuiseuxSeries twisted(const Fq& zeta) const;

  PuiseuxSeries operator+(const PuiseuxSeries& o) const;
  PuiseuxSeries operator-(const PuiseuxSeries& o) const;
  PuiseuxSeries operator-() const;
  PuiseuxSeries operator*(const PuiseuxSeries& o) const;
  PuiseuxSeries operator*(const Fq& a) const;
  // multiplicative inverse, truncated at absolute precision prec. prec may
  // be +infinity only when the result is exact (a single-term series).
  PuiseuxSeries inv(const Rational& prec) const;
  PuiseuxSeries pow(long k) const;                       // k >= 0

  bool operator==(const PuiseuxSeries& o) const;
  bool operator!=(const PuiseuxSeries& o) const { return !(*this == o); }

  std::string str() const;

 private:
  void normalize();
  static void align(PuiseuxSeries& a, PuiseuxSeries& b);
  PuiseuxSeries rescaled(long new_e) const;

  FieldPtr f_ = nullptr;
  long e_ = 1;
  // exponent numerator (valuation * e) -> nonzero coefficient code
  std::map<long, std::uint32_t> terms_;
  long prec_num_;  // in units of 1/e; LLONG_MAX encodes exact
};

// canonical order: valuation, then ramification, then terms, then precision
bool ps_less(const PuiseuxSeries& a, const PuiseuxSeries& b);

// Polynomial in z with PuiseuxSeries coefficients, index = z-power.
using SeriesPoly = std::vector<PuiseuxSeries>;

SeriesPoly to_series_poly(const BiPoly& P);              // exact coefficients
PuiseuxSeries series_poly_eval(const SeriesPoly& P, const PuiseuxSeries& x);
SeriesPoly series_poly_shift(const SeriesPoly& P, const PuiseuxSeries& x);  // P(x + w)

// One segment of slope sigma and horizontal length L certifies exactly L
// roots of valuation -sigma (with multiplicity).
struct NewtonSegment {
  Rational slope;
  long length;
};

// Lower convex hull of {(i, v(c_i))}. z_order is the multiplicity of the
// exact root 0; slopes are strictly increasing and lengths sum to
// deg - z_order. Throws precision_loss_error when an undetermined
// coefficient could change the hull.
struct NewtonPolygon {
  long z_order = 0;
  std::vector<NewtonSegment> segments;

  Rational min_slope() const;                            // +infinity if none
  Rational max_slope() const;                            // -> throws if none
  long total_length() const;
  std::string str() const;
};

NewtonPolygon newton_polygon(const SeriesPoly& P);
NewtonPolygon newton_polygon(const BiPoly& P);

// All roots of P (dehomogenized view) in the tame Puiseux field, with
// multiplicity, in ps_less order. Each root carries rel_prec exact terms
// beyond its leading exponent (exact roots are emitted exactly). Throws
// wild_ramification_error when a residual equation is inseparable and the
// slope denominator is divisible by the characteristic.
std::vector<PuiseuxSeries> puiseux_roots(const BiPoly& P, long rel_prec);
std::vector<PuiseuxSeries> puiseux_roots(const BiPoly& P);

// Quadratic-convergence refinement of a simple root of P from the seed x0,
// truncated at absolute precision target. Throws precision_loss_error when
// the iteration does not converge from the seed.
PuiseuxSeries series_poly_newton(const SeriesPoly& P, const PuiseuxSeries& x0,
                                 const Rational& target);

// log-radius of the image of a disk of log-radius rho under
// y -> sum_{i>=1} c[i] y^i: max over i >= 1 of (-v(c_i) + i*rho).
// Nondecreasing in rho. c[0] is ignored.
Rational series_image_radius(const SeriesPoly& c, const Rational& rho);

// Taylor coefficients c_0..c_order of f(alpha + y) = a(alpha+y)/b(alpha+y),
// each truncated at absolute precision prec. Throws pole_at_center_error
// when b(alpha) is exactly zero.
SeriesPoly taylor_at(const RatFamily& fam, const PuiseuxSeries& alpha,
                     long order, const Rational& prec);

// Pairwise valuations v(alpha_i - alpha_j) of the roots of P, diagonal
// +infinity, indices in puiseux_roots order. Precision is raised (doubled,
// options().precision_retries times) until every off-diagonal difference is
// resolved; precision_loss_error after the last retry.
std::vector<std::vector<Rational>> root_separation(const BiPoly& P,
                                                   long rel_prec);

}  // namespace dynforge
