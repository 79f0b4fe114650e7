#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dynforge/bipoly.hpp"
#include "dynforge/puiseux.hpp"
#include "dynforge/rational.hpp"

namespace dynforge {

enum class CheckStatus { Pass, Fail, Unknown };

std::string to_string(CheckStatus s);

struct CheckItem {
  int index = 0;
  std::string name;
  CheckStatus status = CheckStatus::Unknown;
  std::string witness;
};

// Result of the eight expansion checks for a family a/b. Checks that cannot
// be decided (missing prerequisites, wild ramification, exhausted precision)
// come back Unknown, never Pass or Fail.
struct CertReport {
  std::vector<CheckItem> items;
  CheckStatus overall = CheckStatus::Unknown;
  // log-radius of the outermost roots of a (set once check 4 is decided)
  std::optional<Rational> outer_radius;
  // per-root expansion disk log-radii, in puiseux_roots order (check 7)
  std::vector<Rational> branch_radii;
  long rel_prec_used = 0;

  const CheckItem& item(int index) const;
  std::string str() const;
};

// The eight checks, in order:
//   1 numerator and denominator monic in z and coprime
//   2 deg a exceeds deg b by at least 2
//   3 numerator separable in z
//   4 outer radius positive (a has a root away from the origin)
//   5 denominator roots within the outer disk
//   6 a fixed point on the outer circle
//   7 expansion disks clear of poles
//   8 expansion disks pairwise separated
CertReport check_conditions(const RatFamily& fam);

// Largest log-radius rho such that the image under a/b of the disk of
// log-radius rho around the root alpha stays inside the closed disk of
// log-radius R around the origin. Exact: computed from the shifted numerator
// coefficients and the denominator value at alpha.
Rational branch_radius(const RatFamily& fam, const PuiseuxSeries& alpha,
                       const Rational& R);

// Log-distance from alpha to the nearest root of b; +infinity when b has
// none. Throws pole_at_center_error when b(alpha) is exactly zero.
Rational nearest_pole_log_distance(const BiPoly& b, const PuiseuxSeries& alpha);

// For sections alpha_1..alpha_n, tests every ordered pair (i, j), i != j:
//   deg(alpha_i - alpha_j) + sum over l != j of deg(alpha_l - alpha_j)
// must exceed max_l deg(alpha_l). Reports the first violated pair in
// lexicographic order (1-indexed).
struct DegreeInequalityReport {
  bool holds = true;
  int i = 0, j = 0;  // violated pair when !holds
  std::string str() const;
};

DegreeInequalityReport check_degree_inequality(const std::vector<TPoly>& alphas);

// Conjugation of a quadratic polynomial a z^2 + b z + c into the normal form
// z(z + s): rescale to monic, then shift by a fixed point u, a root of
// u^2 + (b - 1) u + a c. When no rational root exists the shift lives in a
// quadratic extension of F_q(t) (ext_degree 2). The multiplier s = 2u + b is
// rational whenever u is, and always in characteristic 2.
struct QuadraticNormalForm {
  BiPoly fixed_equation;   // monic quadratic in the shift u, over F_q[t]
  int ext_degree = 1;
  std::optional<TPoly> u;  // the shift, when rational (lex-least choice)
  std::optional<TPoly> s;
  bool isotrivial = false;  // the normal form is constant in t
  std::string str() const;
};

QuadraticNormalForm normalize_quadratic(const TPoly& a, const TPoly& b,
                                        const TPoly& c);

}  // namespace dynforge
