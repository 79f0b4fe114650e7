#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dynforge/bipoly.hpp"
#include "dynforge/julia.hpp"
#include "dynforge/rational.hpp"

namespace dynforge {

// One place of the curve H = 0 lying over t = infinity. e is the
// ramification index, f the residue degree over the base field, and
// lead_exponent the t-exponent of the leading term of the branch (0 for
// branches with an exact-zero expansion and for the section at infinity).
struct InfinityPlace {
  long e = 1;
  long f = 1;
  Rational lead_exponent;
};

// Point counts for the plane model of H = 0 over one extension field.
// affine counts distinct (x, tau) solutions together with the points at
// x = infinity that the projective X-degree contributes; at_infinity sums
// the residue degrees f that divide s over the fiber places; singular
// counts affine points where both partial derivatives vanish.
struct PointCount {
  long affine = 0;
  long at_infinity = 0;
  long singular = 0;
};

// Everything recorded about one irreducible factor H of the relation
// polynomial with indices (m, n). Writing ell for the homogeneous degree,
//   H(X, Y) = H_0 X^ell + H_1 X^(ell-1) Y + ... + H_ell Y^ell,
// so H_i is the coefficient of X^(ell-i).
struct DynatomicFactorReport {
  BiPoly H;
  int m = 0;
  int n = 1;
  int mult = 1;                  // multiplicity inside the relation polynomial
  bool y_section = false;        // H is the factor Y
  bool repeat = false;           // H already divides the relation polynomial
                                 // of some (m', n') with m' <= m, n' | n
  long ell = 0;                  // homogeneous (X, Y)-degree of H
  std::vector<long> coeff_degs;  // deg_t(H_i) for i = 0..ell, -1 for zero
  bool H0_unit = false;          // H_0 is a nonzero constant

  bool fiber_done = false;
  std::string fiber_note;        // reason when the fiber was not computed
  std::vector<InfinityPlace> places;
  long rd_Z = 0;                 // max f over the fiber places
  long ri_Z = 0;                 // max e over the fiber places

  Rational gonality_lb;                 // filled in by growth_table
  std::map<long, PointCount> counts;    // extension degree s -> counts
};

// Build the report shell for one factor: degrees, coefficient degrees and
// the unit flag, no repeat detection and no fiber. H may carry a declared
// homogeneous degree (then ell = hom_deg) or be a plain z-polynomial
// (then ell = deg_z).
DynatomicFactorReport factor_report(const BiPoly& H, int m, int n, int mult);

// Factor the (m, n) relation polynomial of the family into irreducibles
// and report each factor. Requires m >= 0 and n >= 1. Factors equal to Y
// are flagged y_section; factors already dividing the relation polynomial
// of an earlier index pair (m' <= m, n' | n, not both equal) are flagged
// repeat. Order follows the canonical factorization order.
std::vector<DynatomicFactorReport> dynatomic_factors(const RatFamily& fam,
                                                     int m, int n);

// Compute the fiber of H = 0 over t = infinity by grouping the fractional
// power series roots of H into orbits under the coefficient Frobenius and
// the ramification twists. Fills places, rd_Z, ri_Z and sets fiber_done.
// The Y section gets the single place (1, 1, 0). When H_0 is not a unit
// the fiber is left uncomputed and fiber_note says why. Throws
// precision_loss_error when rel_prec cannot separate the orbits.
void fiber_at_infinity(DynatomicFactorReport& rep, long rel_prec);

// Same with the default working precision, retrying at doubled precision.
void fiber_at_infinity(DynatomicFactorReport& rep);

// Whether deg_t(H_i) <= i * N holds for every coefficient of H.
bool coefficient_bound_check(const DynatomicFactorReport& rep, long N);

// Lower bound ell / (ri * (q^rd + 1)) for the gonality of the curve H = 0,
// given bounds rd and ri on the residue degrees and ramification indices
// of its places over t = infinity.
Rational gonality_lower_bound(long ell, long rd, long ri, std::uint64_t q);
Rational gonality_lower_bound(const DynatomicFactorReport& rep, long rd,
                              long ri);

// Count the points of the plane model H = 0 over the degree-s extension
// of the base field by direct enumeration. Requires the extension to stay
// below the table-field size limit.
PointCount count_points(const DynatomicFactorReport& rep, int s);

// Reports for all index pairs with m + n <= max_total, ordered by
// (m + n, n, canonical factor order), with fibers, gonality bounds from
// the supplied family constants, and point counts over s = 1 and
// s = fc.residue_lcm wherever the field stays small.
std::vector<DynatomicFactorReport> growth_table(const RatFamily& fam,
                                                int max_total,
                                                const FamilyConstants& fc);

}  // namespace dynforge
