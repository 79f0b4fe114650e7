#pragma once

#include <vector>

#include "dynforge/bipoly.hpp"
#include "dynforge/puiseux.hpp"
#include "dynforge/rational.hpp"

namespace dynforge {

// Branch data for a family whose expansion conditions hold: the outer disk of
// log-radius outer_radius, and one expansion disk per root of the numerator.
// Inverse branches of the family map the outer disk into the expansion disks,
// which is what makes the itinerary solves below converge. The structure can
// be built for any non-degenerate family, but the solvers are only meaningful
// (and only guaranteed to terminate) when check_conditions passes.
struct BranchSystem {
  RatFamily fam;
  Rational outer_radius;
  std::vector<PuiseuxSeries> centers;  // roots of the numerator, canonical order
  std::vector<Rational> radii;         // expansion disk log-radii, same order
  long rel_prec = 0;                   // working precision for solved points
};

BranchSystem branch_system(const RatFamily& fam, long rel_prec);
BranchSystem branch_system(const RatFamily& fam);

// Preimage of the value w under the inverse branch landing in the disk around
// centers[i-1] (i is 1-based, matching itinerary words). Exact when the
// Newton iteration terminates with an exactly vanishing value.
PuiseuxSeries branch_preimage(const BranchSystem& bs, int i,
                              const PuiseuxSeries& w);

// A solved point together with its disk itinerary: word[k] is the 1-based
// index of the expansion disk containing the k-th forward image.
struct LabeledPoint {
  PuiseuxSeries point;
  std::vector<int> word;
};

// The d^n solutions of f^n(x) = x, one per length-n itinerary word, in
// lexicographic word order. Points are reported at absolute precision
// bs.rel_prec unless the solve lands exactly.
std::vector<LabeledPoint> periodic_points(const BranchSystem& bs, int n);

// The d^(m+n) solutions of f^(m+n)(x) = f^m(x), one per length-(m+n) word:
// m pullback steps followed by the length-n cycle word. m = 0 reduces to
// periodic_points.
std::vector<LabeledPoint> preperiodic_points(const BranchSystem& bs, int m,
                                             int n);

// f(x) = a(x) / b(x) as a Puiseux series. Throws pole_at_center_error when
// b(x) is exactly zero and precision_loss_error when it is undetermined.
PuiseuxSeries family_eval(const RatFamily& fam, const PuiseuxSeries& x);

// 1-based index of the first expansion disk containing x, or 0 when x lies
// in none of them.
int disk_index(const BranchSystem& bs, const PuiseuxSeries& x);

// Every point sent to infinity by some iterate f^k with 1 <= k <= depth:
// the roots of the denominators of the first depth iterates, deduplicated,
// in canonical order. Empty for polynomial families.
std::vector<PuiseuxSeries> backward_orbit_of_infinity(const RatFamily& fam,
                                                      int depth,
                                                      long rel_prec);
std::vector<PuiseuxSeries> backward_orbit_of_infinity(const RatFamily& fam,
                                                      int depth);

// Numerical invariants collected from the branch data and the backward orbit
// of infinity up to the given depth.
struct FamilyConstants {
  long ram_lcm = 1;      // lcm of ramification indices and radius denominators
  long residue_lcm = 1;  // lcm of coefficient field degrees over the base
  long height_bound = 0; // ceil of the largest log-radius in play
  bool stabilized = false;  // same values as at depth - 1 (false at depth 0)
};

FamilyConstants family_constants(const RatFamily& fam, int depth);
// Same, solving branches and orbits at the given relative precision
// (rel_prec <= 0 picks the default for degree d).
FamilyConstants family_constants(const RatFamily& fam, int depth,
                                 long rel_prec);

// Growth of circles outside the outer disk: for rho >= outer radius R the
// image of the circle of log-radius rho is the circle of log-radius
// rho + gain_at_radius + gain_slope * (rho - R), exactly (both polygons are
// linear beyond their largest slope). Positive gain_at_radius together with
// positive gain_slope certifies that every orbit starting outside the closed
// outer disk escapes to infinity.
struct EscapeBound {
  Rational gain_at_radius;
  long gain_slope = 0;
};

EscapeBound escape_bound(const RatFamily& fam);

}  // namespace dynforge
