#pragma once

#include <utility>
#include <vector>

#include "dynforge/bipoly.hpp"

namespace dynforge {

struct BiFactorization {
  Fq unit;
  // irreducible over F_q[t][z], primitive in t, scalar-normalized so the
  // leading coefficient of the z-leading TPoly is 1; sorted canonically.
  // Declared Y factors of the input appear as the factor Y itself.
  std::vector<std::pair<BiPoly, int>> factors;
};

// Complete factorization in F_q[t][z] (plus the declared Y-power, when the
// input carries a homogeneous degree). Specializes t at a degree- and
// squarefreeness-preserving point, factors with ff_core, Hensel-lifts the
// local factors (t - t0)-adically, then recombines subsets by exact division.
BiFactorization bifactor(const BiPoly& P);

// For H irreducible over F_q: does H stay irreducible over every extension?
// Returns (answer, number of geometric components); the components are
// conjugate, so the count is the degree of their field of definition.
std::pair<bool, int> absolutely_irreducible(const BiPoly& H);

}  // namespace dynforge
