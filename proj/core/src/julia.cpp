#include "dynforge/julia.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

#include "dynforge/certify.hpp"
#include "dynforge/config.hpp"
#include "dynforge/errors.hpp"

namespace dynforge {

namespace {

std::string word_str(const std::vector<int>& word) {
  std::string s = "[";
  for (size_t k = 0; k < word.size(); ++k) {
    if (k) s += ' ';
    s += std::to_string(word[k]);
  }
  return s + "]";
}

// a(z) - w * b(z) as a series polynomial
SeriesPoly value_poly(const SeriesPoly& sa, const SeriesPoly& sb,
                      const PuiseuxSeries& w) {
  SeriesPoly P = sa;
  if (P.size() < sb.size()) P.resize(sb.size(), PuiseuxSeries(w.field()));
  for (size_t j = 0; j < sb.size(); ++j) P[j] = P[j] - w * sb[j];
  return P;
}

// One inverse-branch solve: the root of a - w*b nearest to center, at
// absolute precision target. The center is either a known-nonzero series or
// the exact zero (roots of the numerator are never undetermined).
PuiseuxSeries pull_once(const SeriesPoly& sa, const SeriesPoly& sb,
                        const PuiseuxSeries& center, const PuiseuxSeries& w,
                        const Rational& target) {
  SeriesPoly P = value_poly(sa, sb, w);
  if (center.known_nonzero()) return series_poly_newton(P, center, target);
  if (P[0].is_exact_zero()) return center;
  if (!P[1].known_nonzero())
    throw precision_loss_error(
        "branch inverse: linear term undetermined at the center");
  Rational v1 = P[1].valuation();
  if (!P[0].known_nonzero())
    return PuiseuxSeries::zero_to(center.field(), P[0].prec() - v1);
  // one explicit Newton step off the zero center gives a usable seed
  PuiseuxSeries x1 =
      -(P[0] * P[1].inv(rmax(target, -v1) + Rational(4)));
  return series_poly_newton(P, x1, target);
}

// Fixed point of the composed inverse branches along the word, iterated from
// the first disk's center until successive sweeps agree through target.
PuiseuxSeries solve_word(const BranchSystem& bs, const SeriesPoly& sa,
                         const SeriesPoly& sb, const std::vector<int>& word,
                         const Rational& target) {
  PuiseuxSeries x = bs.centers[static_cast<size_t>(word.front() - 1)];
  long cap = options().solve_iteration_factor * (target.ceil() + 2) *
             std::max(1L, bs.fam.d());
  for (long it = 0; it < cap; ++it) {
    PuiseuxSeries y = x;
    for (size_t j = word.size(); j-- > 0;)
      y = pull_once(sa, sb, bs.centers[static_cast<size_t>(word[j] - 1)], y,
                    target);
    PuiseuxSeries diff = y - x;
    if (!diff.known_nonzero()) {
      if (diff.is_exact() || !(diff.prec() < target)) return y;
    }
    x = y;
  }
  throw precision_loss_error("itinerary solve did not settle for word " +
                             word_str(word));
}

// d^len words over {1..d} in lexicographic order
bool next_word(std::vector<int>& word, long d) {
  for (size_t j = word.size(); j-- > 0;) {
    if (word[j] < d) {
      ++word[j];
      return true;
    }
    word[j] = 1;
  }
  return false;
}

long checked_count(long d, int len) {
  long count = 1;
  for (int k = 0; k < len; ++k) {
    count *= d;
    if (count > options().degree_cap)
      throw size_limit_error("itinerary enumeration exceeds the degree cap");
  }
  return count;
}

PuiseuxSeries at_output_precision(const PuiseuxSeries& pt, long rel_prec) {
  return pt.is_exact() ? pt : pt.truncated(Rational(rel_prec));
}

// max over nonzero coefficients of (i*rho - v(c_i)); the log-norm of P on the
// circle of log-radius rho, for rho at or beyond every root of P
Rational tropical_value(const BiPoly& P, const Rational& rho) {
  bool any = false;
  Rational best(0);
  for (long i = 0; i <= P.deg_z(); ++i) {
    const TPoly& c = P.coeff(i);
    if (c.is_zero()) continue;
    Rational term = Rational(i) * rho + Rational(c.deg());
    if (!any || best < term) best = term;
    any = true;
  }
  if (!any) throw internal_error("tropical_value: zero polynomial");
  return best;
}

struct ConstParts {
  long ri = 1;
  long rd = 1;
  long height = 0;
  bool operator==(const ConstParts& o) const {
    return ri == o.ri && rd == o.rd && height == o.height;
  }
};

void absorb_series(ConstParts& parts, const PuiseuxSeries& x, long base_s) {
  parts.ri = std::lcm(parts.ri, x.ram());
  parts.rd = std::lcm(parts.rd, static_cast<long>(x.field()->s()) / base_s);
}

ConstParts collect_constants(const RatFamily& fam, int depth,
                             long rel_prec) {
  if (rel_prec <= 0) rel_prec = default_precision(fam.d());
  long base_s = fam.field()->s();
  Rational R = newton_polygon(to_series_poly(fam.a())).max_slope();
  Rational hmax = R;
  ConstParts parts;
  for (const PuiseuxSeries& root : puiseux_roots(fam.a(), rel_prec)) {
    absorb_series(parts, root, base_s);
    parts.ri = std::lcm(parts.ri, branch_radius(fam, root, R).den());
  }
  for (const PuiseuxSeries& pt :
       backward_orbit_of_infinity(fam, depth, rel_prec)) {
    absorb_series(parts, pt, base_s);
    if (pt.known_nonzero()) hmax = rmax(hmax, -pt.valuation());
  }
  parts.height = hmax.ceil();
  return parts;
}

}  // namespace

BranchSystem branch_system(const RatFamily& fam, long rel_prec) {
  if (rel_prec <= 0)
    throw internal_error("branch_system: nonpositive precision");
  BranchSystem bs{fam, Rational(0), {}, {}, rel_prec};
  bs.outer_radius = newton_polygon(to_series_poly(fam.a())).max_slope();
  bs.centers = puiseux_roots(fam.a(), rel_prec);
  bs.radii.reserve(bs.centers.size());
  for (const PuiseuxSeries& c : bs.centers)
    bs.radii.push_back(branch_radius(fam, c, bs.outer_radius));
  return bs;
}

BranchSystem branch_system(const RatFamily& fam) {
  return branch_system(fam, default_precision(fam.d()));
}

PuiseuxSeries branch_preimage(const BranchSystem& bs, int i,
                              const PuiseuxSeries& w) {
  if (i < 1 || static_cast<size_t>(i) > bs.centers.size())
    throw internal_error("branch_preimage: disk index out of range");
  return pull_once(to_series_poly(bs.fam.a()), to_series_poly(bs.fam.b()),
                   bs.centers[static_cast<size_t>(i - 1)], w,
                   Rational(bs.rel_prec));
}

std::vector<LabeledPoint> periodic_points(const BranchSystem& bs, int n) {
  return preperiodic_points(bs, 0, n);
}

std::vector<LabeledPoint> preperiodic_points(const BranchSystem& bs, int m,
                                             int n) {
  if (m < 0 || n < 1)
    throw internal_error("preperiodic_points: need m >= 0 and n >= 1");
  long count = checked_count(bs.fam.d(), m + n);
  SeriesPoly sa = to_series_poly(bs.fam.a());
  SeriesPoly sb = to_series_poly(bs.fam.b());
  std::vector<LabeledPoint> out;
  out.reserve(static_cast<size_t>(count));
  std::vector<int> word(static_cast<size_t>(m + n), 1);
  do {
    std::vector<int> cycle(word.begin() + m, word.end());
    long rel = bs.rel_prec;
    int tries = options().precision_retries + 1;
    for (int attempt = 0;; ++attempt) {
      try {
        PuiseuxSeries pt = solve_word(bs, sa, sb, cycle, Rational(rel));
        for (size_t j = static_cast<size_t>(m); j-- > 0;)
          pt = pull_once(sa, sb, bs.centers[static_cast<size_t>(word[j] - 1)],
                         pt, Rational(rel));
        out.push_back({at_output_precision(pt, bs.rel_prec), word});
        break;
      } catch (const precision_loss_error&) {
        if (attempt + 1 >= tries) throw;
        rel *= 2;
      }
    }
  } while (next_word(word, bs.fam.d()));
  return out;
}

PuiseuxSeries family_eval(const RatFamily& fam, const PuiseuxSeries& x) {
  PuiseuxSeries va = series_poly_eval(to_series_poly(fam.a()), x);
  PuiseuxSeries vb = series_poly_eval(to_series_poly(fam.b()), x);
  if (vb.is_exact_zero())
    throw pole_at_center_error("family value at a pole");
  if (!vb.known_nonzero())
    throw precision_loss_error("family value: denominator undetermined");
  if (va.is_exact_zero()) return va;
  Rational alpha = va.known_nonzero() ? va.valuation() : va.prec();
  Rational beta = vb.valuation();
  Rational pres = Rational::infinity();
  if (!va.is_exact()) pres = rmin(pres, va.prec() - beta);
  if (!vb.is_exact()) pres = rmin(pres, vb.prec() - beta - beta + alpha);
  if (pres.is_infinity()) {
    if (vb.term_list().size() == 1) return va * vb.inv(Rational::infinity());
    pres = alpha - beta + Rational(default_precision(fam.d()));
  }
  return va * vb.inv(pres - alpha);
}

int disk_index(const BranchSystem& bs, const PuiseuxSeries& x) {
  for (size_t i = 0; i < bs.centers.size(); ++i) {
    PuiseuxSeries diff = x - bs.centers[i];
    if (!diff.known_nonzero() || !(bs.radii[i] < -diff.valuation()))
      return static_cast<int>(i) + 1;
  }
  return 0;
}

std::vector<PuiseuxSeries> backward_orbit_of_infinity(const RatFamily& fam,
                                                      int depth,
                                                      long rel_prec) {
  if (depth < 0)
    throw internal_error("backward_orbit_of_infinity: negative depth");
  std::vector<PuiseuxSeries> out;
  for (int n = 1; n <= depth; ++n) {
    BiPoly bn = iterate(fam, n).second.dehom();
    if (bn.deg_z() == 0) continue;
    for (PuiseuxSeries& r : puiseux_roots(bn, rel_prec))
      out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(), ps_less);
  out.erase(std::unique(out.begin(), out.end(),
                        [](const PuiseuxSeries& a, const PuiseuxSeries& b) {
                          return !(a - b).known_nonzero();
                        }),
            out.end());
  return out;
}

std::vector<PuiseuxSeries> backward_orbit_of_infinity(const RatFamily& fam,
                                                      int depth) {
  return backward_orbit_of_infinity(fam, depth, default_precision(fam.d()));
}

FamilyConstants family_constants(const RatFamily& fam, int depth,
                                 long rel_prec) {
  ConstParts now = collect_constants(fam, depth, rel_prec);
  FamilyConstants fc;
  fc.ram_lcm = now.ri;
  fc.residue_lcm = now.rd;
  fc.height_bound = now.height;
  fc.stabilized =
      depth > 0 && collect_constants(fam, depth - 1, rel_prec) == now;
  return fc;
}

FamilyConstants family_constants(const RatFamily& fam, int depth) {
  return family_constants(fam, depth, 0);
}

EscapeBound escape_bound(const RatFamily& fam) {
  Rational R = newton_polygon(to_series_poly(fam.a())).max_slope();
  EscapeBound eb;
  eb.gain_at_radius =
      tropical_value(fam.a(), R) - tropical_value(fam.b(), R) - R;
  eb.gain_slope = fam.a().deg_z() - fam.b().deg_z() - 1;
  return eb;
}

}  // namespace dynforge
