#include "dynforge/certify.hpp"

#include <algorithm>
#include <utility>

#include "dynforge/bifactor.hpp"
#include "dynforge/config.hpp"
#include "dynforge/errors.hpp"
#include "dynforge/fq_poly.hpp"

namespace dynforge {

namespace {

bool monic_z(const BiPoly& P) {
  const TPoly& l = P.coeffs().back();
  return l.deg() == 0 && l.lc().is_one();
}

// deterministic tie-break among rational roots: degree, then coefficients
// from the top
bool tpoly_less(const TPoly& x, const TPoly& y) {
  if (x.deg() != y.deg()) return x.deg() < y.deg();
  for (long i = x.deg(); i >= 0; --i)
    if (x.code(i) != y.code(i)) return x.code(i) < y.code(i);
  return false;
}

long section_deg(const TPoly& x) { return std::max(0L, x.deg()); }

}  // namespace

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Fail: return "FAIL";
    default: return "UNKNOWN";
  }
}

const CheckItem& CertReport::item(int index) const {
  for (const auto& it : items)
    if (it.index == index) return it;
  throw internal_error("certification report: no check " + std::to_string(index));
}

std::string CertReport::str() const {
  std::string out;
  for (const auto& it : items) {
    out += "(" + std::to_string(it.index) + ") " + it.name + ": " +
           to_string(it.status);
    if (!it.witness.empty()) out += ": " + it.witness;
    out += "\n";
  }
  out += "overall: " + to_string(overall) + "\n";
  return out;
}

Rational branch_radius(const RatFamily& fam, const PuiseuxSeries& alpha,
                       const Rational& R) {
  SeriesPoly A = series_poly_shift(to_series_poly(fam.a()), alpha);
  SeriesPoly B = series_poly_shift(to_series_poly(fam.b()), alpha);
  if (B[0].is_exact_zero())
    throw pole_at_center_error("branch radius: the center is a pole");
  if (!B[0].known_nonzero())
    throw precision_loss_error(
        "branch radius: denominator undetermined at the center");
  Rational v0 = B[0].valuation();
  bool any = false;
  Rational best(0);
  for (size_t i = 1; i < A.size(); ++i) {
    if (!A[i].known_nonzero()) continue;
    Rational cand = (R + A[i].valuation() - v0) / Rational(static_cast<long>(i));
    best = any ? rmin(best, cand) : cand;
    any = true;
  }
  if (!any)
    throw internal_error("branch radius: no known nonzero shifted coefficient");
  for (size_t i = 1; i < A.size(); ++i) {
    if (A[i].known_nonzero() || A[i].is_exact()) continue;
    // an undetermined coefficient could only shrink the radius further
    Rational bound = (R + A[i].prec() - v0) / Rational(static_cast<long>(i));
    if (!(best < bound))
      throw precision_loss_error(
          "branch radius: undetermined coefficient of y^" + std::to_string(i) +
          " could set the radius");
  }
  return best;
}

Rational nearest_pole_log_distance(const BiPoly& b, const PuiseuxSeries& alpha) {
  if (b.is_zero())
    throw internal_error("pole distance: zero denominator");
  SeriesPoly B = series_poly_shift(to_series_poly(b), alpha);
  if (B[0].is_exact_zero())
    throw pole_at_center_error("pole distance: the center is a pole");
  if (!B[0].known_nonzero())
    throw precision_loss_error(
        "pole distance: denominator undetermined at the center");
  if (B.size() == 1) return Rational::infinity();
  return newton_polygon(B).min_slope();
}

CertReport check_conditions(const RatFamily& fam) {
  CertReport rep;
  rep.items = {{1, "monic and coprime", CheckStatus::Unknown, ""},
               {2, "degree gap", CheckStatus::Unknown, ""},
               {3, "separable numerator", CheckStatus::Unknown, ""},
               {4, "positive outer radius", CheckStatus::Unknown, ""},
               {5, "denominator roots within the outer disk",
                CheckStatus::Unknown, ""},
               {6, "fixed point on the outer circle", CheckStatus::Unknown, ""},
               {7, "expansion disks clear of poles", CheckStatus::Unknown, ""},
               {8, "expansion disks pairwise separated", CheckStatus::Unknown,
                ""}};
  auto set = [&rep](int k, CheckStatus st, std::string w) {
    rep.items[k - 1].status = st;
    rep.items[k - 1].witness = std::move(w);
  };
  const BiPoly& a = fam.a();
  const BiPoly& b = fam.b();

  {
    bool ma = monic_z(a), mb = monic_z(b);
    BiPoly g = bi_gcd_z(a, b);
    bool cp = g.deg_z() == 0;
    if (ma && mb && cp)
      set(1, CheckStatus::Pass, "");
    else
      set(1, CheckStatus::Fail,
          !ma   ? "numerator is not monic in z"
          : !mb ? "denominator is not monic in z"
                : "common factor " + g.str());
  }

  set(2,
      a.deg_z() > b.deg_z() + 1 ? CheckStatus::Pass : CheckStatus::Fail,
      "deg a = " + std::to_string(a.deg_z()) +
          ", deg b = " + std::to_string(b.deg_z()));

  {
    BiPoly da = a.derivative_z();
    if (da.is_zero()) {
      set(3, CheckStatus::Fail, "the z-derivative of a vanishes identically");
    } else {
      BiPoly g = bi_gcd_z(a, da);
      if (g.deg_z() == 0)
        set(3, CheckStatus::Pass, "");
      else
        set(3, CheckStatus::Fail, "repeated factor " + g.str());
    }
  }

  Rational R(0);
  {
    NewtonPolygon np = newton_polygon(a);
    if (np.segments.empty()) {
      set(4, CheckStatus::Fail, "every root of a is at the origin");
    } else {
      R = np.max_slope();
      rep.outer_radius = R;
      set(4, R > Rational(0) ? CheckStatus::Pass : CheckStatus::Fail,
          "outer radius " + R.str());
    }
  }
  bool r_ok = rep.items[3].status == CheckStatus::Pass;

  if (!r_ok) {
    set(5, CheckStatus::Unknown, "needs a positive outer radius");
  } else if (b.deg_z() == 0) {
    set(5, CheckStatus::Pass, "constant denominator");
  } else {
    NewtonPolygon np = newton_polygon(b);
    if (np.segments.empty()) {
      set(5, CheckStatus::Pass, "denominator roots only at the origin");
    } else {
      Rational m = np.max_slope();
      set(5, R < m ? CheckStatus::Fail : CheckStatus::Pass,
          "outermost denominator root at log-radius " + m.str());
    }
  }

  if (!r_ok) {
    set(6, CheckStatus::Unknown, "needs a positive outer radius");
  } else {
    BiPoly fx = a - b.shift_z(1);
    bool found = false;
    if (!fx.is_zero())
      for (const auto& seg : newton_polygon(fx).segments)
        found = found || seg.slope == R;
    set(6, found ? CheckStatus::Pass : CheckStatus::Fail,
        found ? "fixed point at log-height " + R.str()
              : "no fixed point on the outer circle");
  }

  {
    int missing = 0;
    for (int k : {1, 3, 4})
      if (rep.items[k - 1].status != CheckStatus::Pass && !missing) missing = k;
    if (missing) {
      std::string w = "not evaluated: check " + std::to_string(missing) +
                      " did not pass";
      set(7, CheckStatus::Unknown, w);
      set(8, CheckStatus::Unknown, w);
    } else {
      long rel = default_precision(std::max(1L, a.deg_z()));
      int tries = options().precision_retries + 1;
      bool decided = false;
      std::string last = "no attempt ran";
      for (int attempt = 0; attempt < tries && !decided; ++attempt, rel *= 2) {
        try {
          auto roots = puiseux_roots(a, rel);
          std::vector<Rational> rho;
          for (const auto& al : roots) {
            if (!al.known_nonzero() && !al.is_exact_zero())
              throw precision_loss_error("unresolved root cluster");
            rho.push_back(branch_radius(fam, al, R));
          }
          std::string fail7, radii;
          for (size_t i = 0; i < roots.size(); ++i) {
            if (!radii.empty()) radii += ", ";
            radii += rho[i].str();
            Rational pi = nearest_pole_log_distance(b, roots[i]);
            if (fail7.empty() && !(rho[i] < pi))
              fail7 = "disk " + std::to_string(i + 1) + " of log-radius " +
                      rho[i].str() + " reaches a pole at log-distance " +
                      pi.str();
          }
          rep.branch_radii = rho;
          set(7, fail7.empty() ? CheckStatus::Pass : CheckStatus::Fail,
              fail7.empty() ? "disk log-radii " + radii : fail7);

          std::string fail8;
          for (size_t i = 0; i < roots.size() && fail8.empty(); ++i) {
            for (size_t j = i + 1; j < roots.size() && fail8.empty(); ++j) {
              PuiseuxSeries diff = roots[i] - roots[j];
              if (diff.is_exact_zero()) {
                fail8 = "roots " + std::to_string(i + 1) + " and " +
                        std::to_string(j + 1) + " coincide";
                break;
              }
              if (!diff.known_nonzero())
                throw precision_loss_error("root separation undetermined");
              Rational dist = -diff.valuation();
              if (!(rmax(rho[i], rho[j]) < dist))
                fail8 = "roots " + std::to_string(i + 1) + " and " +
                        std::to_string(j + 1) + " at log-distance " +
                        dist.str() + " with disk log-radii " + rho[i].str() +
                        " and " + rho[j].str();
            }
          }
          set(8, fail8.empty() ? CheckStatus::Pass : CheckStatus::Fail, fail8);
          rep.rel_prec_used = rel;
          decided = true;
        } catch (const wild_ramification_error& e) {
          set(7, CheckStatus::Unknown, e.what());
          set(8, CheckStatus::Unknown, e.what());
          decided = true;
        } catch (const pole_at_center_error& e) {
          set(7, CheckStatus::Fail, e.what());
          set(8, CheckStatus::Unknown, "not evaluated: check 7 hit a pole");
          decided = true;
        } catch (const precision_loss_error& e) {
          last = e.what();
        }
      }
      if (!decided) {
        std::string w = "undecided after precision retries: " + last;
        set(7, CheckStatus::Unknown, w);
        set(8, CheckStatus::Unknown, w);
      }
    }
  }

  bool any_fail = false, any_unknown = false;
  for (const auto& it : rep.items) {
    any_fail = any_fail || it.status == CheckStatus::Fail;
    any_unknown = any_unknown || it.status == CheckStatus::Unknown;
  }
  rep.overall = any_fail      ? CheckStatus::Fail
                : any_unknown ? CheckStatus::Unknown
                              : CheckStatus::Pass;
  return rep;
}

std::string DegreeInequalityReport::str() const {
  if (holds) return "inequality holds for every ordered pair";
  return "inequality violated at the pair (" + std::to_string(i) + ", " +
         std::to_string(j) + ")";
}

DegreeInequalityReport check_degree_inequality(const std::vector<TPoly>& alphas) {
  DegreeInequalityReport rep;
  int n = static_cast<int>(alphas.size());
  long dmax = 0;
  for (const auto& al : alphas) dmax = std::max(dmax, section_deg(al));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      bool degenerate = false;
      long sum = 0;
      TPoly dij = alphas[i] - alphas[j];
      degenerate = dij.is_zero();
      sum += dij.deg();
      for (int l = 0; l < n && !degenerate; ++l) {
        if (l == j) continue;
        TPoly d = alphas[l] - alphas[j];
        degenerate = d.is_zero();
        sum += d.deg();
      }
      if (degenerate || sum <= dmax) {
        rep.holds = false;
        rep.i = i + 1;
        rep.j = j + 1;
        return rep;
      }
    }
  }
  return rep;
}

std::string QuadraticNormalForm::str() const {
  std::string h;
  if (s)
    h = s->is_zero() ? "z^2" : "z*(z + " + s->str("t") + ")";
  else
    h = "z*(z + s), s quadratic over F_q(t)";
  if (isotrivial) h += " (isotrivial)";
  return h;
}

QuadraticNormalForm normalize_quadratic(const TPoly& a, const TPoly& b,
                                        const TPoly& c) {
  if (a.is_zero())
    throw internal_error("quadratic normal form: zero leading coefficient");
  FieldPtr F = a.field();
  TPoly ac = a * c;
  TPoly one = FqPoly::constant(Fq(*F, 1));
  QuadraticNormalForm out;
  // the shift u to a fixed point of the monic form z^2 + b z + ac
  out.fixed_equation = BiPoly(F, {ac, b - one, one});
  BiFactorization fac = bifactor(out.fixed_equation);
  for (const auto& fm : fac.factors) {
    if (fm.first.deg_z() != 1) continue;
    TPoly r = TPoly(F) - fm.first.coeff(0);
    if (!out.u || tpoly_less(r, *out.u)) out.u = r;
  }
  out.ext_degree = out.u ? 1 : 2;
  if (F->p() == 2)
    out.s = b;  // the doubled shift vanishes
  else if (out.u)
    out.s = *out.u + *out.u + b;
  if (out.s) {
    out.isotrivial = out.s->deg() <= 0;
  } else {
    // s = 2u + b satisfies s^2 - 2s + (2b - b^2 + 4ac) = 0; isotrivial
    // exactly when the constant coefficient does not involve t
    TPoly e0 = b + b - b * b + ac + ac + ac + ac;
    out.isotrivial = e0.deg() <= 0;
  }
  return out;
}

}  // namespace dynforge
