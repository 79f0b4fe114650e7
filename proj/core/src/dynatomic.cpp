#include "dynforge/dynatomic.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "dynforge/bifactor.hpp"
#include "dynforge/config.hpp"
#include "dynforge/errors.hpp"
#include "dynforge/fq_poly.hpp"
#include "dynforge/puiseux.hpp"

namespace dynforge {

namespace {

// smallest k with p^k = 1 mod e; needs gcd(p, e) = 1
long unit_order(long p, long e) {
  if (e <= 1) return 1;
  long r = p % e;
  if (std::gcd(r, e) != 1)
    throw internal_error("fiber: ramification shares a factor with the characteristic");
  long k = 1;
  for (long acc = r; acc != 1; acc = acc * p % e) ++k;
  return k;
}

// index of the unique listed branch the series agrees with
long match_branch(const std::vector<PuiseuxSeries>& branches,
                  const PuiseuxSeries& x) {
  long hit = -1;
  for (size_t j = 0; j < branches.size(); ++j) {
    if ((x - branches[j]).known_nonzero()) continue;
    if (hit >= 0)
      throw precision_loss_error(
          "fiber: two branches agree at the working precision");
    hit = static_cast<long>(j);
  }
  if (hit < 0)
    throw precision_loss_error("fiber: an orbit image matches no branch");
  return hit;
}

}  // namespace

DynatomicFactorReport factor_report(const BiPoly& H, int m, int n, int mult) {
  DynatomicFactorReport rep{H};
  rep.m = m;
  rep.n = n;
  rep.mult = mult;
  rep.y_section = H.deg_z() == 0 && H.hom_deg() >= 1;
  rep.ell = H.hom_deg() >= 0 ? H.hom_deg() : H.deg_z();
  rep.coeff_degs.reserve(static_cast<size_t>(rep.ell) + 1);
  for (long i = 0; i <= rep.ell; ++i)
    rep.coeff_degs.push_back(H.coeff(rep.ell - i).deg());
  TPoly lead = H.coeff(rep.ell);
  rep.H0_unit = !lead.is_zero() && lead.deg() == 0;
  return rep;
}

std::vector<DynatomicFactorReport> dynatomic_factors(const RatFamily& fam,
                                                     int m, int n) {
  if (m < 0 || n < 1)
    throw internal_error("dynatomic_factors: need m >= 0 and n >= 1");
  BiFactorization fac = bifactor(dynatomic_raw(fam, m, n));

  std::map<std::pair<int, int>, BiPoly> earlier;
  auto raw_at = [&](int mm, int nn) -> const BiPoly& {
    auto key = std::make_pair(mm, nn);
    auto it = earlier.find(key);
    if (it == earlier.end())
      it = earlier.emplace(key, dynatomic_raw(fam, mm, nn)).first;
    return it->second;
  };

  std::vector<DynatomicFactorReport> out;
  out.reserve(fac.factors.size());
  for (const auto& fe : fac.factors) {
    DynatomicFactorReport rep = factor_report(fe.first, m, n, fe.second);
    for (int mm = 0; mm <= m && !rep.repeat; ++mm) {
      for (int nn = 1; nn <= n; ++nn) {
        if (n % nn != 0 || (mm == m && nn == n)) continue;
        const BiPoly& r = raw_at(mm, nn);
        if (rep.y_section ? r.y_mult() >= 1 : bi_divides(rep.H, r)) {
          rep.repeat = true;
          break;
        }
      }
    }
    out.push_back(std::move(rep));
  }
  return out;
}

void fiber_at_infinity(DynatomicFactorReport& rep, long rel_prec) {
  rep.fiber_done = false;
  rep.fiber_note.clear();
  rep.places.clear();
  rep.rd_Z = 0;
  rep.ri_Z = 0;

  if (rep.y_section) {
    rep.places.push_back(InfinityPlace{1, 1, Rational(0)});
    rep.rd_Z = 1;
    rep.ri_Z = 1;
    rep.fiber_done = true;
    return;
  }
  if (!rep.H0_unit) {
    rep.fiber_note = "leading coefficient is not a unit, fiber not computed";
    return;
  }

  FieldPtr base = rep.H.field();
  std::vector<PuiseuxSeries> roots = puiseux_roots(rep.H.dehom(), rel_prec);

  // field large enough to hold every branch and the twist roots of unity
  long e_all = 1;
  long sE = base->s();
  for (const auto& r : roots) {
    e_all = std::lcm(e_all, r.ram());
    sE = std::lcm(sE, static_cast<long>(r.field()->s()));
  }
  if (e_all > 1) sE = std::lcm(sE, unit_order(base->p(), e_all));
  if (sE > 1024) throw size_limit_error("fiber: splitting field is too large");
  const Field& E = make_field(base->p(), static_cast<int>(sE));

  std::vector<PuiseuxSeries> branches;
  branches.reserve(roots.size());
  for (const auto& r : roots)
    branches.push_back(r.field() == &E ? r : r.lifted(E));

  // orbit closure under the coefficient Frobenius of the base field and,
  // on ramified branches, the twist t^(1/e) -> zeta_e t^(1/e)
  std::uint64_t q0 = base->q();
  std::vector<char> seen(branches.size(), 0);
  for (size_t start = 0; start < branches.size(); ++start) {
    if (seen[start]) continue;
    std::vector<long> orbit{static_cast<long>(start)};
    seen[start] = 1;
    for (size_t k = 0; k < orbit.size(); ++k) {
      const PuiseuxSeries& x = branches[static_cast<size_t>(orbit[k])];
      std::vector<PuiseuxSeries> images;
      images.push_back(x.coeff_power(q0));
      if (x.ram() > 1)
        images.push_back(x.twisted(Fq(E, E.unity_root(x.ram()))));
      for (const auto& img : images) {
        long j = match_branch(branches, img);
        if (!seen[static_cast<size_t>(j)]) {
          seen[static_cast<size_t>(j)] = 1;
          orbit.push_back(j);
        }
      }
    }

    long e = branches[static_cast<size_t>(orbit.front())].ram();
    for (long idx : orbit)
      if (branches[static_cast<size_t>(idx)].ram() != e)
        throw internal_error("fiber: an orbit mixes ramification indices");
    if (static_cast<long>(orbit.size()) % e != 0)
      throw internal_error("fiber: orbit size not divisible by ramification");
    const PuiseuxSeries& head = branches[static_cast<size_t>(orbit.front())];
    Rational lead =
        head.known_nonzero() ? -head.valuation() : Rational(0);
    rep.places.push_back(
        InfinityPlace{e, static_cast<long>(orbit.size()) / e, lead});
  }

  long total = 0;
  for (const auto& pl : rep.places) {
    total += pl.e * pl.f;
    rep.rd_Z = std::max(rep.rd_Z, pl.f);
    rep.ri_Z = std::max(rep.ri_Z, pl.e);
  }
  if (total != rep.ell)
    throw internal_error("fiber: place degrees do not sum to the factor degree");
  rep.fiber_done = true;
}

void fiber_at_infinity(DynatomicFactorReport& rep) {
  long rel = default_precision(std::max<long>(1, rep.ell));
  int tries = options().precision_retries + 1;
  for (int attempt = 0;; ++attempt) {
    try {
      fiber_at_infinity(rep, rel);
      return;
    } catch (const precision_loss_error&) {
      if (attempt + 1 >= tries) throw;
      rel *= 2;
    }
  }
}

bool coefficient_bound_check(const DynatomicFactorReport& rep, long N) {
  for (size_t i = 0; i < rep.coeff_degs.size(); ++i)
    if (rep.coeff_degs[i] > static_cast<long>(i) * N) return false;
  return true;
}

Rational gonality_lower_bound(long ell, long rd, long ri, std::uint64_t q) {
  if (ell < 1 || rd < 1 || ri < 1)
    throw internal_error("gonality bound: degrees must be positive");
  std::int64_t qrd = 1;
  for (long i = 0; i < rd; ++i) {
    if (qrd > (std::int64_t(1) << 40))
      throw size_limit_error("gonality bound: q^rd is too large");
    qrd *= static_cast<std::int64_t>(q);
  }
  return Rational(ell, ri * (qrd + 1));
}

Rational gonality_lower_bound(const DynatomicFactorReport& rep, long rd,
                              long ri) {
  return gonality_lower_bound(rep.ell, rd, ri, rep.H.field()->q());
}

PointCount count_points(const DynatomicFactorReport& rep, int s) {
  if (s < 1)
    throw internal_error("count_points: extension degree must be positive");
  if (rep.ell < 1)
    throw internal_error("count_points: the factor is constant in X and Y");
  FieldPtr base = rep.H.field();
  const Field& E = make_field(base->p(), base->s() * s);

  BiPoly h = rep.H.dehom();
  BiPoly ht = h.derivative_t();
  TPoly lead = rep.H.coeff(rep.ell);
  bool lead_zero = lead.is_zero();  // Y section: (1 : 0) lies on every fiber
  FqPoly leadE = poly_lift(lead, E);

  PointCount pc;
  for (std::uint64_t code = 0; code < E.q(); ++code) {
    Fq tau(E, static_cast<std::uint32_t>(code));
    FqPoly hz = h.specialize(tau);
    if (hz.is_zero())
      throw internal_error("count_points: factor vanishes on a vertical line");
    FqPoly dz = hz.derivative();
    FqPoly dt = ht.specialize(tau);
    for (const auto& rm : poly_roots(hz)) {
      ++pc.affine;
      if (dz.eval(rm.first).is_zero() && dt.eval(rm.first).is_zero())
        ++pc.singular;
    }
    if (lead_zero || leadE.eval(tau).is_zero()) ++pc.affine;
  }
  if (rep.fiber_done)
    for (const auto& pl : rep.places)
      if (s % pl.f == 0) pc.at_infinity += pl.f;
  return pc;
}

std::vector<DynatomicFactorReport> growth_table(const RatFamily& fam,
                                                int max_total,
                                                const FamilyConstants& fc) {
  if (max_total < 1)
    throw internal_error("growth_table: max_total must be positive");
  std::uint64_t q = fam.field()->q();

  std::vector<DynatomicFactorReport> out;
  for (int total = 1; total <= max_total; ++total) {
    for (int n = 1; n <= total; ++n) {
      for (DynatomicFactorReport& rep :
           dynatomic_factors(fam, total - n, n)) {
        fiber_at_infinity(rep);
        rep.gonality_lb = gonality_lower_bound(rep, fc.residue_lcm, fc.ram_lcm);
        std::vector<long> exts{1};
        if (fc.residue_lcm > 1) exts.push_back(fc.residue_lcm);
        for (long s : exts) {
          std::uint64_t size = 1;
          bool small = true;
          for (long i = 0; i < s && small; ++i) {
            size *= q;
            if (size > 256) small = false;
          }
          if (small) rep.counts[s] = count_points(rep, static_cast<int>(s));
        }
        out.push_back(std::move(rep));
      }
    }
  }
  return out;
}

}  // namespace dynforge
