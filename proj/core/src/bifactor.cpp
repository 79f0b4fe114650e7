#include "dynforge/bifactor.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "dynforge/config.hpp"
#include "dynforge/errors.hpp"
#include "dynforge/fq_poly.hpp"

namespace dynforge {

namespace {

// Arithmetic over E[tau]/(tau^k). Series are FqPoly in tau over E, kept
// truncated below degree k; z-polynomials over the series ring are coefficient
// vectors with no trailing zero series.
using Ser = FqPoly;
using LPoly = std::vector<Ser>;

struct LocalRing {
  const Field* E;
  long k;

  Ser strunc(const Ser& a) const {
    if (a.deg() < k) return a;
    std::vector<std::uint32_t> c(a.codes().begin(), a.codes().begin() + k);
    return Ser(E, std::move(c));
  }
  Ser smul(const Ser& a, const Ser& b) const { return strunc(a * b); }
  Ser sone() const { return Ser::constant(Fq(*E, 1)); }

  // Newton iteration; a(0) must be a unit.
  Ser sinv(const Ser& a) const {
    if (a.is_zero() || a.coeff(0).is_zero())
      throw internal_error("series inverse of a non-unit");
    Ser v = Ser::constant(a.coeff(0).inv());
    Ser two = Ser::constant(Fq(*E, 1) + Fq(*E, 1));
    for (long m = 1; m < k; m *= 2) {
      LocalRing r{E, std::min(2 * m, k)};
      v = r.strunc(v * (two - r.strunc(a * v)));
    }
    return v;
  }

  static void trim(LPoly& f) {
    while (!f.empty() && f.back().is_zero()) f.pop_back();
  }
  LPoly trunc(const LPoly& f) const {
    LPoly r;
    r.reserve(f.size());
    for (const Ser& s : f) r.push_back(strunc(s));
    trim(r);
    return r;
  }
  LPoly one() const { return {sone()}; }
  LPoly from_poly(const FqPoly& g) const {
    LPoly r;
    for (long i = 0; i <= g.deg(); ++i) r.push_back(Ser::constant(g.coeff(i)));
    trim(r);
    return r;
  }
  LPoly add(const LPoly& f, const LPoly& g) const {
    LPoly r(std::max(f.size(), g.size()), Ser(E));
    for (size_t i = 0; i < r.size(); ++i) {
      Ser a = i < f.size() ? f[i] : Ser(E);
      Ser b = i < g.size() ? g[i] : Ser(E);
      r[i] = a + b;
    }
    trim(r);
    return r;
  }
  LPoly sub(const LPoly& f, const LPoly& g) const {
    LPoly r(std::max(f.size(), g.size()), Ser(E));
    for (size_t i = 0; i < r.size(); ++i) {
      Ser a = i < f.size() ? f[i] : Ser(E);
      Ser b = i < g.size() ? g[i] : Ser(E);
      r[i] = a - b;
    }
    trim(r);
    return r;
  }
  LPoly mul(const LPoly& f, const LPoly& g) const {
    if (f.empty() || g.empty()) return {};
    LPoly r(f.size() + g.size() - 1, Ser(E));
    for (size_t i = 0; i < f.size(); ++i) {
      if (f[i].is_zero()) continue;
      for (size_t j = 0; j < g.size(); ++j) {
        if (g[j].is_zero()) continue;
        r[i + j] = r[i + j] + strunc(f[i] * g[j]);
      }
    }
    for (Ser& s : r) s = strunc(s);
    trim(r);
    return r;
  }
  LPoly scale(const LPoly& f, const Ser& s) const {
    LPoly r;
    r.reserve(f.size());
    for (const Ser& c : f) r.push_back(smul(c, s));
    trim(r);
    return r;
  }
  // g must be monic in z.
  std::pair<LPoly, LPoly> divrem(const LPoly& f, const LPoly& g) const {
    if (g.empty() || !(g.back() == sone()))
      throw internal_error("local division requires a monic divisor");
    LPoly r = trunc(f);
    long dg = static_cast<long>(g.size()) - 1;
    if (static_cast<long>(r.size()) - 1 < dg) return {{}, r};
    LPoly q(r.size() - dg, Ser(E));
    while (static_cast<long>(r.size()) - 1 >= dg && !r.empty()) {
      long off = static_cast<long>(r.size()) - 1 - dg;
      Ser lead = r.back();
      q[off] = q[off] + lead;
      for (long i = 0; i <= dg; ++i)
        r[off + i] = strunc(r[off + i] - lead * g[i]);
      trim(r);
      if (static_cast<long>(r.size()) - 1 >= dg + off) break;  // no progress
    }
    trim(q);
    return {q, r};
  }
};

// Quadratic lifting of f = g*h from (g, h, sigma, beta) correct mod tau with
// sigma*g + beta*h = 1; on return g*h = f mod tau^k with g, h monic. The
// degree bounds on the correction terms are automatic: h stays monic, so any
// spurious leading coefficient would surface in the product.
void hensel_pair(const LocalRing& R, const LPoly& f, LPoly& g, LPoly& h,
                 LPoly& sigma, LPoly& beta) {
  long m = 1;
  while (m < R.k) {
    long m2 = std::min(2 * m, R.k);
    LocalRing R2{R.E, m2};
    LPoly e = R2.sub(R2.trunc(f), R2.mul(g, h));
    auto [q, r] = R2.divrem(R2.mul(sigma, e), h);
    g = R2.add(R2.trunc(g), R2.add(R2.mul(beta, e), R2.mul(q, g)));
    h = R2.add(R2.trunc(h), r);
    if (m2 < R.k) {
      LPoly b = R2.sub(R2.add(R2.mul(sigma, g), R2.mul(beta, h)), R2.one());
      auto [c, d] = R2.divrem(R2.mul(sigma, b), h);
      sigma = R2.sub(R2.trunc(sigma), d);
      beta = R2.sub(R2.trunc(beta), R2.add(R2.mul(beta, b), R2.mul(c, g)));
    }
    m = m2;
  }
}

// Splits f (monic mod tau^k, congruent to the product of gs[lo..hi) mod tau)
// into one lifted local factor per gs entry, by halving.
void lift_tree(const LocalRing& R, const LPoly& f, const std::vector<FqPoly>& gs,
               size_t lo, size_t hi, std::vector<LPoly>& out) {
  if (hi - lo == 1) {
    out[lo] = f;
    return;
  }
  size_t mid = lo + (hi - lo) / 2;
  FqPoly g0 = FqPoly::constant(Fq(*R.E, 1));
  for (size_t i = lo; i < mid; ++i) g0 = g0 * gs[i];
  FqPoly h0 = FqPoly::constant(Fq(*R.E, 1));
  for (size_t i = mid; i < hi; ++i) h0 = h0 * gs[i];
  XgcdResult xg = poly_xgcd(g0, h0);
  if (xg.g.deg() != 0)
    throw internal_error("local factors are not coprime");
  Fq scale = xg.g.coeff(0).inv();
  FqPoly sigma0 = poly_rem(xg.u * FqPoly::constant(scale), h0);
  FqPoly beta0 =
      poly_div(FqPoly::constant(Fq(*R.E, 1)) - sigma0 * g0, h0);
  LPoly g = R.from_poly(g0), h = R.from_poly(h0);
  LPoly sigma = R.from_poly(sigma0), beta = R.from_poly(beta0);
  hensel_pair(R, f, g, h, sigma, beta);
  lift_tree(R, g, gs, lo, mid, out);
  lift_tree(R, h, gs, mid, hi, out);
}

BiPoly from_zpoly(const FqPoly& g) {
  std::vector<TPoly> c;
  for (long i = 0; i <= g.deg(); ++i)
    c.push_back(TPoly::constant(g.coeff(i)));
  return BiPoly(g.field(), std::move(c));
}

// next strictly increasing index vector into [0, n)
bool next_combination(std::vector<size_t>& idx, size_t n) {
  size_t s = idx.size();
  for (size_t i = s; i-- > 0;) {
    if (idx[i] + (s - i) < n) {
      ++idx[i];
      for (size_t j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// S primitive, leading coefficient normalized, squarefree and separable in z,
// deg_z >= 1. Returns the irreducible factors, each once; their product is S.
std::vector<BiPoly> factor_separable(const BiPoly& S) {
  const Field& F = *S.field();
  long n = S.deg_z();
  if (n == 1) return {S};
  if (S.deg_t() == 0) {
    FqPoly zp = S.specialize(Fq(F, 0));
    auto fac = poly_factor(zp);
    std::vector<BiPoly> out;
    out.reserve(fac.factors.size());
    for (const auto& fe : fac.factors) out.push_back(from_zpoly(fe.first));
    return out;
  }

  // A good specialization keeps deg_z and squarefreeness. Base field points
  // first, then elements of each extension degree in code order; of the first
  // few hits, the one splitting into the fewest local factors wins. Bad
  // points are roots of the leading coefficient or of the z-discriminant,
  // fewer than 2 n deg_t + 1 in all, so the search stops at the first
  // extension larger than that.
  struct Cand {
    const Field* E;
    Fq tau;
    FqFactorization fac;
  };
  std::vector<Cand> cands;
  const std::uint64_t bad_bound =
      static_cast<std::uint64_t>(2 * n * S.deg_t()) + 1;
  std::uint64_t searched = 0;
  for (int m = 1; cands.empty() && searched <= bad_bound; ++m) {
    const Field* E = nullptr;
    try {
      E = &extension_field(F, m);
    } catch (const size_limit_error&) {
      break;  // extension exceeds the field size cap; give up the search
    }
    searched = E->q();
    for (std::uint32_t c = 0; c < static_cast<std::uint32_t>(E->q()); ++c) {
      Fq tau(*E, c);
      if (m > 1 && min_subfield_degree(tau, F) < m) continue;
      FqPoly sp = S.specialize(tau);
      if (sp.deg() != n || !poly_is_squarefree(sp)) continue;
      Cand cand{E, tau, poly_factor(sp)};
      if (cand.fac.factors.size() == 1) return {S};
      cands.push_back(std::move(cand));
      if (cands.size() == 4) break;
    }
  }
  if (cands.empty())
    throw no_good_specialization_error(
        "no degree- and squarefreeness-preserving specialization for " +
        S.str());
  size_t best = 0;
  for (size_t i = 1; i < cands.size(); ++i)
    if (cands[i].fac.factors.size() < cands[best].fac.factors.size()) best = i;
  const Field& E = *cands[best].E;
  const Fq tau = cands[best].tau;

  std::vector<FqPoly> gs;
  gs.reserve(cands[best].fac.factors.size());
  for (const auto& fe : cands[best].fac.factors) gs.push_back(fe.first);
  if (static_cast<long>(gs.size()) > options().recombination_pool_cap)
    throw size_limit_error("local factor pool exceeds the recombination cap");

  const long k = S.deg_t() + 1;
  LocalRing R{&E, k};
  const Ser shift_in(&E, {tau.code(), 1});  // t = tau + new local variable
  const Ser shift_out(&E, {(-tau).code(), 1});
  auto to_local = [&](const BiPoly& W) {
    LPoly f;
    for (long i = 0; i <= W.deg_z(); ++i)
      f.push_back(R.strunc(poly_lift(W.coeff(i), E).compose(shift_in)));
    LocalRing::trim(f);
    return f;
  };

  LPoly fS = to_local(S);
  LPoly fmonic = R.scale(fS, R.sinv(fS.back()));
  fmonic.back() = R.sone();
  std::vector<LPoly> lifted(gs.size());
  lift_tree(R, fmonic, gs, 0, gs.size(), lifted);

  // Zassenhaus recombination: smallest subsets first; a candidate is accepted
  // when its recentered, projected primitive part divides what is left.
  std::vector<BiPoly> out;
  BiPoly S_cur = S;
  std::vector<size_t> avail(gs.size());
  std::iota(avail.begin(), avail.end(), size_t{0});
  Ser lc_cur = R.strunc(
      poly_lift(S_cur.coeff(S_cur.deg_z()), E).compose(shift_in));

  size_t sz = 1;
  while (2 * sz <= avail.size()) {
    bool accepted = false;
    std::vector<size_t> idx(sz);
    std::iota(idx.begin(), idx.end(), size_t{0});
    do {
      LPoly prod = {lc_cur};
      for (size_t i : idx) prod = R.mul(prod, lifted[avail[i]]);
      std::vector<TPoly> zc;
      zc.reserve(prod.size());
      bool ok = true;
      for (const Ser& s : prod) {
        auto down = poly_project(s.compose(shift_out), F);
        if (!down) {
          ok = false;
          break;
        }
        zc.push_back(std::move(*down));
      }
      if (!ok) continue;
      BiPoly cand =
          BiPoly(&F, std::move(zc)).primitive_t().unit_normalized().first;
      if (cand.deg_z() == 0 || !bi_divides(cand, S_cur)) continue;
      out.push_back(cand);
      S_cur = bi_div_exact(S_cur, cand);
      std::vector<size_t> rest;
      for (size_t i = 0, j = 0; i < avail.size(); ++i) {
        if (j < idx.size() && idx[j] == i) {
          ++j;
          continue;
        }
        rest.push_back(avail[i]);
      }
      avail = std::move(rest);
      lc_cur = R.strunc(
          poly_lift(S_cur.coeff(S_cur.deg_z()), E).compose(shift_in));
      accepted = true;
      break;
    } while (next_combination(idx, avail.size()));
    if (!accepted) ++sz;
  }
  if (S_cur.deg_z() > 0) out.push_back(S_cur);
  return out;
}

bool bipoly_less(const BiPoly& a, const BiPoly& b) {
  if (a.deg_z() != b.deg_z()) return a.deg_z() < b.deg_z();
  if (a.deg_t() != b.deg_t()) return a.deg_t() < b.deg_t();
  for (long i = a.deg_z(); i >= 0; --i) {
    TPoly ca = a.coeff(i), cb = b.coeff(i);
    if (ca.codes() != cb.codes()) return ca.codes() < cb.codes();
  }
  return false;
}

}  // namespace

BiFactorization bifactor(const BiPoly& P) {
  if (P.is_zero()) throw internal_error("factorization of the zero polynomial");
  const Field& F = *P.field();
  const bool hom = P.hom_deg() >= 0;
  Fq unit(F, 1);
  std::vector<std::pair<BiPoly, int>> raw;

  if (P.y_mult() > 0) raw.emplace_back(BiPoly::one_y(&F), P.y_mult());
  BiPoly body = P.dehom();
  long oz = body.ord_z();
  if (oz > 0) {
    body = body.shift_z(-oz);
    BiPoly x = BiPoly::z(&F);
    if (!hom) x = x.dehom();
    raw.emplace_back(std::move(x), static_cast<int>(oz));
  }

  auto dec = bi_squarefree(body);
  unit = unit * dec.unit;
  if (dec.content.deg() > 0) {
    auto cf = poly_factor(dec.content);
    unit = unit * cf.unit;
    for (const auto& fe : cf.factors)
      raw.emplace_back(BiPoly::from_tpoly(fe.first), fe.second);
  }

  for (const auto& part : dec.parts) {
    if (part.inseparable) {
      long p = F.p();
      BiPoly under = part.part.unsubstitute_z_pow(p);
      BiFactorization sub = bifactor(under);
      unit = unit * sub.unit;
      for (const auto& fe : sub.factors)
        raw.emplace_back(fe.first.dehom().substitute_z_pow(p),
                         fe.second * part.exponent);
    } else {
      for (BiPoly& f : factor_separable(part.part))
        raw.emplace_back(std::move(f), part.exponent);
    }
  }

  if (hom)
    for (auto& fe : raw)
      if (fe.first.hom_deg() < 0) fe.first.set_hom_deg(fe.first.deg_z());

  // merge duplicates, then order canonically
  std::vector<std::pair<BiPoly, int>> merged;
  for (auto& fe : raw) {
    bool found = false;
    for (auto& me : merged)
      if (me.first == fe.first) {
        me.second += fe.second;
        found = true;
        break;
      }
    if (!found) merged.push_back(std::move(fe));
  }
  std::sort(merged.begin(), merged.end(),
            [](const auto& a, const auto& b) {
              return bipoly_less(a.first, b.first);
            });
  return {unit, std::move(merged)};
}

std::pair<bool, int> absolutely_irreducible(const BiPoly& H) {
  if (H.is_zero())
    throw internal_error("absolute irreducibility of the zero polynomial");
  const Field& F = *H.field();
  BiPoly C = H.dehom();
  if (C.deg_z() == 0) {
    TPoly c = C.coeff(0);
    if (c.deg() <= 0) return {true, 1};  // Y or a unit
    const Field& E = extension_field(F, static_cast<int>(c.deg()));
    auto fac = poly_factor(poly_lift(c, E));
    int count = 0;
    for (const auto& fe : fac.factors) count += fe.second;
    return {count == 1, count};
  }
  if (C.deg_z() == 1) return {true, 1};

  // The geometric components are conjugate and their count divides deg_z, so
  // one refactorization over the full extension reveals all of them.
  const Field& E = extension_field(F, static_cast<int>(C.deg_z()));
  std::vector<TPoly> lifted;
  lifted.reserve(C.deg_z() + 1);
  for (long i = 0; i <= C.deg_z(); ++i)
    lifted.push_back(poly_lift(C.coeff(i), E));
  BiFactorization fac = bifactor(BiPoly(&E, std::move(lifted)));
  int count = 0;
  for (const auto& fe : fac.factors) count += fe.second;
  return {count == 1, count};
}

}  // namespace dynforge
