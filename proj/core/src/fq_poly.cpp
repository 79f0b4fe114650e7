#include "dynforge/fq_poly.hpp"

#include <algorithm>
#include <random>

#include "dynforge/config.hpp"

namespace dynforge {

namespace {

std::uint64_t mix_seed(std::uint64_t seed, const std::vector<std::uint32_t>& v) {
  std::uint64_t h = seed;
  for (std::uint32_t c : v) {
    h ^= c + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::vector<long> prime_divisors(long n) {
  std::vector<long> out;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

FqPoly FqPoly::constant(const Fq& a) {
  return FqPoly(&a.field(), {a.code()});
}

FqPoly FqPoly::x(FieldPtr f) { return FqPoly(f, {0, 1}); }

FqPoly FqPoly::monomial(const Fq& a, long k) {
  std::vector<std::uint32_t> c(k + 1, 0);
  c[k] = a.code();
  return FqPoly(&a.field(), std::move(c));
}

Fq FqPoly::coeff(long i) const { return Fq(*field_, code(i)); }

Fq FqPoly::lc() const {
  return c_.empty() ? Fq(*field_, 0) : Fq(*field_, c_.back());
}

void FqPoly::set_coeff(long i, const Fq& a) {
  if (&a.field() != field_)
    throw field_mismatch_error("FqPoly::set_coeff: wrong field");
  if (i >= static_cast<long>(c_.size())) {
    if (a.is_zero()) return;
    c_.resize(i + 1, 0);
  }
  c_[i] = a.code();
  trim();
}

void FqPoly::check_same(const FqPoly& o) const {
  if (field_ != o.field_)
    throw field_mismatch_error("FqPoly: operands over different fields");
}

FqPoly FqPoly::operator+(const FqPoly& o) const {
  check_same(o);
  std::vector<std::uint32_t> r(std::max(c_.size(), o.c_.size()), 0);
  for (size_t i = 0; i < r.size(); ++i)
    r[i] = field_->add(i < c_.size() ? c_[i] : 0,
                       i < o.c_.size() ? o.c_[i] : 0);
  return FqPoly(field_, std::move(r));
}

FqPoly FqPoly::operator-(const FqPoly& o) const {
  check_same(o);
  std::vector<std::uint32_t> r(std::max(c_.size(), o.c_.size()), 0);
  for (size_t i = 0; i < r.size(); ++i)
    r[i] = field_->sub(i < c_.size() ? c_[i] : 0,
                       i < o.c_.size() ? o.c_[i] : 0);
  return FqPoly(field_, std::move(r));
}

FqPoly FqPoly::operator-() const {
  std::vector<std::uint32_t> r(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r[i] = field_->neg(c_[i]);
  return FqPoly(field_, std::move(r));
}

FqPoly FqPoly::operator*(const FqPoly& o) const {
  check_same(o);
  if (c_.empty() || o.c_.empty()) return FqPoly(field_);
  std::vector<std::uint32_t> r(c_.size() + o.c_.size() - 1, 0);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (!c_[i]) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) {
      if (!o.c_[j]) continue;
      r[i + j] = field_->add(r[i + j], field_->mul(c_[i], o.c_[j]));
    }
  }
  return FqPoly(field_, std::move(r));
}

FqPoly FqPoly::operator*(const Fq& a) const {
  if (&a.field() != field_)
    throw field_mismatch_error("FqPoly: scalar from a different field");
  if (a.is_zero()) return FqPoly(field_);
  std::vector<std::uint32_t> r(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r[i] = field_->mul(c_[i], a.code());
  return FqPoly(field_, std::move(r));
}

bool FqPoly::operator==(const FqPoly& o) const {
  if (c_.empty() && o.c_.empty()) return true;
  return field_ == o.field_ && c_ == o.c_;
}

FqPoly FqPoly::shifted(long k) const {
  if (c_.empty()) return *this;
  std::vector<std::uint32_t> r(c_.size() + k, 0);
  std::copy(c_.begin(), c_.end(), r.begin() + k);
  return FqPoly(field_, std::move(r));
}

FqPoly FqPoly::monic() const {
  if (c_.empty() || c_.back() == 1) return *this;
  return *this * lc().inv();
}

FqPoly FqPoly::derivative() const {
  if (c_.size() <= 1) return FqPoly(field_);
  std::vector<std::uint32_t> r(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i)
    r[i - 1] = field_->mul(c_[i], field_->from_int(static_cast<long long>(i)));
  return FqPoly(field_, std::move(r));
}

Fq FqPoly::eval(const Fq& a) const {
  if (&a.field() != field_)
    throw field_mismatch_error("FqPoly::eval: point from a different field");
  std::uint32_t acc = 0;
  for (long i = deg(); i >= 0; --i)
    acc = field_->add(field_->mul(acc, a.code()), c_[i]);
  return Fq(*field_, acc);
}

FqPoly FqPoly::compose(const FqPoly& inner) const {
  check_same(inner);
  FqPoly acc(field_);
  for (long i = deg(); i >= 0; --i) {
    acc = acc * inner;
    acc = acc + FqPoly::constant(coeff(i));
  }
  return acc;
}

std::string FqPoly::str(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (long i = deg(); i >= 0; --i) {
    if (!c_[i]) continue;
    if (!out.empty()) out += "+";
    std::string cs = field_->elem_str(c_[i]);
    bool composite = cs.find('+') != std::string::npos;
    if (i == 0) {
      out += composite ? "(" + cs + ")" : cs;
    } else {
      if (cs != "1") out += (composite ? "(" + cs + ")" : cs) + "*";
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

std::pair<FqPoly, FqPoly> poly_divrem(const FqPoly& a, const FqPoly& b) {
  if (b.is_zero()) throw error("poly_divrem: division by zero polynomial");
  if (a.field() != nullptr && a.field() != b.field())
    throw field_mismatch_error("poly_divrem: operands over different fields");
  const Field& F = *b.field();
  long db = b.deg();
  if (a.deg() < db) return {FqPoly(b.field()), a.is_zero() ? FqPoly(b.field()) : a};
  std::vector<std::uint32_t> r(a.codes());
  std::vector<std::uint32_t> q(a.deg() - db + 1, 0);
  std::uint32_t lcinv = F.inv(b.code(db));
  for (long i = a.deg(); i >= db; --i) {
    std::uint32_t c = F.mul(r[i], lcinv);
    if (!c) continue;
    q[i - db] = c;
    for (long j = 0; j <= db; ++j)
      r[i - db + j] = F.sub(r[i - db + j], F.mul(c, b.code(j)));
  }
  r.resize(db > 0 ? db : 0);
  return {FqPoly(b.field(), std::move(q)), FqPoly(b.field(), std::move(r))};
}

FqPoly poly_div(const FqPoly& a, const FqPoly& b) {
  auto [q, r] = poly_divrem(a, b);
  if (!r.is_zero()) throw internal_error("poly_div: division is not exact");
  return q;
}

FqPoly poly_rem(const FqPoly& a, const FqPoly& b) {
  return poly_divrem(a, b).second;
}

FqPoly poly_gcd(FqPoly a, FqPoly b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  while (!b.is_zero()) {
    FqPoly r = poly_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

XgcdResult poly_xgcd(const FqPoly& a, const FqPoly& b) {
  FieldPtr f = a.is_zero() ? b.field() : a.field();
  FqPoly r0 = a, r1 = b;
  FqPoly s0 = FqPoly::constant(Fq(*f, 1)), s1(f);
  FqPoly t0(f), t1 = FqPoly::constant(Fq(*f, 1));
  while (!r1.is_zero()) {
    auto [q, r] = poly_divrem(r0, r1);
    FqPoly s = s0 - q * s1;
    FqPoly t = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
    t0 = std::move(t1);
    t1 = std::move(t);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  Fq u = r0.lc().inv();
  return {r0 * u, s0 * u, t0 * u};
}

FqPoly poly_pow_mod(const FqPoly& a, std::uint64_t e, const FqPoly& f) {
  if (f.deg() < 1) throw error("poly_pow_mod: constant modulus");
  FqPoly base = poly_rem(a, f);
  FqPoly r = FqPoly::constant(Fq(*f.field(), 1));
  while (e) {
    if (e & 1) r = poly_rem(r * base, f);
    base = poly_rem(base * base, f);
    e >>= 1;
  }
  return r;
}

FqPoly poly_pth_root(const FqPoly& f) {
  const Field& F = *f.field();
  long p = F.p();
  std::vector<std::uint32_t> r(f.deg() / p + 1, 0);
  for (long i = 0; i <= f.deg(); ++i) {
    if (!f.code(i)) continue;
    if (i % p != 0)
      throw internal_error("poly_pth_root: exponent not divisible by p");
    r[i / p] = F.pth_root(f.code(i));
  }
  return FqPoly(f.field(), std::move(r));
}

SquarefreeDecomposition poly_squarefree_decomposition(const FqPoly& f) {
  if (f.is_zero())
    throw error("poly_squarefree_decomposition: zero polynomial");
  SquarefreeDecomposition out;
  out.unit = f.lc();
  FqPoly g = f.monic();
  const Field& F = *f.field();
  long p = F.p();
  // accumulates (part, exponent); wild recursion multiplies exponents by p
  std::vector<std::pair<FqPoly, int>> parts;
  struct Rec {
    long p;
    std::vector<std::pair<FqPoly, int>>& parts;
    void run(FqPoly h, int mult) {
      if (h.deg() == 0) return;
      FqPoly hp = h.derivative();
      if (hp.is_zero()) {
        run(poly_pth_root(h), mult * static_cast<int>(p));
        return;
      }
      FqPoly c = poly_gcd(h, hp);
      FqPoly w = poly_div(h, c);
      int i = 1;
      while (w.deg() > 0) {
        FqPoly y = poly_gcd(w, c);
        FqPoly z = poly_div(w, y);
        if (z.deg() > 0) parts.emplace_back(z, mult * i);
        w = std::move(y);
        c = poly_div(c, w);
        ++i;
      }
      if (c.deg() > 0) run(poly_pth_root(c), mult * static_cast<int>(p));
    }
  } rec{p, parts};
  rec.run(g, 1);
  std::sort(parts.begin(), parts.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });
  out.parts = std::move(parts);
  return out;
}

bool poly_is_squarefree(const FqPoly& f) {
  if (f.is_zero()) return false;
  if (f.deg() == 0) return true;
  FqPoly fp = f.derivative();
  if (fp.is_zero()) return false;
  return poly_gcd(f, fp).deg() == 0;
}

namespace {

// Distinct-degree factorization of monic squarefree f: list of
// (product of irreducible factors of degree k, k).
std::vector<std::pair<FqPoly, long>> ddf(const FqPoly& f) {
  const Field& F = *f.field();
  std::uint64_t Q = F.q();
  std::vector<std::pair<FqPoly, long>> out;
  FqPoly rest = f;
  FqPoly h = poly_rem(FqPoly::x(f.field()), rest);  // x^{Q^0}
  long k = 0;
  while (rest.deg() > 2 * k) {
    ++k;
    h = poly_pow_mod(h, Q, rest);
    FqPoly g = poly_gcd(rest, h - FqPoly::x(f.field()));
    if (g.deg() > 0) {
      out.emplace_back(g, k);
      rest = poly_div(rest, g);
      h = poly_rem(h, rest);
    }
  }
  if (rest.deg() > 0) out.emplace_back(rest, rest.deg());
  return out;
}

// Equal-degree splitting of monic squarefree f whose irreducible factors all
// have degree d. Cantor-Zassenhaus for odd q, trace splitting for p = 2.
void edf(const FqPoly& f, long d, std::mt19937_64& rng,
         std::vector<FqPoly>& out) {
  if (f.deg() == d) {
    out.push_back(f);
    return;
  }
  const Field& F = *f.field();
  std::uint64_t Q = F.q();
  FqPoly one = FqPoly::constant(Fq(F, 1));
  for (;;) {
    // random nonconstant u of degree < deg f
    std::vector<std::uint32_t> uc(f.deg());
    for (auto& c : uc)
      c = static_cast<std::uint32_t>(rng() % Q);
    FqPoly u(f.field(), std::move(uc));
    if (u.deg() < 1) continue;
    FqPoly g = poly_gcd(f, u);
    if (g.deg() > 0 && g.deg() < f.deg()) {
      edf(g, d, rng, out);
      edf(poly_div(f, g), d, rng, out);
      return;
    }
    FqPoly w(f.field());
    if (F.p() == 2) {
      // trace over F_2 of the residue ring element
      long bits = static_cast<long>(F.s()) * d;
      FqPoly t = u;
      w = u;
      for (long i = 1; i < bits; ++i) {
        t = poly_rem(t * t, f);
        w = w + t;
      }
    } else {
      // norm to the degree-d subring, then a half-order power
      FqPoly m = u;
      FqPoly uq = u;
      for (long i = 1; i < d; ++i) {
        uq = poly_pow_mod(uq, Q, f);
        m = poly_rem(m * uq, f);
      }
      w = poly_pow_mod(m, (Q - 1) / 2, f) - one;
    }
    g = poly_gcd(f, w);
    if (g.deg() > 0 && g.deg() < f.deg()) {
      edf(g, d, rng, out);
      edf(poly_div(f, g), d, rng, out);
      return;
    }
  }
}

}  // namespace

FqFactorization poly_factor(const FqPoly& f) {
  if (f.is_zero()) throw error("poly_factor: zero polynomial");
  FqFactorization out;
  out.unit = f.lc();
  if (f.deg() == 0) return out;
  std::mt19937_64 rng(mix_seed(options().factor_seed, f.codes()));
  SquarefreeDecomposition sq = poly_squarefree_decomposition(f);
  for (const auto& [part, e] : sq.parts) {
    for (const auto& [prod, d] : ddf(part)) {
      std::vector<FqPoly> irr;
      edf(prod, d, rng, irr);
      for (FqPoly& g : irr) out.factors.emplace_back(std::move(g), e);
    }
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& a, const auto& b) {
              if (a.first.deg() != b.first.deg())
                return a.first.deg() < b.first.deg();
              if (a.first.codes() != b.first.codes())
                return a.first.codes() < b.first.codes();
              return a.second < b.second;
            });
  return out;
}

bool poly_is_irreducible(const FqPoly& f) {
  if (f.deg() < 1) return false;
  if (f.deg() == 1) return true;
  const Field& F = *f.field();
  std::uint64_t Q = F.q();
  long n = f.deg();
  // x^{Q^k} mod f, one Frobenius step at a time
  std::vector<FqPoly> frob(n + 1, FqPoly(f.field()));
  frob[0] = poly_rem(FqPoly::x(f.field()), f);
  for (long k = 1; k <= n; ++k) frob[k] = poly_pow_mod(frob[k - 1], Q, f);
  if (frob[n] != poly_rem(FqPoly::x(f.field()), f)) return false;
  for (long r : prime_divisors(n)) {
    FqPoly d = frob[n / r] - FqPoly::x(f.field());
    if (poly_gcd(f, d).deg() != 0) return false;
  }
  return true;
}

FqPoly poly_lift(const FqPoly& f, const Field& target) {
  std::vector<std::uint32_t> r(f.deg() + 1);
  for (long i = 0; i <= f.deg(); ++i)
    r[i] = embed_code(*f.field(), f.code(i), target);
  return FqPoly(&target, std::move(r));
}

std::optional<FqPoly> poly_project(const FqPoly& f, const Field& target) {
  std::vector<std::uint32_t> r(f.deg() + 1);
  for (long i = 0; i <= f.deg(); ++i) {
    std::optional<Fq> c = project(Fq(*f.field(), f.code(i)), target);
    if (!c) return std::nullopt;
    r[i] = c->code();
  }
  return FqPoly(&target, std::move(r));
}

std::vector<std::pair<Fq, int>> poly_roots(const FqPoly& f, int ext_degree) {
  if (f.is_zero()) throw error("poly_roots: zero polynomial");
  if (ext_degree < 1) throw error("poly_roots: extension degree must be >= 1");
  const Field& E = ext_degree == 1 ? *f.field()
                                   : extension_field(*f.field(), ext_degree);
  FqPoly fe = ext_degree == 1 ? f : poly_lift(f, E);
  std::vector<std::pair<Fq, int>> out;
  if (fe.deg() < 1) return out;
  FqFactorization fac = poly_factor(fe);
  for (const auto& [g, e] : fac.factors) {
    if (g.deg() != 1) continue;
    out.emplace_back(-g.coeff(0), e);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.first.code() < b.first.code();
  });
  return out;
}

}  // namespace dynforge
