#include "dynforge/bipoly.hpp"

#include <algorithm>

#include "dynforge/config.hpp"

namespace dynforge {

RatFunc::RatFunc(TPoly num, TPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw error("RatFunc: zero denominator");
  reduce();
}

void RatFunc::reduce() {
  if (num_.is_zero()) {
    den_ = FqPoly::constant(Fq(*den_.field(), 1));
    return;
  }
  TPoly g = poly_gcd(num_, den_);
  if (g.deg() > 0) {
    num_ = poly_div(num_, g);
    den_ = poly_div(den_, g);
  }
  Fq u = den_.lc().inv();
  num_ = num_ * u;
  den_ = den_ * u;
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
  return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const {
  return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator*(const RatFunc& o) const {
  return RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
  if (o.is_zero()) throw error("RatFunc: division by zero");
  return RatFunc(num_ * o.den_, den_ * o.num_);
}

BiPoly::BiPoly(FieldPtr f, std::vector<TPoly> zc, long hom_deg)
    : field_(f), c_(std::move(zc)), hom_(hom_deg) {
  trim();
  if (hom_ >= 0 && hom_ < deg_z())
    throw internal_error("BiPoly: declared degree below z-degree");
}

void BiPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  for (auto& p : c_)
    if (p.field() == nullptr) p = TPoly(field_);
}

BiPoly BiPoly::from_tpoly(const TPoly& c) {
  return BiPoly(c.field(), {c});
}

BiPoly BiPoly::z(FieldPtr f) {
  return BiPoly(f, {TPoly(f), FqPoly::constant(Fq(*f, 1))}, 1);
}

BiPoly BiPoly::one_y(FieldPtr f) {
  return BiPoly(f, {FqPoly::constant(Fq(*f, 1))}, 1);
}

long BiPoly::deg_t() const {
  long d = -1;
  for (const auto& p : c_) d = std::max(d, p.deg());
  return d;
}

long BiPoly::ord_z() const {
  for (size_t i = 0; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return static_cast<long>(i);
  return 0;
}

TPoly BiPoly::coeff(long i) const {
  if (i < 0 || i >= static_cast<long>(c_.size())) return TPoly(field_);
  return c_[i];
}

void BiPoly::set_coeff(long i, TPoly p) {
  if (i >= static_cast<long>(c_.size())) {
    if (p.is_zero()) return;
    c_.resize(i + 1, TPoly(field_));
  }
  c_[i] = std::move(p);
  trim();
  if (hom_ >= 0 && hom_ < deg_z())
    throw internal_error("BiPoly: declared degree below z-degree");
}

void BiPoly::set_hom_deg(long h) {
  if (h >= 0 && h < deg_z())
    throw internal_error("BiPoly: declared degree below z-degree");
  hom_ = h;
}

BiPoly BiPoly::dehom() const {
  BiPoly r = *this;
  r.hom_ = -1;
  return r;
}

void BiPoly::check_same(const BiPoly& o) const {
  if (field_ != o.field_)
    throw field_mismatch_error("BiPoly: operands over different fields");
}

BiPoly BiPoly::operator+(const BiPoly& o) const {
  check_same(o);
  long h;
  if (hom_ < 0 && o.hom_ < 0) h = -1;
  else if (hom_ == o.hom_) h = hom_;
  else if (is_zero()) h = o.hom_;
  else if (o.is_zero()) h = hom_;
  else throw internal_error("BiPoly: adding mixed homogeneous degrees");
  std::vector<TPoly> r(std::max(c_.size(), o.c_.size()), TPoly(field_));
  for (size_t i = 0; i < r.size(); ++i) {
    TPoly x = i < c_.size() ? c_[i] : TPoly(field_);
    TPoly y = i < o.c_.size() ? o.c_[i] : TPoly(field_);
    if (x.is_zero()) r[i] = std::move(y);
    else if (y.is_zero()) r[i] = std::move(x);
    else r[i] = x + y;
  }
  return BiPoly(field_, std::move(r), h);
}

BiPoly BiPoly::operator-(const BiPoly& o) const { return *this + (-o); }

BiPoly BiPoly::operator-() const {
  std::vector<TPoly> r(c_.size(), TPoly(field_));
  for (size_t i = 0; i < c_.size(); ++i) r[i] = -c_[i];
  return BiPoly(field_, std::move(r), hom_);
}

BiPoly BiPoly::operator*(const BiPoly& o) const {
  check_same(o);
  long h = (hom_ >= 0 && o.hom_ >= 0) ? hom_ + o.hom_
           : (hom_ < 0 && o.hom_ < 0) ? -1
                                      : throw internal_error(
                                            "BiPoly: mixed homogeneous product");
  if (c_.empty() || o.c_.empty()) return BiPoly(field_, {}, h < 0 ? -1 : h);
  std::vector<TPoly> r(c_.size() + o.c_.size() - 1, TPoly(field_));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) {
      if (o.c_[j].is_zero()) continue;
      TPoly prod = c_[i] * o.c_[j];
      r[i + j] = r[i + j].is_zero() ? prod : r[i + j] + prod;
    }
  }
  return BiPoly(field_, std::move(r), h);
}

BiPoly BiPoly::operator*(const TPoly& s) const {
  if (s.is_zero()) return BiPoly(field_, {}, hom_);
  std::vector<TPoly> r(c_.size(), TPoly(field_));
  for (size_t i = 0; i < c_.size(); ++i)
    r[i] = c_[i].is_zero() ? c_[i] : c_[i] * s;
  return BiPoly(field_, std::move(r), hom_);
}

bool BiPoly::operator==(const BiPoly& o) const {
  if (c_.empty() && o.c_.empty()) return true;
  if (field_ != o.field_ || hom_ != o.hom_ || c_.size() != o.c_.size())
    return false;
  for (size_t i = 0; i < c_.size(); ++i)
    if (!(c_[i] == o.c_[i])) return false;
  return true;
}

BiPoly BiPoly::derivative_z() const {
  if (c_.size() <= 1) return BiPoly(field_);
  std::vector<TPoly> r(c_.size() - 1, TPoly(field_));
  for (size_t i = 1; i < c_.size(); ++i)
    r[i - 1] = c_[i] * Fq(*field_, field_->from_int(static_cast<long long>(i)));
  return BiPoly(field_, std::move(r));
}

BiPoly BiPoly::derivative_t() const {
  std::vector<TPoly> r(c_.size(), TPoly(field_));
  for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i].derivative();
  return BiPoly(field_, std::move(r));
}

BiPoly BiPoly::shift_z(long k) const {
  if (is_zero()) return *this;
  if (k < 0 && ord_z() < -k)
    throw internal_error("shift_z would drop nonzero coefficients");
  std::vector<TPoly> r(static_cast<long>(c_.size()) + k, TPoly(field_));
  for (long i = std::max(0L, -k); i < static_cast<long>(c_.size()); ++i)
    r[i + k] = c_[i];
  return BiPoly(field_, std::move(r), hom_ < 0 ? -1 : hom_ + k);
}

BiPoly BiPoly::substitute_z_pow(long k) const {
  if (is_zero()) return *this;
  std::vector<TPoly> r(k * deg_z() + 1, TPoly(field_));
  for (size_t i = 0; i < c_.size(); ++i) r[i * k] = c_[i];
  return BiPoly(field_, std::move(r));
}

BiPoly BiPoly::unsubstitute_z_pow(long k) const {
  if (is_zero()) return *this;
  std::vector<TPoly> r(deg_z() / k + 1, TPoly(field_));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    if (static_cast<long>(i) % k != 0)
      throw internal_error("unsubstitute_z_pow: exponent not divisible");
    r[i / k] = c_[i];
  }
  return BiPoly(field_, std::move(r));
}

TPoly BiPoly::content_t() const {
  TPoly g(field_);
  for (const auto& p : c_) {
    if (p.is_zero()) continue;
    g = g.is_zero() ? p.monic() : poly_gcd(g, p);
    if (g.deg() == 0) break;
  }
  return g;
}

BiPoly BiPoly::primitive_t() const {
  TPoly g = content_t();
  if (g.is_zero() || g.deg() == 0) return *this;
  std::vector<TPoly> r(c_.size(), TPoly(field_));
  for (size_t i = 0; i < c_.size(); ++i)
    r[i] = c_[i].is_zero() ? c_[i] : poly_div(c_[i], g);
  return BiPoly(field_, std::move(r), hom_);
}

std::pair<BiPoly, Fq> BiPoly::unit_normalized() const {
  if (is_zero()) return {*this, Fq(*field_, 1)};
  Fq u = c_.back().lc();
  if (u.is_one()) return {*this, u};
  TPoly s = FqPoly::constant(u.inv());
  return {*this * s, u};
}

BiPoly BiPoly::compose_hom(const BiPoly& A, const BiPoly& B) const {
  if (hom_ < 0) throw internal_error("compose_hom: no declared degree");
  check_same(A);
  check_same(B);
  if (A.hom_deg() != B.hom_deg() || A.hom_deg() < 0)
    throw internal_error("compose_hom: pair degrees disagree");
  long h = hom_;
  BiPoly Ad = A.dehom(), Bd = B.dehom();
  // Horner in A; the matching power of B rides along
  BiPoly acc(field_);
  if (!coeff(h).is_zero()) acc = BiPoly(field_, {coeff(h)});
  BiPoly bpow = BiPoly(field_, {FqPoly::constant(Fq(*field_, 1))});
  for (long i = h - 1; i >= 0; --i) {
    acc = acc * Ad;
    bpow = bpow * Bd;
    if (!coeff(i).is_zero()) acc = acc + bpow * coeff(i);
  }
  acc.set_hom_deg(h * A.hom_deg());
  return acc;
}

FqPoly BiPoly::specialize(const Fq& tau) const {
  const Field& E = tau.field();
  std::vector<std::uint32_t> r(c_.size(), 0);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    const TPoly lifted = &E == field_ ? c_[i] : poly_lift(c_[i], E);
    r[i] = lifted.eval(tau).code();
  }
  return FqPoly(&E, std::move(r));
}

TPoly BiPoly::eval_z_tpoly(const TPoly& x) const {
  TPoly acc(field_);
  for (long i = deg_z(); i >= 0; --i) {
    if (!acc.is_zero()) acc = acc * x;
    if (!coeff(i).is_zero()) acc = acc.is_zero() ? coeff(i) : acc + coeff(i);
  }
  return acc;
}

RatFunc BiPoly::eval_z(const RatFunc& x) const {
  RatFunc acc{TPoly(field_)};
  for (long i = deg_z(); i >= 0; --i) {
    acc = acc * x;
    if (!coeff(i).is_zero()) acc = acc + RatFunc(coeff(i));
  }
  return acc;
}

std::string BiPoly::str() const {
  if (is_zero()) return "0";
  std::string out;
  for (long i = deg_z(); i >= 0; --i) {
    if (coeff(i).is_zero()) continue;
    if (!out.empty()) out += "+";
    std::string cs = coeff(i).str("t");
    bool composite = cs.find('+') != std::string::npos;
    if (i == 0) {
      out += composite ? "(" + cs + ")" : cs;
    } else {
      if (cs != "1") out += (composite ? "(" + cs + ")" : cs) + "*";
      out += "z";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

std::string BiPoly::str_hom() const {
  if (hom_ < 0) return str();
  if (is_zero()) return "0";
  std::string out;
  for (long i = deg_z(); i >= 0; --i) {
    if (coeff(i).is_zero()) continue;
    if (!out.empty()) out += "+";
    std::string cs = coeff(i).str("t");
    bool composite = cs.find('+') != std::string::npos;
    std::string term;
    if (i > 0) {
      term += "X";
      if (i > 1) term += "^" + std::to_string(i);
    }
    long ypow = hom_ - i;
    if (ypow > 0) {
      if (!term.empty()) term += "*";
      term += "Y";
      if (ypow > 1) term += "^" + std::to_string(ypow);
    }
    if (term.empty()) {
      out += composite ? "(" + cs + ")" : cs;
    } else {
      if (cs != "1") out += (composite ? "(" + cs + ")" : cs) + "*";
      out += term;
    }
  }
  return out;
}

namespace {

// z-polynomials over F_q(t), used for gcd and exact division
using RPoly = std::vector<RatFunc>;

RPoly to_rpoly(const BiPoly& p) {
  RPoly r;
  r.reserve(p.deg_z() + 1);
  for (long i = 0; i <= p.deg_z(); ++i) r.push_back(RatFunc(p.coeff(i)));
  return r;
}

void rtrim(RPoly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

long rdeg(const RPoly& a) { return static_cast<long>(a.size()) - 1; }

std::pair<RPoly, RPoly> rdivrem(const RPoly& a, const RPoly& b) {
  RPoly r = a, q(a.size() > b.size() ? a.size() - b.size() + 1 : 1,
                 RatFunc(TPoly(b.back().num().field())));
  rtrim(r);
  while (rdeg(r) >= rdeg(b)) {
    RatFunc c = r.back() / b.back();
    long shift = rdeg(r) - rdeg(b);
    q[shift] = c;
    for (long j = 0; j <= rdeg(b); ++j)
      r[shift + j] = r[shift + j] - c * b[j];
    rtrim(r);
  }
  rtrim(q);
  return {q, r};
}

// clears denominators and t-content, normalizes the scalar
BiPoly from_rpoly_primitive(FieldPtr f, const RPoly& a) {
  if (a.empty()) return BiPoly(f);
  TPoly common = FqPoly::constant(Fq(*f, 1));
  for (const auto& c : a) {
    if (c.is_zero()) continue;
    TPoly g = poly_gcd(common, c.den());
    common = poly_div(common * c.den(), g);
  }
  std::vector<TPoly> coeffs(a.size(), TPoly(f));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    coeffs[i] = a[i].num() * poly_div(common, a[i].den());
  }
  return BiPoly(f, std::move(coeffs)).primitive_t().unit_normalized().first;
}

}  // namespace

BiPoly bi_gcd_z(const BiPoly& a, const BiPoly& b) {
  FieldPtr f = a.field() ? a.field() : b.field();
  if (a.is_zero()) return b.dehom().primitive_t().unit_normalized().first;
  if (b.is_zero()) return a.dehom().primitive_t().unit_normalized().first;
  RPoly x = to_rpoly(a), y = to_rpoly(b);
  while (!y.empty()) {
    RPoly r = rdivrem(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return from_rpoly_primitive(f, x);
}

BiPoly bi_div_exact(const BiPoly& a, const BiPoly& b) {
  if (b.is_zero()) throw error("bi_div_exact: zero divisor");
  if (a.is_zero())
    return BiPoly(a.field(), {},
                  a.hom_deg() >= 0 && b.hom_deg() >= 0
                      ? a.hom_deg() - b.hom_deg()
                      : -1);
  auto [q, r] = rdivrem(to_rpoly(a), to_rpoly(b));
  if (!r.empty()) throw internal_error("bi_div_exact: division is not exact");
  std::vector<TPoly> coeffs(q.size(), TPoly(a.field()));
  for (size_t i = 0; i < q.size(); ++i) {
    if (q[i].is_zero()) continue;
    if (!q[i].is_polynomial())
      throw internal_error("bi_div_exact: quotient has denominators");
    coeffs[i] = q[i].num();
  }
  long h = (a.hom_deg() >= 0 && b.hom_deg() >= 0) ? a.hom_deg() - b.hom_deg()
                                                  : -1;
  return BiPoly(a.field(), std::move(coeffs), h);
}

bool bi_divides(const BiPoly& d, const BiPoly& a) {
  if (d.is_zero()) return a.is_zero();
  if (a.is_zero()) return true;
  if (d.deg_z() > a.deg_z()) return false;
  return rdivrem(to_rpoly(a), to_rpoly(d)).second.empty();
}

namespace {

void squarefree_run(const BiPoly& h, int mult,
                    std::vector<BiSquarefreePart>& out) {
  long p = h.field()->p();
  BiPoly residual(h.field());
  BiPoly hz = h.derivative_z();
  if (hz.is_zero()) {
    residual = h;
  } else {
    BiPoly c = bi_gcd_z(h, hz);
    BiPoly w = bi_div_exact(h, c).primitive_t().unit_normalized().first;
    int i = 1;
    while (w.deg_z() > 0) {
      BiPoly y = bi_gcd_z(w, c);
      BiPoly a = bi_div_exact(w, y).primitive_t().unit_normalized().first;
      if (a.deg_z() > 0) out.push_back({a, mult * i, false});
      w = std::move(y);
      c = bi_div_exact(c, w).primitive_t().unit_normalized().first;
      ++i;
    }
    residual = c;
  }
  if (residual.deg_z() <= 0) return;
  // residual has vanishing z-derivative: pull back through z = w^p
  BiPoly G = residual.unsubstitute_z_pow(p);
  std::vector<BiSquarefreePart> sub;
  squarefree_run(G, 1, sub);
  for (const auto& piece : sub) {
    const BiPoly& V = piece.part;
    int k = piece.exponent;
    BiPoly Vt = V.derivative_t();
    // factors of V whose coefficients are p-th powers in F_q[t] resubstitute
    // to genuine p-th powers; the rest stay irreducible and inseparable
    BiPoly phi = Vt.is_zero() ? V : bi_gcd_z(V, Vt);
    BiPoly S = bi_div_exact(V, phi).primitive_t().unit_normalized().first;
    if (S.deg_z() > 0)
      out.push_back({S.substitute_z_pow(p), mult * k, true});
    if (phi.deg_z() > 0) {
      std::vector<TPoly> rooted(phi.deg_z() + 1, TPoly(phi.field()));
      for (long j = 0; j <= phi.deg_z(); ++j)
        if (!phi.coeff(j).is_zero()) rooted[j] = poly_pth_root(phi.coeff(j));
      BiPoly N(phi.field(), std::move(rooted));
      squarefree_run(N, mult * k * static_cast<int>(p), out);
    }
  }
}

}  // namespace

BiSquarefreeDecomposition bi_squarefree(const BiPoly& P) {
  if (P.is_zero()) throw error("bi_squarefree: zero polynomial");
  BiSquarefreeDecomposition out;
  BiPoly flat = P.dehom();
  out.content = flat.content_t();
  // lexicographic leading coefficient is multiplicative, so it is the unit
  out.unit = flat.coeffs().back().lc() / out.content.lc();
  BiPoly prim = flat.primitive_t().unit_normalized().first;
  if (prim.deg_z() > 0) squarefree_run(prim, 1, out.parts);
  std::sort(out.parts.begin(), out.parts.end(),
            [](const BiSquarefreePart& a, const BiSquarefreePart& b) {
              if (a.exponent != b.exponent) return a.exponent < b.exponent;
              if (a.part.deg_z() != b.part.deg_z())
                return a.part.deg_z() < b.part.deg_z();
              return a.part.str() < b.part.str();
            });
  return out;
}

RatFamily::RatFamily(const BiPoly& a_raw, const BiPoly& b_raw) {
  if (b_raw.is_zero())
    throw degenerate_family_error("family: zero denominator");
  BiPoly a = a_raw.dehom(), b = b_raw.dehom();
  BiPoly g = bi_gcd_z(a, b);
  if (g.deg_z() > 0) {
    a = bi_div_exact(a, g);
    b = bi_div_exact(b, g);
  }
  TPoly ca = a.content_t(), cb = b.content_t();
  TPoly joint = ca.is_zero() ? cb : cb.is_zero() ? ca : poly_gcd(ca, cb);
  if (!joint.is_zero() && joint.deg() > 0) {
    std::vector<TPoly> ra(a.deg_z() + 1, TPoly(a.field()));
    for (long i = 0; i <= a.deg_z(); ++i)
      if (!a.coeff(i).is_zero()) ra[i] = poly_div(a.coeff(i), joint);
    a = BiPoly(a.field(), std::move(ra));
    std::vector<TPoly> rb(b.deg_z() + 1, TPoly(b.field()));
    for (long i = 0; i <= b.deg_z(); ++i)
      if (!b.coeff(i).is_zero()) rb[i] = poly_div(b.coeff(i), joint);
    b = BiPoly(b.field(), std::move(rb));
  }
  Fq u = b.coeffs().back().lc();
  if (!u.is_one()) {
    TPoly s = FqPoly::constant(u.inv());
    a = a * s;
    b = b * s;
  }
  d_ = std::max(a.deg_z(), b.deg_z());
  if (d_ < 2)
    throw degenerate_family_error("family: degree below 2 after normalization");
  a_ = a;
  b_ = b;
  A_ = a;
  A_.set_hom_deg(d_);
  B_ = b;
  B_.set_hom_deg(d_);
}

std::string RatFamily::str() const {
  if (b_.deg_z() == 0 && b_.coeff(0).deg() == 0) return a_.str();
  return "(" + a_.str() + ")/(" + b_.str() + ")";
}

std::pair<BiPoly, BiPoly> iterate(const RatFamily& fam, int m) {
  if (m < 0) throw error("iterate: negative count");
  long cap = options().degree_cap;
  long deg = 1;
  BiPoly Am = BiPoly::z(fam.field());
  BiPoly Bm = BiPoly::one_y(fam.field());
  for (int i = 0; i < m; ++i) {
    if (deg > cap / fam.d())
      throw size_limit_error("iterate: degree cap exceeded");
    deg *= fam.d();
    Am = Am.compose_hom(fam.A(), fam.B());
    Bm = Bm.compose_hom(fam.A(), fam.B());
  }
  return {Am, Bm};
}

BiPoly dynatomic_raw(const RatFamily& fam, int m, int n) {
  if (m < 0 || n < 1) throw error("dynatomic_raw: need m >= 0, n >= 1");
  auto [Amn, Bmn] = iterate(fam, m + n);
  auto [Am, Bm] = iterate(fam, m);
  return Amn * Bm - Am * Bmn;
}

}  // namespace dynforge
