#include "dynforge/puiseux.hpp"

#include <algorithm>
#include <climits>
#include <numeric>
#include <sstream>

#include "dynforge/config.hpp"
#include "dynforge/errors.hpp"

namespace dynforge {

namespace {

constexpr long kExact = LLONG_MAX;

long lcm_checked(long a, long b) {
  long g = std::gcd(a, b);
  long r = a / g * b;
  if (r > 1000000L) throw size_limit_error("PuiseuxSeries: ramification index over 10^6");
  return r;
}

const Field& compositum(const Field& a, const Field& b) {
  if (a.p() != b.p())
    throw field_mismatch_error("PuiseuxSeries: mixed characteristics");
  if (a.s() == b.s()) return a;
  return make_field(a.p(), static_cast<int>(std::lcm(a.s(), b.s())));
}

// precision arithmetic in exponent-numerator units; kExact absorbs
long padd(long a, long b) { return (a == kExact || b == kExact) ? kExact : a + b; }

}  // namespace

// ---------------------------------------------------------------------------
// PuiseuxSeries

PuiseuxSeries::PuiseuxSeries(FieldPtr f) : f_(f), e_(1), prec_num_(kExact) {
  if (!f_) throw internal_error("PuiseuxSeries: null field");
}

PuiseuxSeries PuiseuxSeries::constant(const Fq& a) {
  PuiseuxSeries r(&a.field());
  if (!a.is_zero()) r.terms_[0] = a.code();
  return r;
}

PuiseuxSeries PuiseuxSeries::monomial(const Fq& a, const Rational& val) {
  if (val.is_infinity())
    throw internal_error("PuiseuxSeries: monomial of infinite valuation");
  PuiseuxSeries r(&a.field());
  if (!a.is_zero()) {
    r.e_ = val.den();
    r.terms_[val.num()] = a.code();
  }
  return r;
}

PuiseuxSeries PuiseuxSeries::t(FieldPtr f) {
  if (!f) throw internal_error("PuiseuxSeries: null field");
  return monomial(Fq(*f, 1), Rational(-1));
}

PuiseuxSeries PuiseuxSeries::zero_to(FieldPtr f, const Rational& prec) {
  PuiseuxSeries r(f);
  if (!prec.is_infinity()) {
    r.e_ = prec.den();
    r.prec_num_ = prec.num();
    r.normalize();
  }
  return r;
}

Rational PuiseuxSeries::prec() const {
  return prec_num_ == kExact ? Rational::infinity() : Rational(prec_num_, e_);
}

bool PuiseuxSeries::is_exact() const { return prec_num_ == kExact; }

Rational PuiseuxSeries::valuation() const {
  if (!terms_.empty()) return Rational(terms_.begin()->first, e_);
  if (is_exact()) return Rational::infinity();
  throw precision_loss_error(
      "PuiseuxSeries: valuation undetermined at precision " + prec().str());
}

Fq PuiseuxSeries::leading_coeff() const {
  if (terms_.empty()) {
    if (is_exact()) throw internal_error("PuiseuxSeries: leading_coeff of zero");
    throw precision_loss_error("PuiseuxSeries: leading term undetermined");
  }
  return Fq(*f_, terms_.begin()->second);
}

std::vector<std::pair<Rational, Fq>> PuiseuxSeries::term_list() const {
  std::vector<std::pair<Rational, Fq>> out;
  out.reserve(terms_.size());
  for (const auto& [n, c] : terms_) out.emplace_back(Rational(n, e_), Fq(*f_, c));
  return out;
}

Fq PuiseuxSeries::coeff_at(const Rational& v) const {
  if (!(v < prec()))
    throw precision_loss_error("PuiseuxSeries: coefficient at " + v.str() +
                               " is beyond precision " + prec().str());
  if (v.is_infinity() || e_ % v.den() != 0) return Fq(*f_, 0);
  auto it = terms_.find(v.num() * (e_ / v.den()));
  return it == terms_.end() ? Fq(*f_, 0) : Fq(*f_, it->second);
}

PuiseuxSeries PuiseuxSeries::rescaled(long new_e) const {
  if (new_e == e_) return *this;
  if (new_e % e_ != 0) throw internal_error("PuiseuxSeries: bad rescale");
  long k = new_e / e_;
  PuiseuxSeries r(f_);
  r.e_ = new_e;
  for (const auto& [n, c] : terms_) r.terms_[n * k] = c;
  r.prec_num_ = prec_num_ == kExact ? kExact : prec_num_ * k;
  return r;
}

PuiseuxSeries PuiseuxSeries::truncated(const Rational& prec) const {
  if (prec.is_infinity()) return *this;
  PuiseuxSeries r = rescaled(lcm_checked(e_, prec.den()));
  long pn = prec.num() * (r.e_ / prec.den());
  if (r.prec_num_ == kExact || pn < r.prec_num_) r.prec_num_ = pn;
  r.normalize();
  return r;
}

PuiseuxSeries PuiseuxSeries::lifted(const Field& to) const {
  if (&to == f_) return *this;
  PuiseuxSeries r(&to);
  r.e_ = e_;
  r.prec_num_ = prec_num_;
  for (const auto& [n, c] : terms_) r.terms_[n] = embed_code(*f_, c, to);
  return r;
}

PuiseuxSeries PuiseuxSeries::coeff_power(std::uint64_t k) const {
  PuiseuxSeries r(f_);
  r.e_ = e_;
  r.prec_num_ = prec_num_;
  for (const auto& [n, c] : terms_)
    r.terms_[n] = f_->pow(c, static_cast<long long>(k));
  r.normalize();
  return r;
}

PuiseuxSeries PuiseuxSeries::twisted(const Fq& zeta) const {
  if (&zeta.field() != f_)
    throw field_mismatch_error("PuiseuxSeries: twist root in a different field");
  if (zeta.is_zero()) throw internal_error("PuiseuxSeries: twist by zero");
  PuiseuxSeries r(f_);
  r.e_ = e_;
  r.prec_num_ = prec_num_;
  for (const auto& [n, c] : terms_) {
    long j = ((-n) % e_ + e_) % e_;
    r.terms_[n] = f_->mul(c, f_->pow(zeta.code(), j));
  }
  r.normalize();
  return r;
}

void PuiseuxSeries::normalize() {
  if (prec_num_ != kExact) terms_.erase(terms_.lower_bound(prec_num_), terms_.end());
  for (auto it = terms_.begin(); it != terms_.end();)
    it = (it->second == 0) ? terms_.erase(it) : std::next(it);
  long g = 0;
  for (const auto& [n, c] : terms_) g = std::gcd(g, n < 0 ? -n : n);
  if (prec_num_ != kExact)
    g = std::gcd(g, prec_num_ < 0 ? -prec_num_ : prec_num_);
  long d = std::gcd(e_, g);  // g == 0 (no constraints) reduces e_ to 1
  if (d == 0) d = e_;
  if (d > 1) {
    std::map<long, std::uint32_t> nt;
    for (const auto& [n, c] : terms_) nt[n / d] = c;
    terms_ = std::move(nt);
    if (prec_num_ != kExact) prec_num_ /= d;
    e_ /= d;
  }
}

void PuiseuxSeries::align(PuiseuxSeries& a, PuiseuxSeries& b) {
  const Field& f = compositum(*a.f_, *b.f_);
  if (&f != a.f_) a = a.lifted(f);
  if (&f != b.f_) b = b.lifted(f);
  long e = lcm_checked(a.e_, b.e_);
  if (e != a.e_) a = a.rescaled(e);
  if (e != b.e_) b = b.rescaled(e);
}

PuiseuxSeries PuiseuxSeries::operator+(const PuiseuxSeries& o) const {
  PuiseuxSeries a = *this, b = o;
  align(a, b);
  PuiseuxSeries r(a.f_);
  r.e_ = a.e_;
  r.prec_num_ = std::min(a.prec_num_, b.prec_num_);
  r.terms_ = a.terms_;
  for (const auto& [n, c] : b.terms_) {
    auto [it, fresh] = r.terms_.emplace(n, c);
    if (!fresh) it->second = a.f_->add(it->second, c);
  }
  r.normalize();
  return r;
}

PuiseuxSeries PuiseuxSeries::operator-() const {
  PuiseuxSeries r = *this;
  for (auto& [n, c] : r.terms_) c = f_->neg(c);
  return r;
}

PuiseuxSeries PuiseuxSeries::operator-(const PuiseuxSeries& o) const {
  return *this + (-o);
}

PuiseuxSeries PuiseuxSeries::operator*(const PuiseuxSeries& o) const {
  PuiseuxSeries a = *this, b = o;
  align(a, b);
  // valuation lower bounds; an exact zero contributes kExact and wipes the
  // error term of the other factor
  long va = a.terms_.empty() ? a.prec_num_ : a.terms_.begin()->first;
  long vb = b.terms_.empty() ? b.prec_num_ : b.terms_.begin()->first;
  PuiseuxSeries r(a.f_);
  r.e_ = a.e_;
  r.prec_num_ = std::min(padd(a.prec_num_, vb), padd(b.prec_num_, va));
  for (const auto& [n1, c1] : a.terms_)
    for (const auto& [n2, c2] : b.terms_) {
      long n = n1 + n2;
      if (r.prec_num_ != kExact && n >= r.prec_num_) continue;
      std::uint32_t pr = a.f_->mul(c1, c2);
      auto [it, fresh] = r.terms_.emplace(n, pr);
      if (!fresh) it->second = a.f_->add(it->second, pr);
    }
  r.normalize();
  return r;
}

PuiseuxSeries PuiseuxSeries::operator*(const Fq& a) const {
  PuiseuxSeries s = constant(a);
  return *this * s;
}

PuiseuxSeries PuiseuxSeries::inv(const Rational& prec) const {
  if (terms_.empty()) {
    if (is_exact()) throw internal_error("PuiseuxSeries: inverse of zero");
    throw precision_loss_error("PuiseuxSeries: inverting a series with no determined term");
  }
  Rational m = valuation();
  if (terms_.size() == 1 && is_exact())
    return monomial(leading_coeff().inv(), -m);
  Rational target = prec;
  if (!is_exact()) target = rmin(target, this->prec() - m - m);
  if (target.is_infinity())
    throw internal_error("PuiseuxSeries: exact inverse needs a finite precision");
  PuiseuxSeries y = monomial(leading_coeff().inv(), -m);
  PuiseuxSeries two = constant(Fq(*f_, f_->from_int(2)));
  for (int it = 0; it < 64; ++it) {
    PuiseuxSeries yn = (y * (two - *this * y)).truncated(target);
    if (yn == y) return y;
    y = yn;
  }
  throw precision_loss_error("PuiseuxSeries: inverse iteration did not stabilize");
}

PuiseuxSeries PuiseuxSeries::pow(long k) const {
  if (k < 0) throw internal_error("PuiseuxSeries: negative power");
  PuiseuxSeries acc = constant(Fq(*f_, 1));
  PuiseuxSeries base = *this;
  while (k > 0) {
    if (k & 1) acc = acc * base;
    base = (k >>= 1) ? base * base : base;
  }
  return acc;
}

bool PuiseuxSeries::operator==(const PuiseuxSeries& o) const {
  PuiseuxSeries a = *this, b = o;
  align(a, b);
  return a.terms_ == b.terms_ && a.prec_num_ == b.prec_num_;
}

std::string PuiseuxSeries::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [n, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    std::string cs = f_->elem_str(c);
    Rational texp(-n, e_);  // exponent of t for this term
    bool unit_coeff = (c == 1);
    if (texp == Rational(0)) {
      os << cs;
      continue;
    }
    if (!unit_coeff) {
      if (cs.find('+') != std::string::npos || cs.find('-') != std::string::npos)
        os << "(" << cs << ")*";
      else
        os << cs << "*";
    }
    os << "t";
    if (texp != Rational(1)) {
      if (texp.den() == 1 && texp.num() >= 0)
        os << "^" << texp.str();
      else
        os << "^(" << texp.str() << ")";
    }
  }
  if (prec_num_ != kExact) {
    if (!first) os << " + ";
    Rational pe = -prec();
    os << "O(t^(" << pe.str() << "))";
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

bool ps_less(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  Rational va = a.known_nonzero() ? a.valuation() : Rational::infinity();
  Rational vb = b.known_nonzero() ? b.valuation() : Rational::infinity();
  if (va != vb) return va < vb;
  auto ta = a.term_list(), tb = b.term_list();
  for (size_t i = 0; i < ta.size() && i < tb.size(); ++i) {
    if (ta[i].first != tb[i].first) return ta[i].first < tb[i].first;
    std::uint64_t qa = ta[i].second.field().q(), qb = tb[i].second.field().q();
    if (qa != qb) return qa < qb;
    if (ta[i].second.code() != tb[i].second.code())
      return ta[i].second.code() < tb[i].second.code();
  }
  if (ta.size() != tb.size()) return ta.size() < tb.size();
  if (a.ram() != b.ram()) return a.ram() < b.ram();
  Rational pa = a.prec(), pb = b.prec();
  return pa < pb;
}

// ---------------------------------------------------------------------------
// polynomials with series coefficients

SeriesPoly to_series_poly(const BiPoly& P) {
  SeriesPoly out;
  if (P.is_zero()) return out;
  const Field& F = *P.field();
  for (long i = 0; i <= P.deg_z(); ++i) {
    TPoly c = P.coeff(i);
    PuiseuxSeries s(&F);
    for (long j = 0; j <= c.deg(); ++j)
      if (c.code(j) != 0)
        s = s + PuiseuxSeries::monomial(Fq(F, c.code(j)), Rational(-j));
    out.push_back(std::move(s));
  }
  return out;
}

PuiseuxSeries series_poly_eval(const SeriesPoly& P, const PuiseuxSeries& x) {
  if (P.empty()) throw internal_error("series_poly_eval: empty polynomial");
  PuiseuxSeries acc = P.back();
  for (long i = static_cast<long>(P.size()) - 2; i >= 0; --i)
    acc = acc * x + P[i];
  return acc;
}

// Q(w) = P(x + w) by synthetic Horner
SeriesPoly series_poly_shift(const SeriesPoly& P, const PuiseuxSeries& x) {
  SeriesPoly Q = P;
  long n = static_cast<long>(Q.size());
  for (long j = 0; j + 1 < n; ++j)
    for (long i = n - 2; i >= j; --i)
      Q[i] = Q[i] + x * Q[i + 1];
  return Q;
}

namespace {

SeriesPoly series_poly_derivative(const SeriesPoly& P) {
  SeriesPoly D;
  for (size_t i = 1; i < P.size(); ++i) {
    const Field& F = *P[i].field();
    D.push_back(P[i] * Fq(F, F.from_int(static_cast<long long>(i))));
  }
  return D;
}

}  // namespace

// ---------------------------------------------------------------------------
// Newton polygon

Rational NewtonPolygon::min_slope() const {
  return segments.empty() ? Rational::infinity() : segments.front().slope;
}

Rational NewtonPolygon::max_slope() const {
  if (segments.empty()) throw internal_error("NewtonPolygon: no segments");
  return segments.back().slope;
}

long NewtonPolygon::total_length() const {
  long s = 0;
  for (const auto& seg : segments) s += seg.length;
  return s;
}

std::string NewtonPolygon::str() const {
  std::ostringstream os;
  os << "ord " << z_order << ";";
  for (const auto& seg : segments)
    os << " (" << seg.slope.str() << ")x" << seg.length;
  return os.str();
}

NewtonPolygon newton_polygon(const SeriesPoly& P) {
  struct Pt {
    long i;
    Rational v;
  };
  std::vector<Pt> known, unknown;
  for (long i = 0; i < static_cast<long>(P.size()); ++i) {
    const PuiseuxSeries& c = P[i];
    if (c.known_nonzero())
      known.push_back({i, c.valuation()});
    else if (!c.is_exact())
      unknown.push_back({i, c.prec()});
  }
  if (known.empty()) {
    if (!unknown.empty())
      throw precision_loss_error("newton_polygon: no coefficient is determined");
    throw internal_error("newton_polygon: zero polynomial");
  }
  long i0 = known.front().i, top = known.back().i;
  for (const auto& u : unknown)
    if (u.i < i0 || u.i > top)
      throw precision_loss_error(
          "newton_polygon: undetermined coefficient of z^" + std::to_string(u.i) +
          " could extend the hull");
  // lower hull, points already sorted by abscissa
  std::vector<Pt> hull;
  auto cross = [](const Pt& o, const Pt& a, const Pt& b) {
    return Rational(a.i - o.i) * (b.v - o.v) - (a.v - o.v) * Rational(b.i - o.i);
  };
  for (const auto& p : known) {
    while (hull.size() >= 2 &&
           !(cross(hull[hull.size() - 2], hull.back(), p) > Rational(0)))
      hull.pop_back();
    hull.push_back(p);
  }
  auto hull_at = [&hull](long i) {
    for (size_t k = 0; k + 1 < hull.size(); ++k)
      if (hull[k].i <= i && i <= hull[k + 1].i) {
        Rational t(i - hull[k].i, hull[k + 1].i - hull[k].i);
        return hull[k].v + t * (hull[k + 1].v - hull[k].v);
      }
    return hull.back().v;
  };
  for (const auto& u : unknown)
    if (u.v < hull_at(u.i))
      throw precision_loss_error(
          "newton_polygon: undetermined coefficient of z^" + std::to_string(u.i) +
          " could dip below the hull");
  NewtonPolygon np;
  np.z_order = i0;
  for (size_t k = 0; k + 1 < hull.size(); ++k) {
    long len = hull[k + 1].i - hull[k].i;
    np.segments.push_back({(hull[k + 1].v - hull[k].v) / Rational(len), len});
  }
  return np;
}

NewtonPolygon newton_polygon(const BiPoly& P) {
  return newton_polygon(to_series_poly(P));
}

// ---------------------------------------------------------------------------
// root expansion

namespace {

// all roots of f with multiplicity, over whatever extensions they need
std::vector<std::pair<Fq, int>> field_roots(const FqPoly& f) {
  std::vector<std::pair<Fq, int>> out;
  FqFactorization fac = poly_factor(f);
  for (const auto& [g, m] : fac.factors) {
    if (g.deg() == 1) {
      out.emplace_back(-g.coeff(0), m);
    } else if (g.deg() > 1) {
      for (const auto& [r, mr] : poly_roots(g, static_cast<int>(g.deg())))
        out.emplace_back(r, m * mr);
    }
  }
  return out;
}

// max over known coefficients of max(0, -valuation); crude padding estimate
// for the precision lost when evaluating at series of negative valuation
Rational eval_padding(const SeriesPoly& P) {
  Rational pad(0);
  for (const auto& c : P)
    if (c.known_nonzero()) pad = rmax(pad, -rmin(Rational(0), c.valuation()));
  return pad;
}

void np_branch(const SeriesPoly& P, const PuiseuxSeries& s, bool has_floor,
               const Rational& floor, bool has_target, const Rational& target,
               long rel_prec, int depth, std::vector<PuiseuxSeries>& out);

// one residual branch: leading coefficient gamma at valuation xi, carrying
// mult roots of P
void np_descend(const SeriesPoly& P, const PuiseuxSeries& s, const Fq& gamma,
                const Rational& xi, int mult, const Rational& target,
                long rel_prec, int depth, std::vector<PuiseuxSeries>& out) {
  if (!(xi < target)) {
    // the next digit is beyond the requested precision: an unresolved
    // cluster of `mult` expansions that agree through the target
    for (int r = 0; r < mult; ++r) out.push_back(s.truncated(target));
    return;
  }
  PuiseuxSeries head = PuiseuxSeries::monomial(gamma, xi);
  if (mult == 1) {
    try {
      PuiseuxSeries x = series_poly_newton(P, head, target);
      PuiseuxSeries full = s + x;
      // exact roots stay exact; refined ones report the requested precision
      out.push_back(full.is_exact() ? full : full.truncated(target));
      return;
    } catch (const precision_loss_error&) {
      // fall through to digit-by-digit descent
    }
  }
  np_branch(series_poly_shift(P, head), s + head, true, xi, true, target,
            rel_prec, depth + 1, out);
}

void np_branch(const SeriesPoly& P, const PuiseuxSeries& s, bool has_floor,
               const Rational& floor, bool has_target, const Rational& target,
               long rel_prec, int depth, std::vector<PuiseuxSeries>& out) {
  if (depth > 1000) throw internal_error("puiseux_roots: descent too deep");
  NewtonPolygon np = newton_polygon(P);
  // z-order roots: s is an exact root of the original polynomial
  for (long r = 0; r < np.z_order; ++r) out.push_back(s);
  // lift the residual coefficients into one common field
  const Field* FC = P.front().field();
  for (const auto& c : P) FC = &compositum(*FC, *c.field());
  long p = FC->p();
  // hull vertices delimit the segments; rebuild the abscissa ranges
  long i = np.z_order;
  Rational v = P[i].valuation();
  for (const auto& seg : np.segments) {
    long i1 = i, i2 = i + seg.length;
    Rational v1 = v;
    i = i2;
    v = v1 + seg.slope * Rational(seg.length);
    Rational xi = -seg.slope;
    if (has_floor && !(floor < xi)) continue;  // not in this branch
    // residual: coefficients of the lattice points on the segment
    std::vector<std::uint32_t> psi(seg.length + 1, 0);
    for (long j = i1; j <= i2; ++j) {
      if (!P[j].known_nonzero()) continue;
      if (P[j].valuation() == v1 + seg.slope * Rational(j - i1))
        psi[j - i1] = P[j].lifted(*FC).leading_coeff().code();
    }
    FqPoly psi_poly(FC, psi);
    if (psi_poly.derivative().is_zero() && seg.slope.den() % p == 0)
      throw wild_ramification_error(
          "inseparable residual on a slope-" + seg.slope.str() +
          " segment: the expansion leaves the tame Puiseux field");
    Rational tgt = has_target ? target : xi + Rational(rel_prec);
    for (const auto& [gamma, mult] : field_roots(psi_poly))
      np_descend(P, s, gamma, xi, mult, tgt, rel_prec, depth, out);
  }
}

}  // namespace

PuiseuxSeries series_poly_newton(const SeriesPoly& P, const PuiseuxSeries& x0,
                                 const Rational& target) {
  if (P.size() < 2) throw internal_error("series_poly_newton: constant polynomial");
  if (!x0.known_nonzero())
    throw internal_error("series_poly_newton: seed without a leading term");
  SeriesPoly D = series_poly_derivative(P);
  Rational xi = x0.valuation();
  Rational pad = Rational(static_cast<long>(P.size()) - 1) *
                     rmax(Rational(0), -xi) +
                 eval_padding(P);
  PuiseuxSeries df0 = series_poly_eval(D, x0);
  if (!df0.known_nonzero()) {
    if (df0.is_exact_zero())
      throw precision_loss_error("series_poly_newton: derivative vanishes at the seed");
    throw precision_loss_error("series_poly_newton: derivative undetermined at the seed");
  }
  Rational w = df0.valuation();
  Rational work = target + pad + rmax(Rational(0), w) + Rational(2);
  PuiseuxSeries x = x0;
  for (int it = 0; it < 96; ++it) {
    PuiseuxSeries fx = series_poly_eval(P, x);
    // an exactly vanishing value certifies x as an exact root; keep it whole
    if (fx.is_exact_zero()) return x;
    if (!fx.known_nonzero()) {
      if (!(fx.prec() < target + w)) return x.truncated(target);
      throw precision_loss_error("series_poly_newton: evaluation precision exhausted");
    }
    PuiseuxSeries dfx = series_poly_eval(D, x);
    if (!dfx.known_nonzero())
      throw precision_loss_error("series_poly_newton: derivative lost its leading term");
    w = dfx.valuation();
    PuiseuxSeries delta = fx * dfx.inv(work - fx.valuation());
    PuiseuxSeries xn = (x - delta).truncated(work);
    if (xn == x) {
      if (!delta.known_nonzero() || !(delta.valuation() < target))
        return x.truncated(target);
      throw precision_loss_error("series_poly_newton: iteration stalled");
    }
    x = xn;
  }
  throw precision_loss_error("series_poly_newton: no convergence within the iteration cap");
}

std::vector<PuiseuxSeries> puiseux_roots(const BiPoly& P, long rel_prec) {
  if (P.is_zero()) throw internal_error("puiseux_roots: zero polynomial");
  if (rel_prec <= 0) throw internal_error("puiseux_roots: nonpositive precision");
  SeriesPoly sp = to_series_poly(P);
  std::vector<PuiseuxSeries> out;
  PuiseuxSeries zero(P.field());
  np_branch(sp, zero, false, Rational(0), false, Rational(0), rel_prec, 0, out);
  if (static_cast<long>(out.size()) != P.deg_z())
    throw internal_error("puiseux_roots: found " + std::to_string(out.size()) +
                         " expansions for degree " + std::to_string(P.deg_z()));
  std::sort(out.begin(), out.end(), ps_less);
  return out;
}

std::vector<PuiseuxSeries> puiseux_roots(const BiPoly& P) {
  return puiseux_roots(P, default_precision(std::max(1L, P.deg_z())));
}

// ---------------------------------------------------------------------------
// disk images, Taylor expansion, separation

Rational series_image_radius(const SeriesPoly& c, const Rational& rho) {
  bool any = false;
  Rational best(0);
  for (size_t i = 1; i < c.size(); ++i) {
    if (!c[i].known_nonzero()) continue;
    Rational cand = Rational(static_cast<long>(i)) * rho - c[i].valuation();
    best = any ? rmax(best, cand) : cand;
    any = true;
  }
  for (size_t i = 1; i < c.size(); ++i) {
    if (c[i].known_nonzero() || c[i].is_exact()) continue;
    Rational bound = Rational(static_cast<long>(i)) * rho - c[i].prec();
    if (!any || bound > best)
      throw precision_loss_error(
          "series_image_radius: undetermined coefficient of y^" +
          std::to_string(i) + " could set the radius");
  }
  if (!any) throw internal_error("series_image_radius: no nonzero coefficients");
  return best;
}

SeriesPoly taylor_at(const RatFamily& fam, const PuiseuxSeries& alpha,
                     long order, const Rational& prec) {
  if (order < 0) throw internal_error("taylor_at: negative order");
  SeriesPoly A = series_poly_shift(to_series_poly(fam.a()), alpha);
  SeriesPoly B = series_poly_shift(to_series_poly(fam.b()), alpha);
  const PuiseuxSeries& B0 = B[0];
  if (B0.is_exact_zero())
    throw pole_at_center_error("taylor_at: denominator vanishes at the center");
  if (!B0.known_nonzero())
    throw precision_loss_error("taylor_at: denominator undetermined at the center");
  Rational vb = B0.valuation();
  Rational absvb = rmax(vb, -vb);
  Rational big = prec + eval_padding(A) +
                 Rational(order + 2) * (eval_padding(B) + absvb) + Rational(2);
  // power-series inverse of B in y: sum_{u<=j} B_u I_{j-u} = 0 for j >= 1
  SeriesPoly I(order + 1, PuiseuxSeries(fam.field()));
  I[0] = B0.inv(big);
  for (long j = 1; j <= order; ++j) {
    PuiseuxSeries acc(fam.field());
    for (long u = 1; u <= j && u < static_cast<long>(B.size()); ++u)
      acc = acc + B[u] * I[j - u];
    I[j] = -(I[0] * acc);
  }
  SeriesPoly c(order + 1, PuiseuxSeries(fam.field()));
  for (long i = 0; i <= order; ++i) {
    for (long u = 0; u <= i && u < static_cast<long>(A.size()); ++u)
      c[i] = c[i] + A[u] * I[i - u];
    c[i] = c[i].truncated(prec);
  }
  return c;
}

std::vector<std::vector<Rational>> root_separation(const BiPoly& P,
                                                   long rel_prec) {
  long rel = rel_prec;
  for (int attempt = 0;; ++attempt) {
    std::vector<PuiseuxSeries> roots = puiseux_roots(P, rel);
    size_t n = roots.size();
    std::vector<std::vector<Rational>> m(
        n, std::vector<Rational>(n, Rational::infinity()));
    bool ok = true;
    for (size_t i = 0; i < n && ok; ++i)
      for (size_t j = i + 1; j < n && ok; ++j) {
        PuiseuxSeries diff = roots[i] - roots[j];
        if (diff.known_nonzero())
          m[i][j] = m[j][i] = diff.valuation();
        else if (!diff.is_exact_zero())
          ok = false;  // agree through the working precision
      }
    if (ok) return m;
    if (attempt >= options().precision_retries)
      throw precision_loss_error(
          "root_separation: expansions agree through precision after retries");
    rel *= 2;
  }
}

}  // namespace dynforge
