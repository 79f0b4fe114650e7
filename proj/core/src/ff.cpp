#include "dynforge/ff.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

#include "dynforge/config.hpp"

namespace dynforge {

Options& options() {
  static Options opts;
  return opts;
}

namespace {

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<long> prime_factors(std::uint64_t n) {
  std::vector<long> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(static_cast<long>(d));
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(static_cast<long>(n));
  return out;
}

// --- dense univariate arithmetic over F_p, used only for modulus search ---

using PPoly = std::vector<std::uint32_t>;  // coeffs mod p, index = power

void ptrim(PPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

PPoly pmulmod(const PPoly& a, const PPoly& b, const PPoly& f, long p) {
  if (a.empty() || b.empty()) return {};
  PPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>(
          (r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
  }
  // reduce mod monic f
  long df = static_cast<long>(f.size()) - 1;
  for (long i = static_cast<long>(r.size()) - 1; i >= df; --i) {
    std::uint32_t c = r[i];
    if (!c) continue;
    r[i] = 0;
    for (long j = 0; j < df; ++j) {
      std::uint64_t sub = static_cast<std::uint64_t>(c) * f[j] % p;
      r[i - df + j] =
          static_cast<std::uint32_t>((r[i - df + j] + p - sub) % p);
    }
  }
  ptrim(r);
  return r;
}

PPoly ppowmod(PPoly base, std::uint64_t e, const PPoly& f, long p) {
  PPoly r = {1};
  while (e) {
    if (e & 1) r = pmulmod(r, base, f, p);
    base = pmulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

PPoly pgcd(PPoly a, PPoly b, long p) {
  ptrim(a);
  ptrim(b);
  while (!b.empty()) {
    // a mod b with b made monic on the fly
    std::uint32_t lc = b.back();
    std::uint32_t lcinv = 1;
    if (lc != 1) {
      // Fermat inverse
      std::uint64_t base = lc, acc = 1;
      for (long e = p - 2; e; e >>= 1) {
        if (e & 1) acc = acc * base % p;
        base = base * base % p;
      }
      lcinv = static_cast<std::uint32_t>(acc);
    }
    PPoly r = a;
    long db = static_cast<long>(b.size()) - 1;
    while (static_cast<long>(r.size()) - 1 >= db && !r.empty()) {
      std::uint32_t c =
          static_cast<std::uint32_t>(static_cast<std::uint64_t>(r.back()) * lcinv % p);
      long shift = static_cast<long>(r.size()) - 1 - db;
      for (long j = 0; j <= db; ++j) {
        std::uint64_t sub = static_cast<std::uint64_t>(c) * b[j] % p;
        r[shift + j] = static_cast<std::uint32_t>((r[shift + j] + p - sub) % p);
      }
      ptrim(r);
    }
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Rabin irreducibility over F_p: x^{p^s} == x mod f and gcd(x^{p^{s/r}} - x, f)
// trivial for each prime r | s.
bool pirreducible(const PPoly& f, long p, int s) {
  PPoly x = {0, 1};
  PPoly fr = x;
  // fr = x^{p^k} mod f, advanced one Frobenius power at a time
  std::vector<PPoly> frob_at(s + 1);
  frob_at[0] = x;
  for (int k = 1; k <= s; ++k)
    frob_at[k] = ppowmod(frob_at[k - 1], static_cast<std::uint64_t>(p), f, p);
  PPoly diff = frob_at[s];
  // diff - x
  if (diff.size() < 2) diff.resize(2, 0);
  diff[1] = static_cast<std::uint32_t>((diff[1] + p - 1) % p);
  ptrim(diff);
  if (!diff.empty()) return false;
  for (long r : prime_factors(static_cast<std::uint64_t>(s))) {
    PPoly d = frob_at[s / r];
    if (d.size() < 2) d.resize(2, 0);
    d[1] = static_cast<std::uint32_t>((d[1] + p - 1) % p);
    ptrim(d);
    PPoly g = pgcd(f, d, p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace

Field::Field(long p, int s) : p_(p), s_(s) {
  q_ = 1;
  for (int i = 0; i < s; ++i) q_ *= static_cast<std::uint64_t>(p);
  if (q_ > (1ULL << 20))
    throw size_limit_error("field size q = p^s exceeds 2^20");
  if (s == 1) {
    modulus_ = {0, 1};
  } else {
    // lexicographically first monic irreducible: scan constant-first digit
    // encodings k = 0, 1, ...
    for (std::uint64_t k = 0;; ++k) {
      if (k >= q_) throw internal_error("no irreducible modulus found");
      PPoly f(s + 1, 0);
      std::uint64_t v = k;
      for (int i = 0; i < s; ++i) {
        f[i] = static_cast<std::uint32_t>(v % p);
        v /= p;
      }
      f[s] = 1;
      if (pirreducible(f, p, s)) {
        modulus_ = f;
        break;
      }
    }
  }
  build_tables();
}

std::vector<std::uint32_t> Field::digits(std::uint32_t code) const {
  std::vector<std::uint32_t> d(s_);
  for (int i = 0; i < s_; ++i) {
    d[i] = code % static_cast<std::uint32_t>(p_);
    code /= static_cast<std::uint32_t>(p_);
  }
  return d;
}

std::uint32_t Field::from_digits(const std::vector<std::uint32_t>& d) const {
  std::uint32_t code = 0;
  for (int i = s_ - 1; i >= 0; --i)
    code = code * static_cast<std::uint32_t>(p_) + (i < static_cast<int>(d.size()) ? d[i] : 0);
  return code;
}

std::uint32_t Field::add(std::uint32_t a, std::uint32_t b) const {
  if (p_ == 2) return a ^ b;
  std::uint32_t r = 0, mul = 1;
  for (int i = 0; i < s_; ++i) {
    std::uint32_t da = a % p_, db = b % p_;
    a /= static_cast<std::uint32_t>(p_);
    b /= static_cast<std::uint32_t>(p_);
    r += ((da + db) % p_) * mul;
    mul *= static_cast<std::uint32_t>(p_);
  }
  return r;
}

std::uint32_t Field::neg(std::uint32_t a) const {
  if (p_ == 2) return a;
  std::uint32_t r = 0, mul = 1;
  for (int i = 0; i < s_; ++i) {
    std::uint32_t da = a % p_;
    a /= static_cast<std::uint32_t>(p_);
    r += ((p_ - da) % p_) * mul;
    mul *= static_cast<std::uint32_t>(p_);
  }
  return r;
}

std::uint32_t Field::sub(std::uint32_t a, std::uint32_t b) const {
  return add(a, neg(b));
}

std::uint32_t Field::mul_schoolbook(std::uint32_t a, std::uint32_t b) const {
  if (!a || !b) return 0;
  std::vector<std::uint32_t> da = digits(a), db = digits(b);
  std::vector<std::uint32_t> r(2 * s_ - 1, 0);
  for (int i = 0; i < s_; ++i) {
    if (!da[i]) continue;
    for (int j = 0; j < s_; ++j)
      r[i + j] = static_cast<std::uint32_t>(
          (r[i + j] + static_cast<std::uint64_t>(da[i]) * db[j]) % p_);
  }
  for (int i = 2 * s_ - 2; i >= s_; --i) {
    std::uint32_t c = r[i];
    if (!c) continue;
    r[i] = 0;
    for (int j = 0; j < s_; ++j) {
      std::uint64_t sub = static_cast<std::uint64_t>(c) * modulus_[j] % p_;
      r[i - s_ + j] = static_cast<std::uint32_t>((r[i - s_ + j] + p_ - sub) % p_);
    }
  }
  r.resize(s_);
  return from_digits(r);
}

void Field::build_tables() {
  // generator search first (needed with or without tables)
  std::vector<long> qfac = prime_factors(q_ - 1);
  for (std::uint32_t g = 1; g < q_; ++g) {
    bool ok = true;
    for (long r : qfac) {
      // g^{(q-1)/r} via schoolbook pow
      std::uint64_t e = (q_ - 1) / static_cast<std::uint64_t>(r);
      std::uint32_t acc = 1, base = g;
      while (e) {
        if (e & 1) acc = mul_schoolbook(acc, base);
        base = mul_schoolbook(base, base);
        e >>= 1;
      }
      if (acc == 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      gen_ = g;
      break;
    }
  }
  if (q_ == 2) gen_ = 1;
  if (!gen_) throw internal_error("no multiplicative generator found");
  if (q_ <= (1ULL << 16)) {
    std::uint32_t n = static_cast<std::uint32_t>(q_ - 1);
    exp_.resize(2 * n);
    log_.assign(q_, 0);
    std::uint32_t cur = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
      exp_[i] = cur;
      exp_[i + n] = cur;
      log_[cur] = i;
      cur = mul_schoolbook(cur, gen_);
    }
    tables_ = true;
  }
}

std::uint32_t Field::mul(std::uint32_t a, std::uint32_t b) const {
  if (!a || !b) return 0;
  if (tables_) return exp_[log_[a] + log_[b]];
  return mul_schoolbook(a, b);
}

std::uint32_t Field::inv(std::uint32_t a) const {
  if (!a) throw internal_error("field inverse of zero");
  if (tables_) {
    std::uint32_t n = static_cast<std::uint32_t>(q_ - 1);
    std::uint32_t l = log_[a];
    return exp_[(n - l) % n];
  }
  return pow(a, static_cast<long long>(q_) - 2);
}

std::uint32_t Field::pow(std::uint32_t a, long long e) const {
  if (e == 0) return 1;
  if (!a) {
    if (e < 0) throw internal_error("field inverse of zero");
    return 0;
  }
  std::uint64_t n = q_ - 1;
  long long em = e % static_cast<long long>(n);
  if (em < 0) em += static_cast<long long>(n);
  if (tables_) return exp_[static_cast<std::uint64_t>(log_[a]) * em % n];
  std::uint32_t acc = 1, base = a;
  std::uint64_t k = static_cast<std::uint64_t>(em);
  while (k) {
    if (k & 1) acc = mul_schoolbook(acc, base);
    base = mul_schoolbook(base, base);
    k >>= 1;
  }
  return acc;
}

std::uint32_t Field::from_int(long long n) const {
  long long r = n % p_;
  if (r < 0) r += p_;
  return static_cast<std::uint32_t>(r);
}

std::uint32_t Field::pth_root(std::uint32_t a) const {
  // Frobenius is bijective: a^{p^{s-1}} is the p-th root.
  std::uint32_t r = a;
  for (int i = 0; i < s_ - 1; ++i) r = pow(r, p_);
  return r;
}

std::uint32_t Field::generator() const { return gen_; }

std::uint32_t Field::unity_root(long e) const {
  if (e <= 0 || (q_ - 1) % static_cast<std::uint64_t>(e) != 0)
    throw internal_error("unity_root: order does not divide q-1");
  return pow(gen_, static_cast<long long>((q_ - 1) / static_cast<std::uint64_t>(e)));
}

std::string Field::elem_str(std::uint32_t code) const {
  if (s_ == 1) return std::to_string(code);
  if (code == 0) return "0";
  std::vector<std::uint32_t> d = digits(code);
  std::string out;
  for (int i = s_ - 1; i >= 0; --i) {
    if (!d[i]) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(d[i]);
    } else {
      if (d[i] != 1) out += std::to_string(d[i]) + "*";
      out += (i == 1) ? "w" : "w^" + std::to_string(i);
    }
  }
  return out;
}

struct FieldRegistry {
  std::mutex mu;
  std::map<std::pair<long, int>, std::unique_ptr<Field>> fields;

  const Field& get(long p, int s) {
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, s);
    auto it = fields.find(key);
    if (it == fields.end())
      it = fields.emplace(key, std::unique_ptr<Field>(new Field(p, s))).first;
    return *it->second;
  }

  static FieldRegistry& instance() {
    static FieldRegistry r;
    return r;
  }
};

const Field& Field::get(long p, int s) { return FieldRegistry::instance().get(p, s); }

const Field& make_field(long p, int s) {
  if (!is_prime(p))
    throw not_prime_error("make_field: p = " + std::to_string(p) + " is not prime");
  if (s < 1) throw error("make_field: extension degree must be >= 1");
  return Field::get(p, s);
}

const Field& extension_field(const Field& base, int k) {
  if (k < 1) throw error("extension_field: degree must be >= 1");
  return Field::get(base.p(), base.s() * k);
}

}  // namespace dynforge
