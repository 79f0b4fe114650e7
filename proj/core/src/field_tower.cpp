#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <utility>
#include <vector>

#include "dynforge/fq_poly.hpp"

namespace dynforge {

namespace {

long smallest_prime_factor(long n) {
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return d;
  return n;
}

// Applies the embedding determined by x_from -> root to a code of `from`.
std::uint32_t apply_root(const Field& from, std::uint32_t code,
                         const Field& to, std::uint32_t root) {
  std::vector<std::uint32_t> d = from.digits(code);
  std::uint32_t acc = 0;
  for (int i = from.s() - 1; i >= 0; --i)
    acc = to.add(to.mul(acc, root), d[i]);  // digits are prime-field residues
  return acc;
}

// Lazily built system of embeddings between the interned fields. Edges of
// prime relative degree carry an explicitly chosen root of the source
// modulus; every other embedding is the composite along the chain that
// multiplies the degree by its smallest prime factor first. A new prime-step
// edge into a field T is chosen as the smallest root consistent, on the
// pairwise gcd subfields, with the prime-step edges into T already present.
// That pairwise condition makes all chains between two fields agree, so the
// composites are well defined and embed/project commute across any tower.
struct EmbeddingRegistry {
  std::recursive_mutex mu;
  // (from, to) -> image of the power-basis generator x_from in `to`
  std::map<std::pair<FieldPtr, FieldPtr>, std::uint32_t> prime_step;
  std::map<std::pair<FieldPtr, FieldPtr>, std::uint32_t> composite;

  static EmbeddingRegistry& instance() {
    static EmbeddingRegistry r;
    return r;
  }

  std::uint32_t sigma(const Field& from, const Field& to) {
    auto key = std::make_pair<FieldPtr, FieldPtr>(&from, &to);
    auto it = prime_step.find(key);
    if (it != prime_step.end()) return it->second;

    // Consistency constraints from the other prime-step edges into `to`:
    // on the subfield F_{p^m} shared with the other source, the two routes
    // must agree. Constraint (u, w): the new edge must send u to w.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> constraints;
    for (const auto& [k2, r2] : prime_step) {
      if (k2.second != &to || k2.first == &from) continue;
      const Field& other = *k2.first;
      long m = std::gcd(static_cast<long>(from.s()),
                        static_cast<long>(other.s()));
      if (m == 1) continue;  // prime subfield is fixed by every hom
      const Field& M = Field::get(from.p(), static_cast<int>(m));
      std::uint32_t xm = static_cast<std::uint32_t>(M.p());  // code of x_M
      std::uint32_t u = embed_code(M, xm, from);
      std::uint32_t w = embed_code(other, embed_code(M, xm, other), to);
      constraints.emplace_back(u, w);
    }

    // Candidate images: roots of the source modulus inside `to`, scanned in
    // code order. The modulus has prime-field coefficients, so its codes are
    // valid in `to` as written.
    std::vector<std::uint32_t> mod32(from.modulus().begin(),
                                     from.modulus().end());
    FqPoly f(&to, std::move(mod32));
    for (const auto& [root, mult] : poly_roots(f)) {
      bool ok = true;
      for (const auto& [u, w] : constraints) {
        if (apply_root(from, u, to, root.code()) != w) {
          ok = false;
          break;
        }
      }
      if (ok) {
        prime_step.emplace(key, root.code());
        return root.code();
      }
    }
    throw internal_error("embedding registry: no consistent root exists");
  }

  std::uint32_t image_of_x(const Field& from, const Field& to) {
    auto key = std::make_pair<FieldPtr, FieldPtr>(&from, &to);
    auto it = composite.find(key);
    if (it != composite.end()) return it->second;
    long quot = to.s() / from.s();
    std::uint32_t r;
    long spf = smallest_prime_factor(quot);
    if (spf == quot) {
      r = sigma(from, to);
    } else {
      const Field& mid = Field::get(from.p(), from.s() * static_cast<int>(spf));
      std::uint32_t rm = image_of_x(from, mid);
      r = embed_code(mid, rm, to);
    }
    composite.emplace(key, r);
    return r;
  }
};

}  // namespace

std::uint32_t embed_code(const Field& from, std::uint32_t code,
                         const Field& to) {
  if (&from == &to) return code;
  if (from.p() != to.p() || to.s() % from.s() != 0)
    throw field_mismatch_error("embed: target is not an extension");
  if (from.s() == 1) return code;  // prime-field residues keep their codes
  EmbeddingRegistry& reg = EmbeddingRegistry::instance();
  std::lock_guard<std::recursive_mutex> lock(reg.mu);
  std::uint32_t r = reg.image_of_x(from, to);
  return apply_root(from, code, to, r);
}

Fq embed(const Fq& x, const Field& to) {
  return Fq(to, embed_code(x.field(), x.code(), to));
}

std::optional<Fq> project(const Fq& x, const Field& to) {
  const Field& from = x.field();
  if (&from == &to) return x;
  if (from.p() != to.p() || from.s() % to.s() != 0)
    throw field_mismatch_error("project: source is not an extension");
  if (to.s() == 1)
    return x.code() < static_cast<std::uint32_t>(from.p())
               ? std::optional<Fq>(Fq(to, x.code()))
               : std::nullopt;
  std::uint32_t r;
  {
    EmbeddingRegistry& reg = EmbeddingRegistry::instance();
    std::lock_guard<std::recursive_mutex> lock(reg.mu);
    r = reg.image_of_x(to, from);
  }
  // Solve over F_p: sum_i d_i * r^i = x with 0 <= d_i < p.
  long p = from.p();
  int rows = from.s(), cols = to.s();
  std::vector<std::vector<std::uint32_t>> m(rows,
                                            std::vector<std::uint32_t>(cols + 1));
  std::uint32_t rpow = 1;
  for (int j = 0; j < cols; ++j) {
    std::vector<std::uint32_t> dj = from.digits(rpow);
    for (int i = 0; i < rows; ++i) m[i][j] = dj[i];
    rpow = from.mul(rpow, r);
  }
  std::vector<std::uint32_t> dx = from.digits(x.code());
  for (int i = 0; i < rows; ++i) m[i][cols] = dx[i];

  auto inv_mod = [p](std::uint32_t a) {
    std::uint64_t base = a, acc = 1;
    for (long e = p - 2; e; e >>= 1) {
      if (e & 1) acc = acc * base % p;
      base = base * base % p;
    }
    return static_cast<std::uint32_t>(acc);
  };

  std::vector<int> pivot_col(rows, -1);
  int rank = 0;
  for (int j = 0; j < cols && rank < rows; ++j) {
    int piv = -1;
    for (int i = rank; i < rows; ++i)
      if (m[i][j]) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[rank], m[piv]);
    std::uint32_t inv = inv_mod(m[rank][j]);
    for (int k = j; k <= cols; ++k)
      m[rank][k] = static_cast<std::uint32_t>(
          static_cast<std::uint64_t>(m[rank][k]) * inv % p);
    for (int i = 0; i < rows; ++i) {
      if (i == rank || !m[i][j]) continue;
      std::uint32_t c = m[i][j];
      for (int k = j; k <= cols; ++k) {
        std::uint64_t sub = static_cast<std::uint64_t>(c) * m[rank][k] % p;
        m[i][k] = static_cast<std::uint32_t>((m[i][k] + p - sub) % p);
      }
    }
    pivot_col[rank] = j;
    ++rank;
  }
  for (int i = rank; i < rows; ++i)
    if (m[i][cols]) return std::nullopt;  // inconsistent: x is outside
  std::vector<std::uint32_t> d(cols, 0);
  for (int i = 0; i < rank; ++i) d[pivot_col[i]] = m[i][cols];
  return Fq(to, to.from_digits(d));
}

int min_subfield_degree(const Fq& x, const Field& base) {
  const Field& F = x.field();
  if (F.p() != base.p() || F.s() % base.s() != 0)
    throw field_mismatch_error("min_subfield_degree: not a subfield chain");
  int n = F.s() / base.s();
  for (int m = 1; m <= n; ++m) {
    if (n % m != 0) continue;
    std::uint32_t y = x.code();
    for (int i = 0; i < m * base.s(); ++i) y = F.pow(y, F.p());
    if (y == x.code()) return m;
  }
  throw internal_error("min_subfield_degree: element escaped its own field");
}

}  // namespace dynforge
