#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dynforge/errors.hpp"

namespace dynforge {

class Field;
using FieldPtr = const Field*;

// F_{p^s} with a deterministic modulus: the lexicographically first monic
// irreducible of degree s over F_p (constant coefficient least significant).
// Elements are codes in [0, q): the base-p digits of a code are the
// coordinates in the power basis 1, x, ..., x^{s-1}. Fields are interned in a
// registry and live for the whole process, so FieldPtr comparison is identity.
class Field {
 public:
  long p() const { return p_; }
  int s() const { return s_; }
  std::uint64_t q() const { return q_; }
  // modulus[i] = coefficient of x^i over F_p; modulus[s] == 1.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  // --- arithmetic on element codes ---
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inv(std::uint32_t a) const;
  // Exponent may be negative for invertible a; a^0 == 1 including a == 0.
  std::uint32_t pow(std::uint32_t a, long long e) const;
  // Residue of n as an element of the prime subfield.
  std::uint32_t from_int(long long n) const;
  // p-th root (inverse Frobenius); total since the field is perfect.
  std::uint32_t pth_root(std::uint32_t a) const;
  // A fixed generator of the multiplicative group.
  std::uint32_t generator() const;
  // An element of exact multiplicative order e; requires e | q - 1.
  std::uint32_t unity_root(long e) const;

  std::vector<std::uint32_t> digits(std::uint32_t code) const;
  std::uint32_t from_digits(const std::vector<std::uint32_t>& d) const;

  // Power-basis rendering, e.g. "w^2+2*w+1"; prime fields print the residue.
  std::string elem_str(std::uint32_t code) const;

  // Registry lookup (creates on first use). p must be prime, s >= 1.
  static const Field& get(long p, int s);

 private:
  Field(long p, int s);
  void build_tables();
  std::uint32_t mul_schoolbook(std::uint32_t a, std::uint32_t b) const;

  long p_;
  int s_;
  std::uint64_t q_;
  std::vector<std::uint32_t> modulus_;
  // q <= 2^16: discrete log tables make mul/inv O(1).
  std::vector<std::uint32_t> exp_;  // size 2(q-1)
  std::vector<std::uint32_t> log_;  // size q, log_[0] unused
  std::uint32_t gen_ = 0;
  bool tables_ = false;

  friend struct FieldRegistry;
};

// Value-type wrapper pairing a code with its field. All binary operations
// require identical fields and throw field_mismatch_error otherwise.
class Fq {
 public:
  Fq() : f_(nullptr), c_(0) {}
  Fq(const Field& f, std::uint32_t code) : f_(&f), c_(code) {}

  const Field& field() const {
    if (!f_) throw internal_error("Fq: null element used");
    return *f_;
  }
  std::uint32_t code() const { return c_; }
  bool is_zero() const { return c_ == 0; }
  bool is_one() const { return c_ == 1; }

  friend Fq operator+(const Fq& a, const Fq& b) {
    return Fq(a.same(b), a.field().add(a.c_, b.c_));
  }
  friend Fq operator-(const Fq& a, const Fq& b) {
    return Fq(a.same(b), a.field().sub(a.c_, b.c_));
  }
  friend Fq operator*(const Fq& a, const Fq& b) {
    return Fq(a.same(b), a.field().mul(a.c_, b.c_));
  }
  friend Fq operator/(const Fq& a, const Fq& b) {
    return Fq(a.same(b), a.field().mul(a.c_, a.field().inv(b.c_)));
  }
  Fq operator-() const { return Fq(field(), field().neg(c_)); }
  Fq inv() const { return Fq(field(), field().inv(c_)); }
  Fq pow(long long e) const { return Fq(field(), field().pow(c_, e)); }

  friend bool operator==(const Fq& a, const Fq& b) {
    return a.f_ == b.f_ && a.c_ == b.c_;
  }
  friend bool operator!=(const Fq& a, const Fq& b) { return !(a == b); }

  std::string str() const { return field().elem_str(c_); }

 private:
  const Field& same(const Fq& b) const {
    if (f_ != b.f_)
      throw field_mismatch_error("Fq: elements of different fields");
    return field();
  }
  FieldPtr f_;
  std::uint32_t c_;
};

// Deterministic field construction; throws not_prime_error for composite p.
const Field& make_field(long p, int s);

// F_{q^k} realized as F_{p^{s*k}} through the registry.
const Field& extension_field(const Field& base, int k);

// Canonical compatible embedding (see field_tower.cpp for the scheme).
// Requires from.s | to.s and equal characteristic.
Fq embed(const Fq& x, const Field& to);
std::uint32_t embed_code(const Field& from, std::uint32_t code, const Field& to);

// Partial inverse of embed: the preimage in `to`, if x lies in its image.
std::optional<Fq> project(const Fq& x, const Field& to);

// Smallest m with base.s | m*base.s | x-field degree and x in F_{q_base^m}.
int min_subfield_degree(const Fq& x, const Field& base);

}  // namespace dynforge
