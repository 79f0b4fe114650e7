#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "dynforge/errors.hpp"

namespace dynforge {

// Exact rational with a +infinity point, used for valuations and log-radii.
// Finite values keep den > 0 and gcd(|num|, den) == 1; +infinity is the
// valuation of an exact zero and compares greater than every finite value.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  Rational(std::int64_t n) : num_(n), den_(1) {}
  Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

  static Rational infinity() {
    Rational r;
    r.num_ = 1;
    r.den_ = 0;
    return r;
  }

  bool is_infinity() const { return den_ == 0; }
  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (a.is_infinity() || b.is_infinity()) return infinity();
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    if (a.is_infinity() && b.is_infinity())
      throw internal_error("Rational: infinity - infinity");
    if (a.is_infinity()) return infinity();
    if (b.is_infinity()) throw internal_error("Rational: finite - infinity");
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    if (a.is_infinity() || b.is_infinity()) {
      if ((a.is_infinity() && b.sign() <= 0) || (b.is_infinity() && a.sign() <= 0))
        throw internal_error("Rational: infinity * nonpositive");
      return infinity();
    }
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_infinity() || b.num_ == 0)
      throw internal_error("Rational: division by zero or infinity");
    if (a.is_infinity()) return infinity();
    return Rational(a.num_ * (b.num_ < 0 ? -b.den_ : b.den_),
                    a.den_ * (b.num_ < 0 ? -b.num_ : b.num_));
  }
  Rational operator-() const {
    if (is_infinity()) throw internal_error("Rational: negating infinity");
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    if (a.is_infinity()) return false;
    if (b.is_infinity()) return true;
    return a.num_ * b.den_ < b.num_ * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  int sign() const {
    if (is_infinity()) return 1;
    return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0);
  }

  // Smallest integer >= value; requires a finite value.
  std::int64_t ceil() const {
    if (is_infinity()) throw internal_error("Rational: ceil of infinity");
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0) ++q;
    return q;
  }

  std::string str() const {
    if (is_infinity()) return "inf";
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  void normalize() {
    if (den_ == 0) throw internal_error("Rational: zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  std::int64_t num_;
  std::int64_t den_;  // 0 encodes +infinity
};

inline Rational rmin(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational rmax(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace dynforge
