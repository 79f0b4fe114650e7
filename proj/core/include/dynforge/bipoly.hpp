#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dynforge/fq_poly.hpp"

namespace dynforge {

// Univariate polynomials in the parameter t.
using TPoly = FqPoly;

// Reduced fraction of TPoly with monic denominator. The field F_q(t) shows up
// only transiently: gcds of z-polynomials and exact trial division. Nothing
// here stores rational functions long term.
class RatFunc {
 public:
  RatFunc() = default;
  explicit RatFunc(TPoly num) : num_(std::move(num)) {
    den_ = FqPoly::constant(Fq(*num_.field(), 1));
  }
  RatFunc(TPoly num, TPoly den);

  const TPoly& num() const { return num_; }
  const TPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.deg() == 0; }

  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  bool operator==(const RatFunc& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }

 private:
  void reduce();
  TPoly num_, den_;
};

// Polynomial in z with TPoly coefficients. Also carries an optional declared
// homogeneous degree: with hom_deg() == h >= deg_z, the value represents
// sum_i c_i(t) X^i Y^{h-i}, so Y-multiplicities beyond the dehomogenized view
// survive exactly. hom_deg() == -1 means plain dehomogenized z-polynomial.
class BiPoly {
 public:
  BiPoly() = default;
  explicit BiPoly(FieldPtr f) : field_(f) {}
  BiPoly(FieldPtr f, std::vector<TPoly> zc, long hom_deg = -1);
  static BiPoly from_tpoly(const TPoly& c);           // constant in z
  static BiPoly z(FieldPtr f);                        // X when hom_deg is set
  static BiPoly one_y(FieldPtr f);                    // the factor Y: 1 with hom_deg 1

  FieldPtr field() const { return field_; }
  long deg_z() const { return static_cast<long>(c_.size()) - 1; }
  long deg_t() const;
  long ord_z() const;                                 // lowest z power; 0 for zero poly
  long hom_deg() const { return hom_; }
  bool is_zero() const { return c_.empty(); }
  // multiplicity of Y in the homogeneous view
  long y_mult() const { return hom_ < 0 ? 0 : hom_ - deg_z(); }

  TPoly coeff(long i) const;
  const std::vector<TPoly>& coeffs() const { return c_; }
  void set_coeff(long i, TPoly p);
  void set_hom_deg(long h);
  BiPoly dehom() const;                               // drops the declared degree

  BiPoly operator+(const BiPoly& o) const;
  BiPoly operator-(const BiPoly& o) const;
  BiPoly operator-() const;
  BiPoly operator*(const BiPoly& o) const;
  BiPoly operator*(const TPoly& s) const;
  bool operator==(const BiPoly& o) const;
  bool operator!=(const BiPoly& o) const { return !(*this == o); }

  BiPoly derivative_z() const;
  BiPoly derivative_t() const;
  BiPoly shift_z(long k) const;                       // multiply by z^k
  BiPoly substitute_z_pow(long k) const;              // z -> z^k
  // inverse of substitute_z_pow; every z-exponent must be divisible by k
  BiPoly unsubstitute_z_pow(long k) const;

  // t-content (monic gcd of all coefficients) and the content-free quotient
  TPoly content_t() const;
  BiPoly primitive_t() const;
  // canonical scalar normalization: leading coefficient of the z-leading
  // TPoly becomes 1; returns the unit used
  std::pair<BiPoly, Fq> unit_normalized() const;

  // substitute the dehomogenized variable: z -> g(z)/h(z) cleared, i.e. the
  // homogeneous composite H(A, B) for H of declared degree
  // (used by iteration); requires hom_deg() >= 0
  BiPoly compose_hom(const BiPoly& A, const BiPoly& B) const;

  FqPoly specialize(const Fq& tau) const;             // t -> tau, any extension
  TPoly eval_z_tpoly(const TPoly& x) const;           // z -> x(t)
  RatFunc eval_z(const RatFunc& x) const;

  std::string str() const;                            // dehomogenized, variable z
  std::string str_hom() const;                        // X, Y view

 private:
  void trim();
  void check_same(const BiPoly& o) const;

  FieldPtr field_ = nullptr;
  std::vector<TPoly> c_;
  long hom_ = -1;
};

// gcd in z over F_q(t), returned primitive in t with unit-normalized scalar.
BiPoly bi_gcd_z(const BiPoly& a, const BiPoly& b);
// quotient of an exact division in F_q[t][z]; throws internal_error otherwise
BiPoly bi_div_exact(const BiPoly& a, const BiPoly& b);
// division test over F_q(t) that tolerates non-exactness
bool bi_divides(const BiPoly& d, const BiPoly& a);

struct BiSquarefreePart {
  BiPoly part;
  int exponent;
  bool inseparable;  // true when d(part)/dz == 0 (irreducible factors are
                     // inseparable in z; only possible in characteristic p)
};

struct BiSquarefreeDecomposition {
  TPoly content;                        // t-content of the input
  Fq unit;
  std::vector<BiSquarefreePart> parts;  // pairwise coprime, exponent ascending
};

BiSquarefreeDecomposition bi_squarefree(const BiPoly& P);

// Normalized 1-parameter family f_t = a/b of z-degree d >= 2.
class RatFamily {
 public:
  RatFamily(const BiPoly& a_raw, const BiPoly& b_raw);

  const BiPoly& a() const { return a_; }
  const BiPoly& b() const { return b_; }
  long d() const { return d_; }
  FieldPtr field() const { return a_.field(); }
  // homogeneous pair of declared degree d
  const BiPoly& A() const { return A_; }
  const BiPoly& B() const { return B_; }

  std::string str() const;

 private:
  BiPoly a_, b_, A_, B_;
  long d_ = 0;
};

// (A_m, B_m): m-fold composition of the homogeneous pair, degree d^m.
std::pair<BiPoly, BiPoly> iterate(const RatFamily& fam, int m);

// A_{m+n} B_m - A_m B_{m+n}, homogeneous of degree d^{m+n} + d^m.
BiPoly dynatomic_raw(const RatFamily& fam, int m, int n);

}  // namespace dynforge
