#include "dynforge/ff.hpp"

#include <vector>

#include "doctest.h"

using namespace dynforge;

TEST_CASE("prime field has modulus x") {
  const Field& F = make_field(2, 1);
  CHECK(F.q() == 2);
  CHECK(F.modulus() == std::vector<std::uint32_t>{0, 1});
}

TEST_CASE("modulus is the first monic irreducible in code order") {
  const Field& F9 = make_field(3, 2);
  CHECK(F9.modulus() == std::vector<std::uint32_t>{1, 0, 1});  // x^2+1
  const Field& F4 = make_field(2, 2);
  CHECK(F4.modulus() == std::vector<std::uint32_t>{1, 1, 1});  // x^2+x+1
}

TEST_CASE("composite characteristic is rejected") {
  CHECK_THROWS_AS(make_field(4, 1), not_prime_error);
  CHECK_THROWS_AS(make_field(1, 1), not_prime_error);
}

TEST_CASE("field axioms and Frobenius closure") {
  for (auto [p, s] : {std::pair<long, int>{2, 1}, {2, 2}, {2, 4}, {3, 1},
                      {3, 2}, {5, 1}, {7, 1}, {2, 6}}) {
    const Field& F = make_field(p, s);
    std::uint64_t q = F.q();
    for (std::uint32_t a = 0; a < q; ++a) {
      CHECK(F.pow(a, static_cast<long long>(q)) == a);
      if (a) CHECK(F.pow(a, static_cast<long long>(q) - 1) == 1);
      if (a) CHECK(F.mul(a, F.inv(a)) == 1);
      CHECK(F.add(a, F.neg(a)) == 0);
      CHECK(F.pow(F.pth_root(a), p) == a);
    }
    // distributivity on a small grid
    for (std::uint32_t a = 0; a < q && a < 8; ++a)
      for (std::uint32_t b = 0; b < q && b < 8; ++b)
        for (std::uint32_t c = 0; c < q && c < 8; ++c) {
          CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
          CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
        }
  }
}

TEST_CASE("unity roots have exact order") {
  const Field& F = make_field(3, 2);
  for (long e : {1L, 2L, 4L, 8L}) {
    std::uint32_t z = F.unity_root(e);
    CHECK(F.pow(z, e) == 1);
    for (long k = 1; k < e; ++k) CHECK(F.pow(z, k) != 1);
  }
  CHECK_THROWS_AS(F.unity_root(3), error);
}

TEST_CASE("embedding is a ring homomorphism") {
  const Field& F9 = make_field(3, 2);
  const Field& F81 = extension_field(F9, 2);
  for (std::uint32_t a = 0; a < 9; ++a)
    for (std::uint32_t b = 0; b < 9; ++b) {
      Fq x(F9, a), y(F9, b);
      CHECK(embed(x + y, F81) == embed(x, F81) + embed(y, F81));
      CHECK(embed(x * y, F81) == embed(x, F81) * embed(y, F81));
    }
  CHECK(embed(Fq(F9, 1), F81).code() == 1);
}

TEST_CASE("embed and project are mutually inverse") {
  const Field& F4 = make_field(2, 2);
  const Field& F16 = extension_field(F4, 2);
  int in_image = 0;
  for (std::uint32_t a = 0; a < 16; ++a) {
    auto back = project(Fq(F16, a), F4);
    if (back) {
      ++in_image;
      CHECK(embed(*back, F16).code() == a);
    }
  }
  CHECK(in_image == 4);
  for (std::uint32_t a = 0; a < 4; ++a)
    CHECK(project(embed(Fq(F4, a), F16), F4)->code() == a);
}

TEST_CASE("embeddings commute across intermediate fields") {
  // two different routes from F_4 to F_{2^12}
  const Field& A = make_field(2, 2);
  const Field& B1 = make_field(2, 4);
  const Field& B2 = make_field(2, 6);
  const Field& C = make_field(2, 12);
  for (std::uint32_t a = 0; a < 4; ++a) {
    Fq x(A, a);
    Fq direct = embed(x, C);
    CHECK(embed(embed(x, B1), C) == direct);
    CHECK(embed(embed(x, B2), C) == direct);
  }
  // odd characteristic tower
  const Field& A3 = make_field(3, 2);
  const Field& B3 = make_field(3, 4);
  const Field& C3 = make_field(3, 8);
  for (std::uint32_t a = 0; a < 9; ++a) {
    Fq x(A3, a);
    CHECK(embed(embed(x, B3), C3) == embed(x, C3));
  }
}

TEST_CASE("minimal subfield degree detection") {
  const Field& F2 = make_field(2, 1);
  const Field& F4 = make_field(2, 2);
  const Field& F16 = extension_field(F2, 4);
  CHECK(min_subfield_degree(Fq(F16, 1), F2) == 1);
  CHECK(min_subfield_degree(embed(Fq(F4, 2), F16), F2) == 2);
  // a generator of F_16 lies in no proper subfield
  CHECK(min_subfield_degree(Fq(F16, F16.generator()), F2) == 4);
  CHECK(min_subfield_degree(Fq(F16, F16.generator()), F4) == 2);
}

TEST_CASE("cross-field arithmetic is a hard error") {
  const Field& F2 = make_field(2, 1);
  const Field& F3 = make_field(3, 1);
  CHECK_THROWS_AS(Fq(F2, 1) + Fq(F3, 1), field_mismatch_error);
  CHECK_THROWS_AS(embed(Fq(F3, 1), F2), field_mismatch_error);
}
