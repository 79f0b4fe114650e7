#include "dynforge/certify.hpp"

#include <array>
#include <random>
#include <vector>

#include "dynforge/errors.hpp"

#include "doctest.h"

using namespace dynforge;

namespace {

constexpr CheckStatus P = CheckStatus::Pass;
constexpr CheckStatus F = CheckStatus::Fail;
constexpr CheckStatus U = CheckStatus::Unknown;

TPoly tp(const Field& F_, std::vector<std::uint32_t> codes) {
  return TPoly(&F_, std::move(codes));
}

BiPoly bp(const Field& F_, std::vector<std::vector<std::uint32_t>> zc) {
  std::vector<TPoly> c;
  c.reserve(zc.size());
  for (auto& v : zc) c.push_back(TPoly(&F_, std::move(v)));
  return BiPoly(&F_, std::move(c));
}

RatFamily poly_family(const BiPoly& a) {
  return RatFamily(a, BiPoly(a.field(), {FqPoly::constant(Fq(*a.field(), 1))}));
}

BiPoly product_of_roots(const Field& F_, const std::vector<TPoly>& als) {
  TPoly one = FqPoly::constant(Fq(F_, 1));
  BiPoly acc(&F_, {one});
  for (const auto& al : als) acc = acc * BiPoly(&F_, {TPoly(&F_) - al, one});
  return acc;
}

void expect_items(const CertReport& rep, std::array<CheckStatus, 8> want) {
  for (int k = 1; k <= 8; ++k) {
    INFO("check ", k, ": ", rep.item(k).witness);
    CHECK(rep.item(k).status == want[k - 1]);
  }
}

TPoly random_tpoly(const Field& F_, long maxdeg, std::mt19937_64& rng) {
  std::vector<std::uint32_t> v(rng() % (maxdeg + 2));
  for (auto& x : v) x = static_cast<std::uint32_t>(rng() % F_.q());
  return TPoly(&F_, std::move(v));
}

}  // namespace

TEST_CASE("golden family: z(z + t) over F_2 passes every check") {
  const Field& F2 = make_field(2, 1);
  RatFamily fam(bp(F2, {{}, {0, 1}, {1}}), bp(F2, {{1}}));
  CertReport rep = check_conditions(fam);
  expect_items(rep, {P, P, P, P, P, P, P, P});
  CHECK(rep.overall == P);
  REQUIRE(rep.outer_radius.has_value());
  CHECK(*rep.outer_radius == Rational(1));
  REQUIRE(rep.branch_radii.size() == 2);
  CHECK(rep.branch_radii[0] == Rational(0));
  CHECK(rep.branch_radii[1] == Rational(0));
}

TEST_CASE("golden family: z^q - t^(q-1) z passes over F_2, F_3, F_4") {
  for (int qc = 0; qc < 3; ++qc) {
    long p = qc == 1 ? 3 : 2;
    int s = qc == 2 ? 2 : 1;
    const Field& Fq_ = make_field(p, s);
    long q = Fq_.q();
    std::vector<TPoly> zc(q + 1, TPoly(&Fq_));
    std::vector<std::uint32_t> tq(q, 0);
    tq[q - 1] = Fq_.neg(1);
    zc[1] = TPoly(&Fq_, std::move(tq));
    zc[q] = FqPoly::constant(Fq(Fq_, 1));
    RatFamily fam = poly_family(BiPoly(&Fq_, std::move(zc)));
    CertReport rep = check_conditions(fam);
    INFO("q = ", q, "\n", rep.str());
    CHECK(rep.overall == P);
    CHECK(*rep.outer_radius == Rational(1));
  }
}

TEST_CASE("golden family: (z^d - t)/z^e passes when the degree gap holds") {
  struct Case { long d, e, p; };
  for (Case c : {Case{2, 0, 3}, Case{3, 0, 2}, Case{3, 1, 2}, Case{5, 2, 2}}) {
    const Field& F_ = make_field(c.p, 1);
    std::vector<std::vector<std::uint32_t>> num(c.d + 1);
    num[0] = {0, F_.neg(1)};
    num[c.d] = {1};
    std::vector<std::vector<std::uint32_t>> den(c.e + 1);
    den[c.e] = {1};
    RatFamily fam(bp(F_, num), bp(F_, den));
    CertReport rep = check_conditions(fam);
    INFO("d = ", c.d, ", e = ", c.e, ", p = ", c.p, "\n", rep.str());
    CHECK(rep.overall == P);
    CHECK(*rep.outer_radius == Rational(1, c.d));
    for (const auto& rho : rep.branch_radii)
      CHECK(rho == Rational(2 - c.d + c.e, c.d));
  }
}

TEST_CASE("golden family: (z - t^2)(z - t^2 - t) over F_3 fails separation only") {
  const Field& F3 = make_field(3, 1);
  RatFamily fam = poly_family(bp(F3, {{0, 0, 0, 1, 1}, {0, 2, 1}, {1}}));
  CertReport rep = check_conditions(fam);
  expect_items(rep, {P, P, P, P, P, P, P, F});
  CHECK(rep.overall == F);
  CHECK(*rep.outer_radius == Rational(2));
  for (const auto& rho : rep.branch_radii) CHECK(rho == Rational(1));
}

TEST_CASE("golden family: z^2 - tz - t^2 splits by characteristic") {
  SUBCASE("separable over F_2 and F_3: all checks pass") {
    for (long p : {2L, 3L}) {
      const Field& F_ = make_field(p, 1);
      RatFamily fam = poly_family(
          bp(F_, {{0, 0, F_.neg(1)}, {0, F_.neg(1)}, {1}}));
      CertReport rep = check_conditions(fam);
      INFO("p = ", p, "\n", rep.str());
      CHECK(rep.overall == P);
    }
  }
  SUBCASE("inseparable over F_5: fails separability, rest undecidable") {
    const Field& F5 = make_field(5, 1);
    RatFamily fam = poly_family(
        bp(F5, {{0, 0, F5.neg(1)}, {0, F5.neg(1)}, {1}}));
    CertReport rep = check_conditions(fam);
    expect_items(rep, {P, P, F, P, P, P, U, U});
    CHECK(rep.overall == F);
  }
}

TEST_CASE("wildly ramified roots leave the disk checks undecided") {
  const Field& F2 = make_field(2, 1);
  // z^3 + tz + t: separable, but the slope-1/2 segment is wildly ramified
  RatFamily fam = poly_family(bp(F2, {{0, 1}, {0, 1}, {}, {1}}));
  CertReport rep = check_conditions(fam);
  expect_items(rep, {P, P, P, P, P, P, U, U});
  CHECK(rep.overall == U);
}

TEST_CASE("an inseparable numerator fails before any expansion runs") {
  const Field& F2 = make_field(2, 1);
  RatFamily fam = poly_family(bp(F2, {{0, 1}, {}, {1}}));  // z^2 + t
  CertReport rep = check_conditions(fam);
  expect_items(rep, {P, P, F, P, P, P, U, U});
  CHECK(rep.overall == F);
}

TEST_CASE("branch radius and pole distance helpers") {
  const Field& F2 = make_field(2, 1);
  RatFamily zzt(bp(F2, {{}, {0, 1}, {1}}), bp(F2, {{1}}));
  CHECK(branch_radius(zzt, PuiseuxSeries::t(&F2), Rational(1)) == Rational(0));
  CHECK(branch_radius(zzt, PuiseuxSeries(&F2), Rational(1)) == Rational(0));

  RatFamily cub(bp(F2, {{0, 1}, {}, {}, {1}}), bp(F2, {{}, {1}}));
  PuiseuxSeries alpha =
      PuiseuxSeries::monomial(Fq(F2, 1), Rational(-1, 3));
  CHECK(nearest_pole_log_distance(cub.b(), alpha) == Rational(1, 3));
  CHECK(nearest_pole_log_distance(zzt.b(), alpha).is_infinity());
  CHECK_THROWS_AS(nearest_pole_log_distance(cub.b(), PuiseuxSeries(&F2)),
                  pole_at_center_error);
}

TEST_CASE("degree inequality pinned examples") {
  const Field& F2 = make_field(2, 1);
  CHECK(check_degree_inequality({}).holds);
  CHECK(check_degree_inequality({tp(F2, {1})}).holds);

  CHECK(check_degree_inequality({tp(F2, {}), tp(F2, {0, 1})}).holds);

  const Field& F3 = make_field(3, 1);
  auto bad = check_degree_inequality(
      {tp(F3, {0, 0, 1}), tp(F3, {0, 1, 1})});  // t^2 and t^2 + t
  CHECK(!bad.holds);
  CHECK(bad.i == 1);
  CHECK(bad.j == 2);

  auto dup = check_degree_inequality({tp(F3, {0, 1}), tp(F3, {0, 1})});
  CHECK(!dup.holds);

  // 0 together with c*t for every nonzero constant c
  const Field& F4 = make_field(2, 2);
  std::vector<TPoly> full{tp(F4, {})};
  for (std::uint32_t c = 1; c < 4; ++c) full.push_back(tp(F4, {0, c}));
  CHECK(check_degree_inequality(full).holds);
}

TEST_CASE("lists satisfying the inequality certify as families") {
  std::mt19937_64 rng(0xce21f1edULL);
  int satisfied = 0;
  for (int rep_i = 0; rep_i < 120 && satisfied < 14; ++rep_i) {
    const Field& F_ = make_field(rng() % 2 ? 2 : 3, 1);
    int n = 2 + static_cast<int>(rng() % 3);
    std::vector<TPoly> als;
    for (int k = 0; k < n; ++k) als.push_back(random_tpoly(F_, 2, rng));
    if (!check_degree_inequality(als).holds) continue;
    ++satisfied;
    RatFamily fam = poly_family(product_of_roots(F_, als));
    CertReport rep = check_conditions(fam);
    INFO(fam.str(), "\n", rep.str());
    CHECK(rep.overall == P);
  }
  CHECK(satisfied >= 10);
}

TEST_CASE("quadratic normal form pinned examples") {
  const Field& F2 = make_field(2, 1);
  const Field& F3 = make_field(3, 1);
  TPoly one2 = FqPoly::constant(Fq(F2, 1));

  SUBCASE("z^2 + tz + t over F_2 conjugates to z(z + t)") {
    auto nf = normalize_quadratic(one2, tp(F2, {0, 1}), tp(F2, {0, 1}));
    CHECK(nf.ext_degree == 1);
    REQUIRE(nf.u.has_value());
    CHECK(*nf.u == one2);  // the lex-least fixed point: 1 rather than t
    REQUIRE(nf.s.has_value());
    CHECK(*nf.s == tp(F2, {0, 1}));
    CHECK(!nf.isotrivial);
    CHECK(nf.str() == "z*(z + t)");
  }

  SUBCASE("z^2 + t over F_2: irrational shift, isotrivial normal form") {
    auto nf = normalize_quadratic(one2, TPoly(&F2), tp(F2, {0, 1}));
    CHECK(nf.ext_degree == 2);
    CHECK(!nf.u.has_value());
    REQUIRE(nf.s.has_value());
    CHECK(nf.s->is_zero());
    CHECK(nf.isotrivial);
  }

  SUBCASE("2z^2 over F_3 rescales and centers to z^2") {
    auto nf = normalize_quadratic(FqPoly::constant(Fq(F3, 2)), TPoly(&F3),
                                  TPoly(&F3));
    CHECK(nf.ext_degree == 1);
    REQUIRE(nf.u.has_value());
    CHECK(nf.u->is_zero());
    REQUIRE(nf.s.has_value());
    CHECK(nf.s->is_zero());
    CHECK(nf.isotrivial);
  }

  SUBCASE("z^2 + tz + 1 over F_3: quadratic shift, moving multiplier") {
    auto nf = normalize_quadratic(FqPoly::constant(Fq(F3, 1)), tp(F3, {0, 1}),
                                  FqPoly::constant(Fq(F3, 1)));
    CHECK(nf.ext_degree == 2);
    CHECK(!nf.s.has_value());
    CHECK(!nf.isotrivial);
  }
}

TEST_CASE("quadratic normal form satisfies its defining identities") {
  std::mt19937_64 rng(0x9d4a71c5ULL);
  int rational_cases = 0;
  for (int rep_i = 0; rep_i < 100; ++rep_i) {
    const Field& F_ = make_field(rng() % 2 ? 2 : 3, 1);
    TPoly a = random_tpoly(F_, 2, rng);
    if (a.is_zero()) a = FqPoly::constant(Fq(F_, 1));
    TPoly b = random_tpoly(F_, 2, rng);
    TPoly c = random_tpoly(F_, 2, rng);
    auto nf = normalize_quadratic(a, b, c);

    TPoly one = FqPoly::constant(Fq(F_, 1));
    TPoly ac = a * c;
    // the double root count of the fixed equation never exceeds 2
    CHECK(nf.fixed_equation.deg_z() == 2);
    if (!nf.u.has_value()) {
      CHECK(nf.ext_degree == 2);
      continue;
    }
    ++rational_cases;
    const TPoly& u = *nf.u;
    // u is a fixed point shift: u^2 + (b - 1)u + ac = 0
    CHECK(nf.fixed_equation.eval_z_tpoly(u).is_zero());
    // conjugation identity: (z + u)^2 + b(z + u) + ac - u = z(z + s)
    REQUIRE(nf.s.has_value());
    BiPoly zu(&F_, {u, one});
    BiPoly lhs = zu * zu + zu * b + BiPoly::from_tpoly(ac) -
                 BiPoly::from_tpoly(u);
    BiPoly rhs(&F_, {TPoly(&F_), *nf.s, one});
    CHECK(lhs == rhs);
  }
  CHECK(rational_cases >= 30);
}
