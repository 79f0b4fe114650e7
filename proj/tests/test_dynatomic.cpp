#include "dynforge/dynatomic.hpp"

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "dynforge/bifactor.hpp"
#include "dynforge/errors.hpp"

#include "doctest.h"

using namespace dynforge;

namespace {

BiPoly bp(const Field& F_, std::vector<std::vector<std::uint32_t>> zc) {
  std::vector<TPoly> c;
  c.reserve(zc.size());
  for (auto& v : zc) c.push_back(TPoly(&F_, std::move(v)));
  return BiPoly(&F_, std::move(c));
}

// same, with a declared homogeneous degree
BiPoly bph(const Field& F_, std::vector<std::vector<std::uint32_t>> zc,
           long hom) {
  BiPoly P = bp(F_, std::move(zc));
  P.set_hom_deg(hom);
  return P;
}

// z(z + t) over F_2
RatFamily affine_family() {
  const Field& F2 = make_field(2, 1);
  return RatFamily(bp(F2, {{}, {0, 1}, {1}}), bp(F2, {{1}}));
}

// z^2 + t over F_3
RatFamily square_family() {
  const Field& F3 = make_field(3, 1);
  return RatFamily(bp(F3, {{0, 1}, {}, {1}}), bp(F3, {{1}}));
}

// (z^3 - t) / z over F_2
RatFamily cubic_over_z_family() {
  const Field& F2 = make_field(2, 1);
  return RatFamily(bp(F2, {{0, 1}, {}, {}, {1}}), bp(F2, {{}, {1}}));
}

const DynatomicFactorReport* find_factor(
    const std::vector<DynatomicFactorReport>& reps, const BiPoly& H) {
  for (const auto& r : reps)
    if (r.H == H) return &r;
  return nullptr;
}

long relation_degree(const std::vector<DynatomicFactorReport>& reps) {
  long sum = 0;
  for (const auto& r : reps) sum += static_cast<long>(r.mult) * r.ell;
  return sum;
}

}  // namespace

TEST_CASE("factor reports describe degrees and leading units") {
  const Field& F2 = make_field(2, 1);
  const Field& F3 = make_field(3, 1);

  // X^2 + t^5 Y^2
  BiPoly stiff = bph(F2, {{0, 0, 0, 0, 0, 1}, {}, {1}}, 2);
  DynatomicFactorReport rep = factor_report(stiff, 0, 1, 1);
  CHECK(rep.ell == 2);
  CHECK(rep.coeff_degs == std::vector<long>{0, -1, 5});
  CHECK(rep.H0_unit);
  CHECK(!rep.y_section);
  CHECK(!rep.repeat);
  CHECK(coefficient_bound_check(rep, 3));
  CHECK(!coefficient_bound_check(rep, 2));
  CHECK(!coefficient_bound_check(rep, 1));

  // plain z-polynomial input: z^2 + 2z + t
  DynatomicFactorReport plain =
      factor_report(bp(F3, {{0, 1}, {2}, {1}}), 0, 1, 1);
  CHECK(plain.ell == 2);
  CHECK(plain.coeff_degs == std::vector<long>{0, 0, 1});
  CHECK(plain.H0_unit);

  // tX + Y: the leading coefficient is not a unit
  DynatomicFactorReport skew =
      factor_report(bph(F2, {{1}, {0, 1}}, 1), 0, 1, 1);
  CHECK(skew.ell == 1);
  CHECK(skew.coeff_degs == std::vector<long>{1, 0});
  CHECK(!skew.H0_unit);
  fiber_at_infinity(skew);
  CHECK(!skew.fiber_done);
  CHECK(!skew.fiber_note.empty());
  CHECK(skew.places.empty());

  // the section at infinity
  DynatomicFactorReport sec = factor_report(BiPoly::one_y(&F2), 0, 1, 1);
  CHECK(sec.y_section);
  CHECK(sec.ell == 1);
  CHECK(sec.coeff_degs == std::vector<long>{-1, 0});
  CHECK(!sec.H0_unit);
  fiber_at_infinity(sec);
  CHECK(sec.fiber_done);
  REQUIRE(sec.places.size() == 1);
  CHECK(sec.places[0].e == 1);
  CHECK(sec.places[0].f == 1);
  CHECK(sec.places[0].lead_exponent == Rational(0));
  CHECK(sec.rd_Z == 1);
  CHECK(sec.ri_Z == 1);
}

TEST_CASE("gonality lower bound values") {
  CHECK(gonality_lower_bound(2, 2, 2, 3) == Rational(1, 10));
  CHECK(gonality_lower_bound(1, 1, 1, 2) == Rational(1, 3));
  CHECK(gonality_lower_bound(16, 2, 2, 2) == Rational(8, 5));
  CHECK_THROWS_AS(gonality_lower_bound(0, 1, 1, 2), internal_error);
  CHECK_THROWS_AS(gonality_lower_bound(1, 0, 1, 2), internal_error);

  const Field& F3 = make_field(3, 1);
  DynatomicFactorReport rep =
      factor_report(bph(F3, {{0, 1}, {2}, {1}}, 2), 0, 1, 1);
  CHECK(gonality_lower_bound(rep, 2, 2) == Rational(1, 10));
}

TEST_CASE("factors of the fixed point relation of z(z + t)") {
  const Field& F2 = make_field(2, 1);
  auto reps = dynatomic_factors(affine_family(), 0, 1);
  REQUIRE(reps.size() == 3);
  CHECK(relation_degree(reps) == 3);

  const auto* sec = find_factor(reps, BiPoly::one_y(&F2));
  REQUIRE(sec);
  CHECK(sec->y_section);
  CHECK(sec->mult == 1);
  CHECK(!sec->repeat);

  const auto* zero = find_factor(reps, bph(F2, {{}, {1}}, 1));
  REQUIRE(zero);
  CHECK(zero->ell == 1);
  CHECK(zero->H0_unit);
  CHECK(!zero->repeat);

  const auto* fixed = find_factor(reps, bph(F2, {{1, 1}, {1}}, 1));
  REQUIRE(fixed);
  CHECK(fixed->ell == 1);
  CHECK(fixed->coeff_degs == std::vector<long>{0, 1});
  CHECK(!fixed->repeat);
  for (const auto& r : reps) {
    CHECK(r.m == 0);
    CHECK(r.n == 1);
  }
}

TEST_CASE("repeat flags point back to earlier index pairs") {
  const Field& F2 = make_field(2, 1);
  RatFamily fam = affine_family();

  // one preperiod step on top of the fixed points
  auto pre = dynatomic_factors(fam, 1, 1);
  REQUIRE(pre.size() == 5);
  CHECK(relation_degree(pre) == 6);
  const auto* sec = find_factor(pre, BiPoly::one_y(&F2));
  REQUIRE(sec);
  CHECK(sec->mult == 2);
  CHECK(sec->repeat);
  const auto* zero = find_factor(pre, bph(F2, {{}, {1}}, 1));
  REQUIRE(zero);
  CHECK(zero->repeat);
  const auto* fixed = find_factor(pre, bph(F2, {{1, 1}, {1}}, 1));
  REQUIRE(fixed);
  CHECK(fixed->repeat);
  const auto* toward_zero = find_factor(pre, bph(F2, {{0, 1}, {1}}, 1));
  REQUIRE(toward_zero);
  CHECK(!toward_zero->repeat);
  const auto* toward_fixed = find_factor(pre, bph(F2, {{1}, {1}}, 1));
  REQUIRE(toward_fixed);
  CHECK(!toward_fixed->repeat);

  // period two: the fixed relation divides, only the cycle pair is new
  auto two = dynatomic_factors(fam, 0, 2);
  REQUIRE(two.size() == 4);
  CHECK(relation_degree(two) == 5);
  const auto* cyc = find_factor(two, bph(F2, {{1, 1}, {1, 1}, {1}}, 2));
  REQUIRE(cyc);
  CHECK(!cyc->repeat);
  CHECK(cyc->coeff_degs == std::vector<long>{0, 1, 1});
  for (const auto& r : two)
    if (r.ell == 1 || r.y_section) CHECK(r.repeat);

  CHECK_THROWS_AS(dynatomic_factors(fam, -1, 1), internal_error);
  CHECK_THROWS_AS(dynatomic_factors(fam, 0, 0), internal_error);
}

TEST_CASE("fiber places of the affine family factors") {
  const Field& F2 = make_field(2, 1);
  RatFamily fam = affine_family();

  auto one = dynatomic_factors(fam, 0, 1);
  DynatomicFactorReport zero = *find_factor(one, bph(F2, {{}, {1}}, 1));
  fiber_at_infinity(zero);
  REQUIRE(zero.fiber_done);
  REQUIRE(zero.places.size() == 1);
  CHECK(zero.places[0].e == 1);
  CHECK(zero.places[0].f == 1);
  CHECK(zero.places[0].lead_exponent == Rational(0));

  DynatomicFactorReport fixed = *find_factor(one, bph(F2, {{1, 1}, {1}}, 1));
  fiber_at_infinity(fixed);
  REQUIRE(fixed.fiber_done);
  REQUIRE(fixed.places.size() == 1);
  CHECK(fixed.places[0].lead_exponent == Rational(1));

  // the cycle pair has one branch of size t and one of size 1
  auto two = dynatomic_factors(fam, 0, 2);
  DynatomicFactorReport cyc =
      *find_factor(two, bph(F2, {{1, 1}, {1, 1}, {1}}, 2));
  fiber_at_infinity(cyc);
  REQUIRE(cyc.fiber_done);
  REQUIRE(cyc.places.size() == 2);
  CHECK(cyc.places[0].e == 1);
  CHECK(cyc.places[0].f == 1);
  CHECK(cyc.places[0].lead_exponent == Rational(1));
  CHECK(cyc.places[1].e == 1);
  CHECK(cyc.places[1].f == 1);
  CHECK(cyc.places[1].lead_exponent == Rational(0));
  CHECK(cyc.rd_Z == 1);
  CHECK(cyc.ri_Z == 1);

  PointCount pc = count_points(cyc, 1);
  CHECK(pc.affine == 1);
  CHECK(pc.at_infinity == 2);
  CHECK(pc.singular == 0);
}

TEST_CASE("fiber places of the square family factors") {
  const Field& F3 = make_field(3, 1);
  RatFamily fam = square_family();
  BiPoly fixq = bph(F3, {{0, 1}, {2}, {1}}, 2);

  auto one = dynatomic_factors(fam, 0, 1);
  REQUIRE(one.size() == 2);
  CHECK(relation_degree(one) == 3);
  DynatomicFactorReport quad = *find_factor(one, fixq);
  CHECK(quad.coeff_degs == std::vector<long>{0, 0, 1});
  fiber_at_infinity(quad);
  REQUIRE(quad.fiber_done);

  // both branches grow like t^(1/2) and form a single ramified place
  REQUIRE(quad.places.size() == 1);
  CHECK(quad.places[0].e == 2);
  CHECK(quad.places[0].f == 1);
  CHECK(quad.places[0].lead_exponent == Rational(1, 2));
  CHECK(quad.rd_Z == 1);
  CHECK(quad.ri_Z == 2);
  CHECK(absolutely_irreducible(quad.H).first);

  auto two = dynatomic_factors(fam, 0, 2);
  CHECK(relation_degree(two) == 5);
  const auto* old_quad = find_factor(two, fixq);
  REQUIRE(old_quad);
  CHECK(old_quad->repeat);
  DynatomicFactorReport cyc =
      *find_factor(two, bph(F3, {{1, 1}, {1}, {1}}, 2));
  CHECK(!cyc.repeat);
  fiber_at_infinity(cyc);
  REQUIRE(cyc.places.size() == 1);
  CHECK(cyc.places[0].e == 2);
  CHECK(cyc.places[0].f == 1);
  CHECK(cyc.places[0].lead_exponent == Rational(1, 2));
  CHECK(absolutely_irreducible(cyc.H).first);

  // period three adds one sextic factor
  auto three = dynatomic_factors(fam, 0, 3);
  CHECK(relation_degree(three) == 9);
  long fresh = 0;
  for (const auto& r : three) {
    if (r.repeat || r.y_section) continue;
    ++fresh;
    CHECK(r.ell == 6);
    CHECK(absolutely_irreducible(r.H).first);
    DynatomicFactorReport sext = r;
    fiber_at_infinity(sext);
    CHECK(sext.fiber_done);
    long total = 0;
    for (const auto& pl : sext.places) {
      total += pl.e * pl.f;
      CHECK(pl.f <= 2);
      CHECK(pl.e <= 2);
    }
    CHECK(total == 6);
  }
  CHECK(fresh == 1);
}

TEST_CASE("point counts by enumeration") {
  const Field& F2 = make_field(2, 1);
  const Field& F3 = make_field(3, 1);

  auto one = dynatomic_factors(square_family(), 0, 1);
  DynatomicFactorReport quad =
      *find_factor(one, bph(F3, {{0, 1}, {2}, {1}}, 2));
  fiber_at_infinity(quad);
  PointCount s1 = count_points(quad, 1);
  CHECK(s1.affine == 3);
  CHECK(s1.at_infinity == 1);
  CHECK(s1.singular == 0);
  PointCount s2 = count_points(quad, 2);
  CHECK(s2.affine == 9);
  CHECK(s2.at_infinity == 1);
  CHECK(s2.singular == 0);

  auto aff = dynatomic_factors(affine_family(), 0, 1);
  DynatomicFactorReport fixed = *find_factor(aff, bph(F2, {{1, 1}, {1}}, 1));
  fiber_at_infinity(fixed);
  PointCount lf = count_points(fixed, 1);
  CHECK(lf.affine == 2);
  CHECK(lf.at_infinity == 1);
  CHECK(lf.singular == 0);

  DynatomicFactorReport sec = *find_factor(aff, BiPoly::one_y(&F2));
  fiber_at_infinity(sec);
  PointCount ps = count_points(sec, 1);
  CHECK(ps.affine == 2);
  CHECK(ps.at_infinity == 1);
  PointCount ps2 = count_points(sec, 2);
  CHECK(ps2.affine == 4);

  // X^2 + t^2 Y^2 has a node at the origin
  DynatomicFactorReport cone =
      factor_report(bph(F3, {{0, 0, 1}, {}, {1}}, 2), 0, 1, 1);
  PointCount pn = count_points(cone, 1);
  CHECK(pn.affine == 1);
  CHECK(pn.singular == 1);
  CHECK(pn.at_infinity == 0);

  CHECK_THROWS_AS(count_points(quad, 0), internal_error);
}

TEST_CASE("growth table over the affine family") {
  RatFamily fam = affine_family();
  FamilyConstants fc = family_constants(fam, 1);
  REQUIRE(fc.stabilized);
  auto table = growth_table(fam, 3, fc);

  // ordered by (m + n, n), then the factor order within each pair
  std::pair<int, int> prev{0, 0};
  for (const auto& rep : table) {
    std::pair<int, int> key{rep.m + rep.n, rep.n};
    CHECK(!(key < prev));
    prev = key;
  }

  std::map<std::pair<int, int>, long> degs;
  Rational best(0);
  for (int total = 1; total <= 3; ++total) {
    Rational row_max(0);
    for (const auto& rep : table) {
      if (rep.m + rep.n != total) continue;
      degs[{rep.m, rep.n}] += static_cast<long>(rep.mult) * rep.ell;
      if (row_max < rep.gonality_lb) row_max = rep.gonality_lb;
      if (rep.y_section || rep.repeat) continue;
      REQUIRE(rep.fiber_done);
      REQUIRE(rep.counts.count(1) == 1);
      const PointCount& pc = rep.counts.at(1);
      CHECK(Rational(rep.ell, rep.ri_Z) <=
            Rational(pc.affine + pc.at_infinity));
      CHECK(coefficient_bound_check(rep, fc.height_bound));
    }
    // the largest new factor grows with the combined index
    CHECK(best < row_max);
    best = row_max;
  }
  for (const auto& [mn, deg] : degs) {
    long expect = 1;
    for (int i = 0; i < mn.first + mn.second; ++i) expect *= 2;
    long low = 1;
    for (int i = 0; i < mn.first; ++i) low *= 2;
    CHECK(deg == expect + low);
  }

  CHECK_THROWS_AS(growth_table(fam, 0, fc), internal_error);
}

TEST_CASE("growth table of the square family") {
  const Field& F3 = make_field(3, 1);
  RatFamily fam = square_family();
  FamilyConstants fc = family_constants(fam, 1);
  CHECK(fc.ram_lcm == 2);
  CHECK(fc.residue_lcm == 2);
  auto table = growth_table(fam, 2, fc);

  const auto* quad = find_factor(table, bph(F3, {{0, 1}, {2}, {1}}, 2));
  REQUIRE(quad);
  CHECK(quad->gonality_lb == Rational(1, 10));
  REQUIRE(quad->counts.count(1) == 1);
  REQUIRE(quad->counts.count(2) == 1);
  CHECK(quad->counts.at(1).affine == 3);
  CHECK(quad->counts.at(1).at_infinity == 1);
  CHECK(quad->counts.at(2).affine == 9);
  CHECK(quad->counts.at(2).at_infinity == 1);

  for (const auto& rep : table) {
    if (rep.y_section || !rep.H0_unit) continue;
    REQUIRE(rep.fiber_done);
    for (const auto& pl : rep.places) {
      CHECK(pl.e <= fc.ram_lcm);
      CHECK(pl.f <= fc.residue_lcm);
    }
  }
}

TEST_CASE("fiber of the cubic family fixed points") {
  const Field& F2 = make_field(2, 1);
  RatFamily fam = cubic_over_z_family();
  FamilyConstants fc = family_constants(fam, 1);
  CHECK(fc.ram_lcm == 3);

  auto reps = dynatomic_factors(fam, 0, 1);
  CHECK(relation_degree(reps) == 4);
  DynatomicFactorReport cub =
      *find_factor(reps, bph(F2, {{0, 1}, {}, {1}, {1}}, 3));
  CHECK(cub.coeff_degs == std::vector<long>{0, 0, -1, 1});
  fiber_at_infinity(cub);
  REQUIRE(cub.fiber_done);

  // three conjugate branches of size t^(1/3) form a single place
  REQUIRE(cub.places.size() == 1);
  CHECK(cub.places[0].e == 3);
  CHECK(cub.places[0].f == 1);
  CHECK(cub.places[0].lead_exponent == Rational(1, 3));
  CHECK(cub.ri_Z == 3);
  CHECK(cub.ri_Z <= fc.ram_lcm);
  CHECK(absolutely_irreducible(cub.H).first);
}

TEST_CASE("wild fibers are reported as errors") {
  const Field& F2 = make_field(2, 1);
  RatFamily fam(bp(F2, {{0, 1}, {}, {1}}), bp(F2, {{1}}));

  auto reps = dynatomic_factors(fam, 0, 1);
  DynatomicFactorReport quad =
      *find_factor(reps, bph(F2, {{0, 1}, {1}, {1}}, 2));
  CHECK_THROWS_AS(fiber_at_infinity(quad), wild_ramification_error);
}
