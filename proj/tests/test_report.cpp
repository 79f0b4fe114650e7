#include "dynforge/expr.hpp"
#include "dynforge/report.hpp"
#include "dynforge/sha256.hpp"

#include <string>
#include <vector>

#include "dynforge/certify.hpp"
#include "dynforge/dynatomic.hpp"
#include "dynforge/errors.hpp"
#include "json.hpp"

#include "doctest.h"

using namespace dynforge;

namespace {

BiPoly bp(const Field& F_, std::vector<std::vector<std::uint32_t>> zc) {
  std::vector<TPoly> c;
  c.reserve(zc.size());
  for (auto& v : zc) c.push_back(TPoly(&F_, std::move(v)));
  return BiPoly(&F_, std::move(c));
}

size_t error_position(const std::string& src, const Field& F_) {
  try {
    parse_poly(src, &F_);
  } catch (const parse_error& e) {
    return e.position;
  }
  return static_cast<size_t>(-1);
}

}  // namespace

TEST_CASE("polynomial expressions parse to exact values") {
  const Field& F2 = make_field(2, 1);
  const Field& F3 = make_field(3, 1);

  CHECK(parse_poly("z^2 + t", &F3) == bp(F3, {{0, 1}, {}, {1}}));
  CHECK(parse_poly("z*(z + t)", &F2) == bp(F2, {{}, {0, 1}, {1}}));
  CHECK(parse_poly("2*z + 10", &F3) == bp(F3, {{1}, {2}}));
  CHECK(parse_poly("-z + 1", &F2) == bp(F2, {{1}, {1}}));
  CHECK(parse_poly(" z ^ 2\t+ t ", &F3) == bp(F3, {{0, 1}, {}, {1}}));

  // literals reduce mod p while being read, so huge constants are fine
  CHECK(parse_poly("1000000000000000000000000007", &make_field(5, 1)) ==
        BiPoly::from_tpoly(TPoly(&make_field(5, 1), {2})));

  CHECK(parse_poly("(z - t^2)*(z - t^2 - t)", &F3) ==
        bp(F3, {{0, 0, 0, 1, 1}, {0, 2, 1}, {1}}));

  CHECK(parse_tpoly("t^3 + t", &F2) == TPoly(&F2, {0, 1, 0, 1}));
  CHECK_THROWS_AS(parse_tpoly("z + 1", &F2), parse_error);
}

TEST_CASE("parse errors carry the offending position") {
  const Field& F2 = make_field(2, 1);
  CHECK(error_position("z^^2", F2) == 2);
  CHECK(error_position("z^", F2) == 2);
  CHECK(error_position("2t", F2) == 1);
  CHECK(error_position("(z+1", F2) == 4);
  CHECK(error_position("z z", F2) == 2);
  CHECK(error_position("z+x", F2) == 2);
  CHECK(error_position("", F2) == 0);
  CHECK(error_position("z^5000", F2) == 2);
  CHECK(error_position("(z+t)^4000", F2) == 5);
}

TEST_CASE("family expressions split at one top-level division") {
  const Field& F2 = make_field(2, 1);
  const Field& F3 = make_field(3, 1);

  RatFamily cubic = parse_family("(z^3 - t)/z", &F2);
  CHECK(cubic.a() == bp(F2, {{0, 1}, {}, {}, {1}}));
  CHECK(cubic.b() == bp(F2, {{}, {1}}));
  CHECK(cubic.d() == 3);

  RatFamily square = parse_family("z^2 + t", &F3);
  CHECK(square.b() == bp(F3, {{1}}));

  CHECK_THROWS_AS(parse_family("z/z/z", &F2), parse_error);
  CHECK_THROWS_AS(parse_family("z^2/(z/t)", &F2), parse_error);
  CHECK_THROWS_AS(parse_family("t", &F2), degenerate_family_error);
}

TEST_CASE("sha256 known answers") {
  CHECK(sha256_hex("") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq") ==
        "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
  CHECK(sha256_hex(std::string(64, 'a')) ==
        "ffe054fe7ae0cb6dc65c3af9b61d5209f439851db43d0ba5997337df154668eb");
  CHECK(sha256_hex(std::string(1000000, 'a')) ==
        "cdc76e5c9914fb9281a1c7e284d73e67f1809a48a497200e046d39ccc7112cd0");
}

TEST_CASE("json sections have fixed keys and stable bytes") {
  const Field& F3 = make_field(3, 1);
  RatFamily fam = parse_family("z^2 + t", &F3);

  CHECK(json_constants(FamilyConstants{2, 2, 1, true}) ==
        R"({"ram_lcm":2,"residue_lcm":2,"height_bound":1,"stabilized":true})");

  CHECK(json_family(fam) ==
        R"({"field":{"p":3,"s":1},"q":3,"num":"z^2+t","den":"1","degree":2})");

  CHECK(json_series(PuiseuxSeries::t(&F3)) ==
        R"({"ram":1,"field":{"p":3,"s":1},"terms":[["-1",1]],"prec":"inf","exact":true})");

  CHECK(json_envelope({{"command", json_quote("certify")},
                       {"values", "[1,2]"}}) ==
        R"({"schema":"1","command":"certify","values":[1,2]})");

  CertReport cert = check_conditions(fam);
  std::string once = json_certificate(cert);
  CHECK(once == json_certificate(cert));
  auto doc = nlohmann::ordered_json::parse(once);
  CHECK(doc["overall"] == "PASS");
  CHECK(doc["checks"].size() == 8);
  CHECK(doc.begin().key() == "overall");

  auto reps = dynatomic_factors(fam, 0, 1);
  for (auto& rep : reps) fiber_at_infinity(rep);
  std::string table = json_factor_table(reps);
  CHECK(table == json_factor_table(reps));
  auto parsed = nlohmann::ordered_json::parse(table);
  REQUIRE(parsed.is_array());
  REQUIRE(parsed.size() == 2);
  bool saw_quad = false;
  for (const auto& row : parsed) {
    if (row["ell"] == 2) {
      saw_quad = true;
      CHECK(row["fiber"]["places"][0]["e"] == 2);
      CHECK(row["fiber"]["places"][0]["lead_exponent"] == "1/2");
    }
  }
  CHECK(saw_quad);
}
