#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lazardlab/comparison.hpp"
#include "lazardlab/error.hpp"

using namespace lazard;
using namespace lazard::cmp;
using group::builtin_group;
using padic::ModuleInvariants;

namespace {

std::vector<int> ranks(const CohomologyReport& r) { return r.full_ranks(); }

}  // namespace

TEST_CASE("additive Z_3^2: koszul and ce agree on (1,2,1)") {
  const auto G = builtin_group("additive", 3, 2, 1, 8);
  const auto rho = make_representation(G, "trivial", 8);
  RouteOptions o;
  o.N = 8;
  o.D = 6;
  const auto v = lazard_compare(G, rho, o, {"koszul", "ce"});
  CHECK(v.verdict);
  REQUIRE(v.reports.size() == 2);
  CHECK(ranks(v.reports[0]) == std::vector<int>{1, 2, 1});
  CHECK(ranks(v.reports[1]) == std::vector<int>{1, 2, 1});
  const auto j = v.to_json();
  CHECK(j["verdict"] == "match");
  CHECK(j["routes"].size() == 2);
  CHECK(j["params"]["group_hash"] == G.hash());
}

TEST_CASE("heisenberg: koszul and ce agree") {
  const auto G = builtin_group("heisenberg", 3, 3, 1, 6);
  const auto rho = make_representation(G, "trivial", 6);
  RouteOptions o;
  const auto v = lazard_compare(G, rho, o, {"koszul", "ce"});
  CHECK(v.verdict);
  CHECK(ranks(v.reports[0]) == std::vector<int>{1, 2, 2, 1});
  CHECK(v.reports[0].d2_zero);
  CHECK(euler_check(v.reports[0]).pass);
  const auto d = duality_check(v.reports[0], 3, group::lie_bracket(G));
  CHECK(d.pass);
}

TEST_CASE("Z_3 with Z/9 coefficients: koszul equals the inflation colimit") {
  const auto G = builtin_group("additive", 3, 1, 1, 8);
  const auto rho = make_representation(G, "mod:2", 8);
  CHECK(finite_exponent(rho));
  RouteOptions o;
  o.N = 8;
  o.D = 8;
  o.max_degree = 2;
  const auto v = lazard_compare(G, rho, o, {"koszul", "bar"});
  CHECK(v.finite);
  CHECK(v.verdict);
  const auto& bar = v.reports[1];
  REQUIRE(bar.degrees.size() == 3);
  CHECK(bar.degrees[0].divisor_exponents == std::vector<int>{2});
  CHECK(bar.degrees[1].divisor_exponents == std::vector<int>{2});
  CHECK(bar.degrees[2].divisor_exponents.empty());
  CHECK(v.reports[0].degrees[1] == bar.degrees[1]);
}

TEST_CASE("bar route rejects Z/p^N coefficients of full precision") {
  const auto G = builtin_group("additive", 3, 1, 1, 8);
  CHECK_THROWS_AS(bar_route(G, make_representation(G, "standard", 4), RouteOptions{}), Error);
}

TEST_CASE("representations") {
  const auto H = builtin_group("heisenberg", 3, 3, 1, 6);
  for (const char* spec : {"trivial", "standard", "adjoint", "mod:3"}) {
    const auto rho = make_representation(H, spec, 5);
    CHECK(rho.images.size() == 3);
    const auto c = check_representation(H, rho, 30, 1);
    CHECK_MESSAGE(c.pass, spec << ": " << c.witness);
  }
  const auto gl2 = builtin_group("gl2_congruence", 3, 4, 1, 6);
  const auto ad = make_representation(gl2, "adjoint", 4);
  CHECK(ad.rank == 4);
  CHECK(check_representation(gl2, ad, 30, 2).pass);
  CHECK_THROWS_AS(make_representation(H, "sym2", 4), Error);
  CHECK_THROWS_AS(make_representation(H, "mod:x", 4), Error);

  // a wrong image is caught
  auto bad = make_representation(H, "standard", 4);
  std::swap(bad.images[0], bad.images[1]);
  CHECK(!check_representation(H, bad, 30, 3).pass);
}

TEST_CASE("standard representation of the heisenberg group: koszul matches ce") {
  const auto G = builtin_group("heisenberg", 3, 3, 1, 6);
  RouteOptions o;
  o.N = 4;
  o.D = 6;
  const auto v = lazard_compare(G, make_representation(G, "standard", 4), o, {"koszul", "ce"});
  CHECK(v.verdict);
}

TEST_CASE("duality and euler checks") {
  CohomologyReport r;
  r.N = 4;
  r.d = 3;
  for (int f : {1, 2, 1, 0}) r.degrees.push_back(ModuleInvariants::from_exponents(std::vector<int>(f, 4), 4));
  const auto G = builtin_group("heisenberg", 3, 3, 1, 6);
  const auto c = group::lie_bracket(G);
  CHECK(!duality_check(r, 3, c).pass);
  CHECK(euler_check(r).pass);
  r.degrees[3] = ModuleInvariants::from_exponents({4}, 4);
  CHECK(!euler_check(r).pass);

  // tr(ad e_1) = 1: the modulus character is not verified trivial
  group::LieBracketConstants b;
  b.p = 3;
  b.d = 2;
  b.precision = 4;
  b.c.assign(8, 0);
  b.c[(0 * 2 + 1) * 2 + 1] = 1;  // [e1, e2] = e2
  b.c[(1 * 2 + 0) * 2 + 1] = 80;
  CHECK(unimodular_certificate(b) == std::vector<padic::i64>{1, 0});
  try {
    duality_check(r, 2, b);
    FAIL("expected NotUnimodular");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotUnimodular);
  }
}

TEST_CASE("unknown routes are config errors") {
  const auto G = builtin_group("additive", 3, 1, 1, 8);
  CHECK_THROWS_AS(lazard_compare(G, make_representation(G, "trivial", 4), RouteOptions{}, {"spectral"}), Error);
  CHECK_THROWS_AS(lazard_compare(G, make_representation(G, "trivial", 4), RouteOptions{}, {}), Error);
}
