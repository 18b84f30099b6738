#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "lazardlab/group.hpp"

using namespace lazard;
using namespace lazard::group;

namespace {

Coords draw(std::mt19937_64& rng, int d, i64 mod) {
  Coords x(d);
  for (auto& v : x) v = static_cast<i64>(rng() % static_cast<std::uint64_t>(mod));
  return x;
}

// Jacobi: sum over cyclic (i,j,k) of [[e_i,e_j],e_k]
bool jacobi_holds(const LieBracketConstants& L) {
  padic::Ring R(L.p, L.precision);
  const int d = L.d;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int t = 0; t < d; ++t) {
          i64 s = 0;
          for (int m = 0; m < d; ++m) {
            s = R.add(s, R.mul(L.at(i, j, m), L.at(m, k, t)));
            s = R.add(s, R.mul(L.at(j, k, m), L.at(m, i, t)));
            s = R.add(s, R.mul(L.at(k, i, m), L.at(m, j, t)));
          }
          if (s != 0) return false;
        }
  return true;
}

}  // namespace

TEST_CASE("additive law") {
  auto G = GroupModel::additive(3, 2, 6);
  CHECK(G.multiply({1, 2}, {3, 4}, 6) == Coords{4, 6});
  CHECK(G.multiply({1, 2}, G.inverse({1, 2}, 6), 6) == Coords{0, 0});
  CHECK_THROWS_AS(GroupModel::additive(2, 2, 6), Error);
  try {
    GroupModel::additive(2, 1, 4);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedPrime);
  }
}

TEST_CASE("heisenberg closed form agrees with matrix products") {
  auto G = GroupModel::heisenberg(3, 1, 8);
  std::mt19937_64 rng(1);
  for (int s = 0; s < 100; ++s) {
    Coords x = draw(rng, 3, 6561), y = draw(rng, 3, 6561);
    CHECK(G.multiply(x, y, 8) == G.multiply_via_matrices(x, y, 8));
  }
  Coords e1{1, 0, 0}, e2{0, 1, 0};
  Coords a = G.multiply(e1, e2, 5), b = G.multiply(e2, e1, 5);
  CHECK(a != b);
  CHECK(a[0] == b[0]);
  CHECK(a[1] == b[1]);
}

TEST_CASE("chart_decompose") {
  auto H = GroupModel::heisenberg(3, 1, 6);
  padic::Ring R(3, 7);
  CHECK(H.chart_decompose(padic::PNMatrix::identity(R, 3), 6) == Coords{0, 0, 0});
  padic::PNMatrix g2(R, 3, 3, {1, 0, 0, 0, 1, 3, 0, 0, 1});
  CHECK(H.chart_decompose(g2, 6) == Coords{0, 1, 0});
  padic::PNMatrix g1(R, 3, 3, {1, 3, 0, 0, 1, 0, 0, 0, 1});
  Coords x = H.chart_decompose(g1 * g2, 6);
  CHECK(x[0] == 1);
  CHECK(x[1] == 1);
  CHECK(H.recompose(x, 6) == g1 * g2);

  padic::PNMatrix lower(R, 3, 3, {1, 0, 0, 3, 1, 0, 0, 0, 1});
  CHECK_THROWS_AS(H.chart_decompose(lower, 6), Error);

  std::mt19937_64 rng(2);
  for (const auto& G : {H, GroupModel::gl2_congruence(3, 1, 6), GroupModel::gl2_congruence(5, 2, 5)}) {
    padic::Ring C(G.p(), 6);
    for (int s = 0; s < 200; ++s) {
      Coords y = draw(rng, G.d(), C.modulus());
      CHECK(G.chart_decompose(G.recompose(y, 6), 6) == y);
    }
  }
}

TEST_CASE("validation") {
  for (const auto& G : {GroupModel::additive(3, 3, 6), GroupModel::heisenberg(3, 1, 6),
                        GroupModel::gl2_congruence(3, 1, 6), GroupModel::heisenberg(5, 2, 6)}) {
    auto rep = validate_group(G, 30, 5, 42);
    for (const auto& a : rep.axioms) CHECK_MESSAGE(a.pass, G.name() << " " << a.axiom << " " << a.witness);
  }
  // Q_1 += X_1 Y_1
  auto bad = GroupModel::polynomial(3, 2, {{PolyTerm{1, {1, 0}, {1, 0}}}, {}}, 6);
  auto rep = validate_group(bad, 30, 5, 42);
  CHECK_FALSE(rep.all_pass());
  bool uniformity_failed = false;
  for (const auto& a : rep.axioms)
    if (a.axiom == "uniformity" && !a.pass) {
      uniformity_failed = true;
      CHECK(!a.witness.empty());
    }
  CHECK(uniformity_failed);
  // determinism
  CHECK(validate_group(bad, 30, 5, 42).axioms[3].witness == rep.axioms[3].witness);
}

TEST_CASE("finite quotients") {
  auto Z3 = finite_quotient(GroupModel::additive(3, 1, 4), 1);
  CHECK(Z3.order == 3);
  CHECK(Z3.mul(1, 2) == 0);
  CHECK(Z3.mul(1, 1) == 2);

  for (const auto& G : {GroupModel::heisenberg(3, 1, 4), GroupModel::gl2_congruence(3, 1, 4)}) {
    auto Q = finite_quotient(G, 1);
    CHECK(Q.order == static_cast<std::size_t>(G.d() == 3 ? 27 : 81));
    bool assoc = true, ident = true, inv = true;
    for (std::uint32_t a = 0; a < Q.order; ++a) {
      ident = ident && Q.mul(0, a) == a && Q.mul(a, 0) == a;
      inv = inv && Q.mul(a, Q.inverse[a]) == 0 && Q.mul(Q.inverse[a], a) == 0;
      for (std::uint32_t b = 0; b < Q.order; ++b)
        for (std::uint32_t c = 0; c < Q.order; ++c)
          if (Q.mul(Q.mul(a, b), c) != Q.mul(a, Q.mul(b, c))) assoc = false;
    }
    CHECK(assoc);
    CHECK(ident);
    CHECK(inv);
    // consistency with the matrix model
    std::mt19937_64 rng(3);
    for (int s = 0; s < 50; ++s) {
      std::uint32_t a = static_cast<std::uint32_t>(rng() % Q.order), b = static_cast<std::uint32_t>(rng() % Q.order);
      CHECK(Q.coords_of(Q.mul(a, b)) == G.multiply_via_matrices(Q.coords_of(a), Q.coords_of(b), 1));
    }
  }
  // G/G_1 is elementary abelian since [G, G] lies in G^p; G/G_2 is not abelian
  auto props = [](const FiniteQuotient& Q) {
    bool abelian = true;
    std::size_t exponent = 1;
    for (std::uint32_t a = 0; a < Q.order; ++a) {
      for (std::uint32_t b = 0; b < Q.order; ++b) abelian = abelian && Q.mul(a, b) == Q.mul(b, a);
      std::size_t k = 1;
      for (std::uint32_t x = a; x != 0; x = Q.mul(x, a)) ++k;
      exponent = std::max(exponent, k);
    }
    return std::make_pair(abelian, exponent);
  };
  auto H1 = props(finite_quotient(GroupModel::heisenberg(3, 1, 4), 1));
  CHECK(H1.first);
  CHECK(H1.second == 3);
  auto H2 = props(finite_quotient(GroupModel::heisenberg(3, 1, 4), 2));
  CHECK_FALSE(H2.first);
  CHECK(H2.second == 9);
  CHECK_THROWS_AS(finite_quotient(GroupModel::gl2_congruence(3, 1, 4), 3, 1 << 20), Error);
}

TEST_CASE("Lie brackets") {
  auto A = lie_bracket(GroupModel::additive(3, 3, 8));
  for (i64 c : A.c) CHECK(c == 0);

  auto H = GroupModel::heisenberg(3, 1, 8);
  auto L = lie_bracket(H);
  CHECK(L.source == "matrix_log");
  CHECK(L.precision == 6);
  int nonzero = 0;
  for (i64 c : L.c) nonzero += c != 0;
  CHECK(nonzero == 2);
  CHECK(L.at(0, 1, 2) == 3);
  padic::Ring R6(3, 6);
  CHECK(L.at(1, 0, 2) == R6.neg(3));
  auto F = lie_bracket_finite_difference(H);
  padic::Ring R(3, L.precision);
  for (std::size_t k = 0; k < L.c.size(); ++k) CHECK(R.reduce(F.c[k]) == L.c[k]);

  auto Gl = lie_bracket(GroupModel::gl2_congruence(3, 1, 8));
  CHECK(jacobi_holds(Gl));
  CHECK(jacobi_holds(L));
  padic::Ring RG(3, Gl.precision);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) CHECK(RG.add(Gl.at(i, j, k), Gl.at(j, i, k)) == 0);
  // [E12, E21] lies in the diagonal span, [E11, E22] = 0
  for (int k = 0; k < 4; ++k) CHECK(Gl.at(0, 3, k) == 0);
  CHECK(Gl.at(1, 2, 1) == 0);
  CHECK(Gl.at(1, 2, 2) == 0);
  CHECK(Gl.at(1, 2, 0) != 0);
  CHECK(Gl.at(1, 2, 3) != 0);
}

TEST_CASE("group spec parsing") {
  auto G = group_from_spec_json(R"({"kind":"matrix","p":3,"precision":6,
    "generators":[["11","0","0","1"],["1","10","0","1"],["1","0","10","1"],["1","0","0","11"]]})");
  CHECK(G.d() == 4);
  CHECK(G.level() == 1);
  auto B = group_from_spec_json(R"({"kind":"builtin","name":"gl2_congruence","p":3,"n":1,"precision":6})");
  CHECK(B.multiply({1, 2, 0, 1}, {2, 2, 1, 0}, 5) == G.multiply({1, 2, 0, 1}, {2, 2, 1, 0}, 5));
  CHECK_THROWS_AS(group_from_spec_json("{"), Error);
  CHECK_THROWS_AS(group_from_spec_json(R"({"kind":"matrix","p":3,"generators":[["12"]]})"), Error);
  CHECK(G.hash().size() == 16);
}
