#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <random>

#include "lazardlab/distribution.hpp"
#include "lazardlab/mahler.hpp"

using namespace lazard;
using namespace lazard::dist;
using group::Coords;
using group::GroupModel;

namespace {

Coords draw(std::mt19937_64& rng, int d, i64 mod) {
  Coords x(static_cast<std::size_t>(d));
  for (auto& v : x) v = static_cast<i64>(rng() % static_cast<std::uint64_t>(mod));
  return x;
}

// random element supported on |alpha| <= maxdeg
Distribution random_element(const AlgebraPtr& A, std::mt19937_64& rng, int maxdeg) {
  std::vector<i64> a(A->size(), 0);
  for (std::size_t k = 0; k < A->size(); ++k)
    if (total_degree(A->index()[k]) <= maxdeg && rng() % 3 == 0)
      a[k] = static_cast<i64>(rng() % static_cast<std::uint64_t>(A->ring().modulus()));
  return Distribution(A, a);
}

int law_precision(const AlgebraPtr& A) {
  return A->N() + static_cast<int>(mahler::factorial_valuation({A->D_ext()}, A->p()));
}

}  // namespace

TEST_CASE("diracs on Z_p") {
  auto A = Algebra::build(GroupModel::additive(3, 1, 6), 6, 6);
  auto d1 = dirac(A, {1});
  CHECK(d1 == Distribution::one(A) + Distribution::generator(A, 0));
  auto d2 = dirac(A, {2});
  CHECK(d2.at({0}) == 1);
  CHECK(d2.at({1}) == 2);
  CHECK(d2.at({2}) == 1);
  CHECK(d2.at({3}) == 0);
  CHECK(convolve(d1, d1) == d2);
  CHECK(dirac(A, {0}) == Distribution::one(A));
}

TEST_CASE("structure tensor: Vandermonde and unit laws") {
  auto T = build_structure_tensor(GroupModel::additive(3, 1, 6), 4, 6);
  CHECK(T.at(1, 1, 1) == 0);
  CHECK(T.at(2, 1, 1) == 1);
  for (const auto& G : {GroupModel::additive(3, 2, 6), GroupModel::heisenberg(3, 1, 6)}) {
    auto M = build_structure_tensor(G, 3, 5);
    for (std::size_t g = 0; g < M.index.size(); ++g)
      for (std::size_t a = 0; a < M.index.size(); ++a) {
        CHECK(M.at(g, a, 0) == (a == g ? 1 : 0));
        CHECK(M.at(g, 0, a) == (a == g ? 1 : 0));
      }
  }
}

TEST_CASE("left operators agree with the literal tensor and respect the filtration") {
  for (const auto& G : {GroupModel::heisenberg(3, 1, 6), GroupModel::gl2_congruence(3, 1, 6),
                        GroupModel::heisenberg(5, 1, 6)}) {
    const int N = 4, D = 3;
    auto A = Algebra::build(G, N, D);
    auto T = build_structure_tensor(G, D, N);
    for (int i = 0; i < G.d(); ++i) {
      MultiIndex ei(static_cast<std::size_t>(G.d()), 0);
      ei[static_cast<std::size_t>(i)] = 1;
      const std::size_t a = T.index.find(ei);
      for (std::size_t b = 0; b < T.index.size(); ++b) {
        std::vector<i64> col(A->size(), 0);
        col[A->index().find(T.index[b])] = 1;
        auto out = A->apply_left(i, col);
        for (std::size_t g = 0; g < T.index.size(); ++g)
          CHECK(out[A->index().find(T.index[g])] == T.at(g, a, b));
      }
      // weight(b_i b^beta) >= s(|beta| + 1)
      const auto& op = A->left_operator(i);
      for (std::size_t b = 0; b < A->size(); ++b)
        for (const auto& [g, c] : op.cols[b])
          CHECK(A->weight(g, c) >= A->weights().s * (total_degree(A->index()[b]) + 1));
    }
    // tensor product against operator product on low-degree elements
    std::mt19937_64 rng(9);
    for (int s = 0; s < 10; ++s) {
      auto mu = random_element(A, rng, D), nu = random_element(A, rng, D);
      std::vector<i64> m(T.index.size()), n(T.index.size());
      for (std::size_t k = 0; k < T.index.size(); ++k) {
        m[k] = mu.coeffs()[A->index().find(T.index[k])];
        n[k] = nu.coeffs()[A->index().find(T.index[k])];
      }
      auto viaT = convolve_with_tensor(T, m, n);
      auto prod = convolve(mu, nu);
      for (std::size_t k = 0; k < T.index.size(); ++k) CHECK(viaT[k] == prod.coeffs()[A->index().find(T.index[k])]);
    }
  }
}

TEST_CASE("tensor associativity for heisenberg") {
  auto G = GroupModel::heisenberg(3, 1, 6);
  const int D = 4;
  auto T = build_structure_tensor(G, D, 5);
  const std::size_t n = T.index.size();
  std::mt19937_64 rng(5);
  // sum_e M^e_{ab} M^g_{e c} = sum_e M^e_{bc} M^g_{a e} for |a|+|b|+|c| <= D
  int checked = 0;
  while (checked < 50) {
    std::size_t a = rng() % n, b = rng() % n, c = rng() % n;
    if (total_degree(T.index[a]) + total_degree(T.index[b]) + total_degree(T.index[c]) > D) continue;
    for (std::size_t g = 0; g < n; ++g) {
      i64 l = 0, r = 0;
      for (std::size_t e = 0; e < n; ++e) {
        l = T.ring.add(l, T.ring.mul(T.at(e, a, b), T.at(g, e, c)));
        r = T.ring.add(r, T.ring.mul(T.at(e, b, c), T.at(g, a, e)));
      }
      CHECK(l == r);
    }
    ++checked;
  }
}

TEST_CASE("dirac homomorphism, associativity, augmentation") {
  struct Case {
    GroupModel G;
    int N, D;
  };
  for (const auto& c : {Case{GroupModel::additive(3, 2, 6), 6, 6}, Case{GroupModel::heisenberg(3, 1, 6), 5, 5},
                        Case{GroupModel::gl2_congruence(3, 1, 6), 3, 3}}) {
    auto A = Algebra::build(c.G, c.N, c.D);
    const int lp = law_precision(A);
    padic::Ring L(A->p(), lp);
    std::mt19937_64 rng(77);
    for (int s = 0; s < 20; ++s) {
      Coords g = draw(rng, c.G.d(), L.modulus()), h = draw(rng, c.G.d(), L.modulus()),
             k = draw(rng, c.G.d(), L.modulus());
      auto dg = dirac(A, g), dh = dirac(A, h), dk = dirac(A, k);
      CHECK(convolve(dg, dh) == dirac(A, c.G.multiply(g, h, lp)));
      CHECK(convolve(convolve(dg, dh), dk) == convolve(dg, convolve(dh, dk)));
      CHECK(augmentation(dg) == 1);
      auto mu = random_element(A, rng, c.D), nu = random_element(A, rng, c.D);
      CHECK(augmentation(convolve(mu, nu)) == A->ring().mul(augmentation(mu), augmentation(nu)));
    }
  }
}

TEST_CASE("heisenberg commutator of b_1 and b_2") {
  auto G = GroupModel::heisenberg(3, 1, 6);
  auto A = Algebra::build(G, 5, 5);
  auto b1 = Distribution::generator(A, 0), b2 = Distribution::generator(A, 1);
  auto lhs = convolve(b1, b2) - convolve(b2, b1);
  const int lp = law_precision(A);
  auto rhs = dirac(A, G.multiply_via_matrices({1, 0, 0}, {0, 1, 0}, lp)) -
             dirac(A, G.multiply_via_matrices({0, 1, 0}, {1, 0, 0}, lp));
  CHECK(lhs == rhs);
  CHECK_FALSE(lhs.is_zero());
  for (std::size_t k = 0; k < A->size(); ++k)
    if (lhs.coeffs()[k]) CHECK(A->index()[k][2] >= 1);
  CHECK(lhs.at({0, 0, 1}) == A->ring().reduce(3));
}

TEST_CASE("commutativity for additive groups") {
  auto A = Algebra::build(GroupModel::additive(5, 3, 4), 4, 4);
  std::mt19937_64 rng(3);
  for (int s = 0; s < 10; ++s) {
    auto mu = random_element(A, rng, 4), nu = random_element(A, rng, 4);
    CHECK(convolve(mu, nu) == convolve(nu, mu));
  }
}

TEST_CASE("gauges") {
  auto A = Algebra::build(GroupModel::heisenberg(3, 1, 6), 5, 5);
  auto h1 = gauge::Radius::of(3, 1);
  CHECK(gauge::compare(dh_valuation(Distribution::one(A), h1), {0, 0, false}, h1) == 0);
  CHECK(gauge::compare(analytic_valuation(Distribution::one(A), h1), {0, 0, false}, h1) == 0);
  // b^alpha with unit coefficient: b(h)|alpha|
  auto m = Distribution::monomial(A, {2, 1, 0}, 2);
  CHECK(gauge::compare(dh_valuation(m, h1), {0, gauge::Rational(3, 2), false}, h1) == 0);
  auto A1 = Algebra::build(GroupModel::additive(3, 1, 6), 6, 9);
  auto b9 = Distribution::monomial(A1, {9});
  auto h0 = gauge::Radius::of(3, 0);
  // -(9*3^0 - 1)/2 + 9/2... = (9 - 1)/2 with s(9) = 1: v - s/(p-1) + |a| p^-h/(p-1)
  CHECK(gauge::compare(analytic_valuation(b9, h0), {gauge::Rational(-1, 2), gauge::Rational(9, 2), false}, h0) == 0);

  std::mt19937_64 rng(8);
  for (int s = 0; s < 100; ++s) {
    auto mu = random_element(A, rng, 2), nu = random_element(A, rng, 2);
    for (auto h : {gauge::Radius::of(3, 0), h1, gauge::Radius::of(3, 3, 2)}) {
      auto lhs = dh_valuation(convolve(mu, nu), h);
      auto rhs = dh_valuation(mu, h) + dh_valuation(nu, h);
      CHECK(gauge::compare(lhs, rhs, h) >= 0);
    }
  }
  // sandwich: dh(h') >= analytic(h') >= dh(h'') + C(h', h'')
  for (int s = 0; s < 200; ++s) {
    auto mu = random_element(A, rng, A->D_ext());
    const long long hp = 1, hpp = 2;
    auto r1 = gauge::Radius::of(3, hp), r2 = gauge::Radius::of(3, hpp);
    CHECK(gauge::compare(dh_valuation(mu, r1), analytic_valuation(mu, r1), r1) >= 0);
    // C = min over the window of ((3^-1 - 3^-2)|a| - s(a))/2, a plain rational
    gauge::Rational C = 0;
    for (std::size_t k = 0; k < A->size(); ++k) {
      const auto& a = A->index()[k];
      gauge::Rational c = (gauge::Rational(total_degree(a)) * gauge::Rational(2, 9) - mahler::digit_sum(a, 3)) / 2;
      if (k == 0 || c < C) C = c;
    }
    auto lower = dh_valuation(mu, r2);
    if (lower.infinite) continue;
    // dh(h'') is a + b 3^-2 exactly; rewrite it in the 3^-1 basis
    gauge::Value shifted{lower.a + lower.b / 9 + C, 0, false};
    CHECK(gauge::compare(analytic_valuation(mu, r1), shifted, r1) >= 0);
  }
}

TEST_CASE("specialization") {
  auto G = GroupModel::heisenberg(3, 1, 6);
  auto A = Algebra::build(G, 5, 5);
  auto triv = Representation::trivial(3, 3, 5);
  std::mt19937_64 rng(12);
  auto mu = random_element(A, rng, 5);
  CHECK(specialize(mu, triv)(0, 0) == augmentation(mu));

  auto st = Representation::standard(G, 5);
  const int lp = law_precision(A);
  padic::Ring L(3, lp);
  for (int s = 0; s < 100; ++s) {
    Coords g = draw(rng, 3, L.modulus());
    if (s < 20) CHECK(specialize(dirac(A, g), st) == G.recompose(g, 5).coarsen(5));
    auto x = random_element(A, rng, A->D_ext()), y = random_element(A, rng, A->D_ext());
    CHECK(specialize(convolve(x, y), st) == specialize(x, st) * specialize(y, st));
  }
  Representation bad = st;
  bad.images[0](0, 1) = 1;
  CHECK_THROWS_AS(specialize(mu, bad), Error);
}

TEST_CASE("dump format and operator cache") {
  auto G = GroupModel::heisenberg(3, 1, 6);
  auto dir = std::filesystem::temp_directory_path() / "lazardlab_test_cache";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  auto A = Algebra::build(G, 4, 4, dir.string());
  CHECK_FALSE(A->loaded_from_cache());
  auto B = Algebra::build(G, 4, 4, dir.string());
  CHECK(B->loaded_from_cache());
  for (int i = 0; i < 3; ++i) CHECK(A->left_operator(i).cols == B->left_operator(i).cols);
  std::mt19937_64 rng(1);
  auto mu = random_element(A, rng, 4);
  auto text = dump_json(mu);
  CHECK(load_json(A, text) == mu);
  CHECK(dump_json(load_json(A, text)) == text);
  auto other = Algebra::build(GroupModel::additive(3, 3, 6), 4, 4);
  CHECK_THROWS_AS(load_json(other, text), Error);
  std::filesystem::remove_all(dir);
}
