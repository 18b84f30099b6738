#include "lazardlab/group.hpp"

#include <algorithm>
#include <cstdio>
#include <random>
#include <sstream>

#include "json.hpp"

namespace lazard::group {

namespace {

int max_precision(i64 p) {
  int M = 0;
  i64 m = 1;
  while (m <= ((static_cast<i64>(1) << 62) / p)) {
    m *= p;
    ++M;
  }
  return M;
}

void require_odd_prime(i64 p) {
  if (p == 2) fail(ErrorCode::UnsupportedPrime, "p = 2 is not supported in group pipelines");
  if (p < 3) fail(ErrorCode::InvalidArgument, "p must be an odd prime");
  for (i64 q = 2; q * q <= p; ++q)
    if (p % q == 0) fail(ErrorCode::InvalidArgument, "p must be prime");
}

std::string coords_str(const Coords& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(x[i]);
  }
  return s + ")";
}

Coords reduced(const Coords& x, const Ring& R) {
  Coords out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = R.reduce(x[i]);
  return out;
}

i64 ipow_mod(i64 base, int e, const Ring& R) {
  i64 r = R.reduce(1);
  i64 b = R.reduce(base);
  for (int k = 0; k < e; ++k) r = R.mul(r, b);
  return r;
}

}  // namespace

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Additive: return "additive";
    case Kind::Heisenberg: return "heisenberg";
    case Kind::GL2Congruence: return "gl2_congruence";
    case Kind::Matrix: return "matrix";
    case Kind::Polynomial: return "polynomial";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// builders

GroupModel GroupModel::additive(i64 p, int d, int N) {
  require_odd_prime(p);
  if (d < 1) fail(ErrorCode::InvalidArgument, "dimension must be >= 1");
  GroupModel G;
  G.kind_ = Kind::Additive;
  G.name_ = "additive";
  G.p_ = p;
  G.d_ = d;
  G.N_ = N;
  G.level_ = 1;
  return G;
}

GroupModel GroupModel::heisenberg(i64 p, int n, int N) {
  require_odd_prime(p);
  if (n < 1) fail(ErrorCode::InvalidArgument, "level must be >= 1");
  Ring R(p, max_precision(p));
  const i64 pn = R.pow(n);
  // E_12(p^n), E_23(p^n), E_13(p^n)
  std::vector<std::vector<i64>> gens = {
      {1, pn, 0, 0, 1, 0, 0, 0, 1}, {1, 0, 0, 0, 1, pn, 0, 0, 1}, {1, 0, pn, 0, 1, 0, 0, 0, 1}};
  GroupModel G = matrix(p, gens, N, "heisenberg");
  G.kind_ = Kind::Heisenberg;
  return G;
}

GroupModel GroupModel::gl2_congruence(i64 p, int n, int N) {
  require_odd_prime(p);
  if (n < 1) fail(ErrorCode::InvalidArgument, "level must be >= 1");
  Ring R(p, max_precision(p));
  const i64 pn = R.pow(n);
  // 1 + p^n E_11, 1 + p^n E_12, 1 + p^n E_21, 1 + p^n E_22
  std::vector<std::vector<i64>> gens = {{1 + pn, 0, 0, 1}, {1, pn, 0, 1}, {1, 0, pn, 1}, {1, 0, 0, 1 + pn}};
  GroupModel G = matrix(p, gens, N, "gl2_congruence");
  G.kind_ = Kind::GL2Congruence;
  return G;
}

GroupModel GroupModel::matrix(i64 p, std::vector<std::vector<i64>> generators, int N, std::string name) {
  require_odd_prime(p);
  if (generators.empty()) fail(ErrorCode::InvalidArgument, "matrix model needs generators");
  const std::size_t sq = generators[0].size();
  std::size_t k = 1;
  while (k * k < sq) ++k;
  if (k * k != sq) fail(ErrorCode::InvalidArgument, "generator is not a square matrix");
  Ring R(p, max_precision(p));
  int level = R.N();
  for (auto& g : generators) {
    if (g.size() != sq) fail(ErrorCode::InvalidArgument, "generators differ in size");
    for (auto& e : g) e = R.reduce(e);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        i64 v = R.sub(g[i * k + j], i == j ? 1 : 0);
        level = std::min(level, R.valuation(v));
      }
  }
  if (level < 1) fail(ErrorCode::NotInGroup, "generators must be congruent to the identity mod p");
  if (level >= R.N()) fail(ErrorCode::InvalidArgument, "a generator equals the identity");
  GroupModel G;
  G.kind_ = Kind::Matrix;
  G.name_ = std::move(name);
  G.p_ = p;
  G.d_ = static_cast<int>(generators.size());
  G.N_ = N;
  G.level_ = level;
  G.k_ = k;
  G.gens_ = std::move(generators);
  // the reductions (g_i - 1)/p^n mod p must be independent
  Ring F(p, 1);
  PNMatrix A(F, k * k, G.gens_.size());
  for (std::size_t i = 0; i < G.gens_.size(); ++i)
    for (std::size_t e = 0; e < sq; ++e) {
      i64 v = R.sub(G.gens_[i][e], (e % (k + 1) == 0) ? 1 : 0);
      A(e, i) = (v / R.pow(level)) % p;
    }
  auto inv = padic::smith_invariants(A);
  if (!inv.empty() && inv.back() != 0)
    fail(ErrorCode::InvalidArgument, "generators are not independent mod p (not a uniform basis)");
  return G;
}

GroupModel GroupModel::polynomial(i64 p, int d, std::vector<std::vector<PolyTerm>> corrections, int N,
                                  std::string name) {
  require_odd_prime(p);
  if (static_cast<int>(corrections.size()) != d)
    fail(ErrorCode::InvalidArgument, "polynomial law needs one correction list per coordinate");
  for (const auto& list : corrections)
    for (const auto& t : list)
      if (static_cast<int>(t.x_exp.size()) != d || static_cast<int>(t.y_exp.size()) != d)
        fail(ErrorCode::InvalidArgument, "polynomial term exponent length must equal d");
  GroupModel G;
  G.kind_ = Kind::Polynomial;
  G.name_ = std::move(name);
  G.p_ = p;
  G.d_ = d;
  G.N_ = N;
  G.level_ = 1;
  G.corr_ = std::move(corrections);
  return G;
}

GroupModel builtin_group(const std::string& name, i64 p, int d, int n, int N) {
  if (name == "additive") return GroupModel::additive(p, d, N);
  if (name == "heisenberg") return GroupModel::heisenberg(p, n, N);
  if (name == "gl2_congruence" || name == "gl2") return GroupModel::gl2_congruence(p, n, N);
  fail(ErrorCode::InvalidArgument, "unknown builtin group '" + name + "'");
}

// ---------------------------------------------------------------------------
// matrix realization

Ring GroupModel::matrix_ring(int m) const {
  if (!has_matrices()) fail(ErrorCode::InvalidArgument, "group has no matrix realization");
  if (m + level_ > max_precision(p_)) fail(ErrorCode::PrecisionExhausted, "matrix precision exceeds 62 bits");
  return Ring(p_, m + level_);
}

PNMatrix GroupModel::generator(std::size_t i, const Ring& R) const {
  return PNMatrix(R, k_, k_, gens_[i]);
}

PNMatrix GroupModel::generator_power(std::size_t i, i64 e, const Ring& R, int m) const {
  // g has order dividing p^m modulo p^{m + level}
  Ring E(p_, m);
  e = E.reduce(e);
  PNMatrix result = PNMatrix::identity(R, k_);
  PNMatrix base = generator(i, R);
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

PNMatrix GroupModel::recompose(const Coords& x, int m) const {
  Ring R = matrix_ring(m);
  PNMatrix M = PNMatrix::identity(R, k_);
  for (std::size_t i = 0; i < gens_.size(); ++i) M = M * generator_power(i, x[i], R, m);
  return M;
}

Coords GroupModel::chart_decompose(const PNMatrix& M_in, int m) const {
  Ring R = matrix_ring(m);
  if (M_in.rows() != k_ || M_in.cols() != k_) fail(ErrorCode::InvalidArgument, "matrix has the wrong size");
  if (M_in.ring().p() != p_ || M_in.ring().N() < R.N())
    fail(ErrorCode::InvalidArgument, "matrix is not known to enough precision");
  PNMatrix M = M_in.ring().N() == R.N() ? M_in : M_in.coarsen(R.N());
  PNMatrix I = PNMatrix::identity(R, k_);
  const PNMatrix diff = M - I;
  for (i64 v : diff.data())
    if (R.valuation(v) < level_) fail(ErrorCode::NotInGroup, "matrix is not congruent to 1 mod p^level");

  Ring F(p_, 1);
  PNMatrix A(F, k_ * k_, gens_.size());
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    PNMatrix g = generator(i, R) - I;
    for (std::size_t e = 0; e < k_ * k_; ++e) A(e, i) = (g.data()[e] / R.pow(level_)) % p_;
  }

  Coords x(gens_.size(), 0);
  for (int t = 0; t < m; ++t) {
    // phi(x)^{-1} = g_d^{-x_d} ... g_1^{-x_1}
    PNMatrix inv = I;
    for (std::size_t i = gens_.size(); i-- > 0;) inv = inv * generator_power(i, -x[i], R, m);
    PNMatrix E = inv * M - I;
    const int v = level_ + t;
    std::vector<i64> rhs(k_ * k_);
    for (std::size_t e = 0; e < rhs.size(); ++e) {
      i64 val = E.data()[e];
      if (val != 0 && R.valuation(val) < v)
        fail(ErrorCode::NoConvergence, "chart digits failed to stabilize at digit " + std::to_string(t));
      rhs[e] = (val / R.pow(v)) % p_;
    }
    std::vector<i64> delta;
    if (!padic::solve(A, rhs, delta)) fail(ErrorCode::NotInGroup, "matrix is not in the group generated by the chart");
    Ring X(p_, m);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = X.add(x[i], X.mul(delta[i], X.pow(t)));
  }
  if (!(recompose(x, m) == M)) fail(ErrorCode::NotInGroup, "matrix is not in the group generated by the chart");
  return x;
}

Coords GroupModel::multiply_via_matrices(const Coords& x, const Coords& y, int m) const {
  return chart_decompose(recompose(x, m) * recompose(y, m), m);
}

// ---------------------------------------------------------------------------
// group law

Coords GroupModel::multiply(const Coords& x_in, const Coords& y_in, int m) const {
  if (static_cast<int>(x_in.size()) != d_ || static_cast<int>(y_in.size()) != d_)
    fail(ErrorCode::InvalidArgument, "coordinate vector has the wrong length");
  Ring R(p_, m);
  Coords x = reduced(x_in, R), y = reduced(y_in, R);
  Coords z(d_);
  switch (kind_) {
    case Kind::Additive:
      for (int i = 0; i < d_; ++i) z[i] = R.add(x[i], y[i]);
      return z;
    case Kind::Heisenberg: {
      const i64 pn = level_ >= m ? 0 : R.pow(level_);
      z[0] = R.add(x[0], y[0]);
      z[1] = R.add(x[1], y[1]);
      z[2] = R.sub(R.add(x[2], y[2]), R.mul(pn, R.mul(x[1], y[0])));
      return z;
    }
    case Kind::GL2Congruence:
    case Kind::Matrix:
      return multiply_via_matrices(x, y, m);
    case Kind::Polynomial:
      for (int k = 0; k < d_; ++k) {
        i64 acc = R.add(x[k], y[k]);
        for (const auto& t : corr_[k]) {
          i64 term = R.reduce(t.coefficient);
          for (int i = 0; i < d_; ++i) {
            term = R.mul(term, ipow_mod(x[i], t.x_exp[i], R));
            term = R.mul(term, ipow_mod(y[i], t.y_exp[i], R));
          }
          acc = R.add(acc, term);
        }
        z[k] = acc;
      }
      return z;
  }
  fail(ErrorCode::Internal, "unhandled group kind");
}

Coords GroupModel::inverse(const Coords& x_in, int m) const {
  Ring R(p_, m);
  Coords x = reduced(x_in, R);
  Coords y(d_);
  switch (kind_) {
    case Kind::Additive:
      for (int i = 0; i < d_; ++i) y[i] = R.neg(x[i]);
      return y;
    case Kind::Heisenberg: {
      const i64 pn = level_ >= m ? 0 : R.pow(level_);
      y[0] = R.neg(x[0]);
      y[1] = R.neg(x[1]);
      y[2] = R.sub(R.neg(x[2]), R.mul(pn, R.mul(x[0], x[1])));
      return y;
    }
    case Kind::GL2Congruence:
    case Kind::Matrix: {
      Ring MR = matrix_ring(m);
      PNMatrix inv = PNMatrix::identity(MR, k_);
      for (std::size_t i = gens_.size(); i-- > 0;) inv = inv * generator_power(i, -x[i], MR, m);
      return chart_decompose(inv, m);
    }
    case Kind::Polynomial:
      break;
  }
  // y <- y - psi(x, y) converges when the law is congruent to x + y
  for (int i = 0; i < d_; ++i) y[i] = R.neg(x[i]);
  for (int it = 0; it < 4 * m + 8; ++it) {
    Coords e = multiply(x, y, m);
    if (std::all_of(e.begin(), e.end(), [](i64 v) { return v == 0; })) return y;
    for (int i = 0; i < d_; ++i) y[i] = R.sub(y[i], e[i]);
  }
  fail(ErrorCode::NoConvergence, "inverse iteration did not converge for x = " + coords_str(x));
}

std::string GroupModel::hash() const {
  std::ostringstream s;
  s << kind_name(kind_) << '|' << name_ << '|' << p_ << '|' << d_ << '|' << level_ << '|';
  for (const auto& g : gens_) {
    for (i64 e : g) s << e << ',';
    s << ';';
  }
  for (const auto& list : corr_) {
    for (const auto& t : list) {
      s << t.coefficient << ':';
      for (int e : t.x_exp) s << e << ',';
      s << ':';
      for (int e : t.y_exp) s << e << ',';
      s << ';';
    }
    s << '/';
  }
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s.str()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---------------------------------------------------------------------------
// spec files

GroupModel group_from_spec_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorCode::Parse, std::string("group spec: ") + e.what());
  }
  try {
    const std::string kind = j.value("kind", "builtin");
    const i64 p = j.at("p").get<i64>();
    const int N = j.value("precision", 8);
    if (kind == "builtin") {
      return builtin_group(j.at("name").get<std::string>(), p, j.value("d", 1), j.value("n", 1), N);
    }
    if (kind == "matrix") {
      Ring R(p, max_precision(p));
      std::vector<std::vector<i64>> gens;
      for (const auto& g : j.at("generators")) {
        std::vector<i64> flat;
        for (const auto& e : g) flat.push_back(padic::parse_digits(R, e.get<std::string>()));
        gens.push_back(std::move(flat));
      }
      return GroupModel::matrix(p, std::move(gens), N, j.value("name", "matrix"));
    }
    if (kind == "polynomial") {
      const int d = j.at("d").get<int>();
      std::vector<std::vector<PolyTerm>> corr;
      for (const auto& list : j.at("law")) {
        std::vector<PolyTerm> terms;
        for (const auto& t : list)
          terms.push_back({t.at("c").get<i64>(), t.at("x").get<std::vector<int>>(), t.at("y").get<std::vector<int>>()});
        corr.push_back(std::move(terms));
      }
      return GroupModel::polynomial(p, d, std::move(corr), N, j.value("name", "polynomial"));
    }
    fail(ErrorCode::Parse, "group spec: unknown kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, std::string("group spec: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// validation

bool ValidationReport::all_pass() const {
  return std::all_of(axioms.begin(), axioms.end(), [](const AxiomResult& a) { return a.pass; });
}

ValidationReport validate_group(const GroupModel& G, int sample_count, int m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Ring R(G.p(), m);
  const int d = G.d();
  auto draw = [&] {
    Coords x(d);
    for (auto& v : x) v = static_cast<i64>(rng() % static_cast<std::uint64_t>(R.modulus()));
    return x;
  };
  const Coords zero(d, 0);
  AxiomResult ident{"identity", true, ""}, assoc{"associativity", true, ""}, inv{"inverse", true, ""},
      unif{"uniformity", true, ""}, filt{"filtration", true, ""};
  auto mark = [](AxiomResult& a, const std::string& w) {
    if (a.pass) {
      a.pass = false;
      a.witness = w;
    }
  };
  for (int s = 0; s < sample_count; ++s) {
    Coords x = draw(), y = draw(), z = draw();
    try {
      Coords xy = G.multiply(x, y, m);
      if (G.multiply(x, zero, m) != x || G.multiply(zero, x, m) != x) mark(ident, "x=" + coords_str(x));
      Coords l = G.multiply(xy, z, m), r = G.multiply(x, G.multiply(y, z, m), m);
      if (l != r)
        mark(assoc, "x=" + coords_str(x) + " y=" + coords_str(y) + " z=" + coords_str(z) + " (xy)z=" + coords_str(l) +
                        " x(yz)=" + coords_str(r));
      for (int i = 0; i < d; ++i)
        if ((xy[i] - x[i] - y[i]) % G.p() != 0) {
          mark(unif, "x=" + coords_str(x) + " y=" + coords_str(y) + " psi=" + coords_str(xy));
          break;
        }
      if (m > 1) {
        const int n = 1 + s % (m - 1);
        Coords x2 = x, y2 = y;
        for (int i = 0; i < d; ++i) {
          x2[i] = R.add(x2[i], R.mul(R.pow(n), static_cast<i64>(rng() % 97)));
          y2[i] = R.add(y2[i], R.mul(R.pow(n), static_cast<i64>(rng() % 97)));
        }
        Coords a = G.multiply(x, y, n), b = G.multiply(x2, y2, n);
        if (a != b)
          mark(filt, "n=" + std::to_string(n) + " x=" + coords_str(x) + " x'=" + coords_str(x2) + " y=" + coords_str(y) +
                         " y'=" + coords_str(y2));
      }
    } catch (const Error& e) {
      mark(assoc, std::string("law evaluation failed: ") + e.what());
    }
    try {
      Coords xi = G.inverse(x, m);
      if (G.multiply(x, xi, m) != zero || G.multiply(xi, x, m) != zero) mark(inv, "x=" + coords_str(x));
    } catch (const Error& e) {
      mark(inv, "x=" + coords_str(x) + ": " + e.what());
    }
  }
  return {{ident, assoc, inv, unif, filt}};
}

// ---------------------------------------------------------------------------
// finite quotients

std::size_t FiniteQuotient::index_of(const Coords& x) const {
  std::size_t idx = 0, mult = 1;
  std::size_t q = 1;
  for (int k = 0; k < n; ++k) q *= static_cast<std::size_t>(p);
  for (int i = 0; i < d; ++i) {
    i64 v = x[i] % static_cast<i64>(q);
    if (v < 0) v += static_cast<i64>(q);
    idx += static_cast<std::size_t>(v) * mult;
    mult *= q;
  }
  return idx;
}

Coords FiniteQuotient::coords_of(std::size_t idx) const {
  std::size_t q = 1;
  for (int k = 0; k < n; ++k) q *= static_cast<std::size_t>(p);
  Coords x(d);
  for (int i = 0; i < d; ++i) {
    x[i] = static_cast<i64>(idx % q);
    idx /= q;
  }
  return x;
}

FiniteQuotient finite_quotient(const GroupModel& G, int n, std::size_t mem_cap_bytes) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "quotient level must be >= 1");
  FiniteQuotient Q;
  Q.p = G.p();
  Q.n = n;
  Q.d = G.d();
  double order = 1;
  for (int k = 0; k < n * G.d(); ++k) order *= static_cast<double>(G.p());
  const double bytes = order * order * sizeof(std::uint32_t);
  if (order > 4.0e9 || bytes > static_cast<double>(mem_cap_bytes))
    fail(ErrorCode::ResourceCap, "multiplication table of order " + std::to_string(static_cast<long long>(order)) +
                                     " exceeds the memory cap");
  Q.order = static_cast<std::size_t>(order);
  Q.table.resize(Q.order * Q.order);
  Q.inverse.resize(Q.order);
  std::vector<Coords> elems(Q.order);
  for (std::size_t a = 0; a < Q.order; ++a) elems[a] = Q.coords_of(a);
  for (std::size_t a = 0; a < Q.order; ++a)
    for (std::size_t b = 0; b < Q.order; ++b) {
      auto c = static_cast<std::uint32_t>(Q.index_of(G.multiply(elems[a], elems[b], n)));
      Q.table[a * Q.order + b] = c;
      if (c == 0) Q.inverse[a] = static_cast<std::uint32_t>(b);
    }
  return Q;
}

// ---------------------------------------------------------------------------
// Lie brackets

namespace {

int bracket_precision(i64 p, int N) {
  int e = 0;
  i64 q = 1;
  while (q < N) {
    q *= p;
    ++e;
  }
  return N - e;
}

}  // namespace

LieBracketConstants lie_bracket_matrix_log(const GroupModel& G) {
  if (!G.has_matrices()) fail(ErrorCode::InvalidArgument, "matrix logarithm needs a matrix realization");
  const i64 p = G.p();
  const int d = G.d();
  const int N = G.N();
  const int prec = bracket_precision(p, N);
  if (prec < 1) fail(ErrorCode::PrecisionExhausted, "precision too small for bracket constants");
  const int n = G.level();
  const std::size_t k = G.matrix_size();
  Ring big(p, N + n);
  Ring R(p, N);
  // Y_i = log(g_i) / p^n = sum_j (-1)^{j+1} p^{n(j-1)} A^j / j with A = (g_i - 1)/p^n
  std::vector<PNMatrix> Y;
  for (int i = 0; i < d; ++i) {
    PNMatrix A(R, k, k);
    for (std::size_t e = 0; e < k * k; ++e) {
      i64 v = big.sub(big.reduce(G.generator_entries()[i][e]), (e % (k + 1) == 0) ? 1 : 0);
      A(e / k, e % k) = (v / big.pow(n)) % R.modulus();
    }
    PNMatrix acc(R, k, k), power = PNMatrix::identity(R, k);
    for (int j = 1; j <= N + 40; ++j) {
      power = power * A;
      int vj = 0;
      i64 unit = j;
      while (unit % p == 0) {
        unit /= p;
        ++vj;
      }
      const int e = n * (j - 1) - vj;
      if (e >= N) continue;
      i64 coef = R.mul(R.pow(e), R.inverse(R.reduce(unit)));
      if (j % 2 == 0) coef = R.neg(coef);
      acc = acc + power.scaled(coef);
    }
    Y.push_back(acc);
  }
  PNMatrix basis(R, k * k, d);
  for (int i = 0; i < d; ++i)
    for (std::size_t e = 0; e < k * k; ++e) basis(e, i) = Y[i].data()[e];
  LieBracketConstants L;
  L.p = p;
  L.d = d;
  L.precision = prec;
  L.source = "matrix_log";
  L.c.assign(static_cast<std::size_t>(d) * d * d, 0);
  Ring out(p, prec);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      PNMatrix br = (Y[i] * Y[j] - Y[j] * Y[i]).scaled(R.pow(n) % R.modulus());
      std::vector<i64> sol;
      if (!padic::solve(basis, br.data(), sol))
        fail(ErrorCode::PrecisionExhausted, "bracket does not lie in the span of the generators' logarithms");
      for (int t = 0; t < d; ++t) L.c[(static_cast<std::size_t>(i) * d + j) * d + t] = out.reduce(sol[t]);
    }
  return L;
}

LieBracketConstants lie_bracket_finite_difference(const GroupModel& G) {
  const int d = G.d();
  const int N = G.N();
  // second differences are exact when the law is bilinear in x, y beyond x + y
  bool bilinear = G.kind() == Kind::Additive || G.kind() == Kind::Heisenberg;
  if (G.kind() == Kind::Polynomial) {
    bilinear = true;
    for (const auto& list : G.corrections())
      for (const auto& t : list)
        for (int i = 0; i < d; ++i)
          if (t.x_exp[i] > 1 || t.y_exp[i] > 1) bilinear = false;
    for (const auto& list : G.corrections())
      for (const auto& t : list) {
        int sx = 0, sy = 0;
        for (int i = 0; i < d; ++i) sx += t.x_exp[i], sy += t.y_exp[i];
        if (sx != 1 || sy != 1) bilinear = false;
      }
  }
  const int prec = bilinear ? N : std::min(N, G.level());
  Ring R(G.p(), prec);
  Coords zero(d, 0);
  auto unit = [&](int i) {
    Coords e(d, 0);
    e[i] = 1;
    return e;
  };
  auto second = [&](int i, int j) {
    Coords a = G.multiply(unit(i), unit(j), prec);
    Coords b = G.multiply(unit(i), zero, prec);
    Coords c = G.multiply(zero, unit(j), prec);
    Coords r(d);
    for (int t = 0; t < d; ++t) r[t] = R.sub(R.sub(a[t], b[t]), c[t]);
    return r;
  };
  LieBracketConstants L;
  L.p = G.p();
  L.d = d;
  L.precision = prec;
  L.source = "finite_difference";
  L.c.assign(static_cast<std::size_t>(d) * d * d, 0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Coords a = second(i, j), b = second(j, i);
      for (int t = 0; t < d; ++t) L.c[(static_cast<std::size_t>(i) * d + j) * d + t] = R.sub(a[t], b[t]);
    }
  return L;
}

LieBracketConstants lie_bracket(const GroupModel& G) {
  return G.has_matrices() ? lie_bracket_matrix_log(G) : lie_bracket_finite_difference(G);
}

}  // namespace lazard::group
