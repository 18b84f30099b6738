#include "lazardlab/complexes.hpp"

#include <map>
#include <sstream>

namespace lazard::cx {

using dist::Distribution;
using gauge::Rational;

bool ScalarComplex::d2_zero() const {
  for (std::size_t i = 0; i + 1 < d.size(); ++i)
    if (!(d[i + 1] * d[i]).is_zero()) return false;
  return true;
}

std::vector<int> CohomologyReport::full_ranks() const {
  std::vector<int> r;
  for (const auto& m : degrees) r.push_back(m.full_rank_count);
  return r;
}

int CohomologyReport::euler() const {
  int e = 0;
  for (std::size_t i = 0; i < degrees.size(); ++i) e += (i % 2 ? -1 : 1) * degrees[i].full_rank_count;
  return e;
}

nlohmann::ordered_json invariants_json(const ModuleInvariants& m, int N) {
  std::vector<int> torsion;
  for (int e : m.divisor_exponents)
    if (e < N) torsion.push_back(e);
  return {{"divisors", m.divisor_exponents}, {"full_rank", m.full_rank_count}, {"torsion", torsion}};
}

nlohmann::ordered_json CohomologyReport::to_json() const {
  nlohmann::ordered_json j;
  j["method"] = method;
  j["params"] = params;
  auto& deg = j["degrees"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    nlohmann::ordered_json e = {{"i", i}};
    const auto inv = invariants_json(degrees[i], N);
    for (auto it = inv.begin(); it != inv.end(); ++it) e[it.key()] = it.value();
    deg.push_back(std::move(e));
  }
  j["checks"] = {{"d2_zero", d2_zero}, {"euler", euler()}};
  for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
  if (timing_ms) j["timing_ms"] = *timing_ms;
  return j;
}

CohomologyReport cohomology(const ScalarComplex& C, const std::string& method, int max_degree) {
  CohomologyReport rep;
  rep.method = method;
  rep.N = C.ring.N();
  rep.d2_zero = C.d2_zero();
  const int top = max_degree < 0 ? C.top() : std::min(C.top(), max_degree);
  for (int i = 0; i <= top; ++i) {
    PNMatrix din = i == 0 ? PNMatrix(C.ring, C.dims[0], 0) : C.d[static_cast<std::size_t>(i) - 1];
    PNMatrix dout = i == C.top() ? PNMatrix(C.ring, 0, C.dims[static_cast<std::size_t>(i)])
                                 : C.d[static_cast<std::size_t>(i)];
    rep.degrees.push_back(padic::homology_at(din, dout));
  }
  // nothing above the top of the complex
  for (int i = top + 1; i <= max_degree; ++i) rep.degrees.push_back(ModuleInvariants{});
  return rep;
}

// ---------------------------------------------------------------------------
// Lazard-Serre resolution

std::vector<std::vector<int>> subsets(int d, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > d) return out;
  std::vector<int> cur(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == d - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

namespace {

std::size_t subset_pos(const std::vector<std::vector<int>>& list, const std::vector<int>& s) {
  auto it = std::lower_bound(list.begin(), list.end(), s);
  return static_cast<std::size_t>(it - list.begin());
}

DistMatrix zero_matrix(const dist::AlgebraPtr& alg, std::size_t r, std::size_t c) {
  return DistMatrix(r, std::vector<Distribution>(c, Distribution::zero(alg)));
}

// K[J][J \ {j_t}] = (-1)^t b_{j_t}
DistMatrix koszul_matrix(const dist::AlgebraPtr& alg, int d, int k) {
  const auto rows = subsets(d, k), cols = subsets(d, k - 1);
  DistMatrix K = zero_matrix(alg, rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (int t = 0; t < k; ++t) {
      std::vector<int> face = rows[r];
      face.erase(face.begin() + t);
      Distribution b = Distribution::generator(alg, rows[r][static_cast<std::size_t>(t)]);
      K[r][subset_pos(cols, face)] = t % 2 ? -b : b;
    }
  return K;
}

int matrix_weight(const DistMatrix& M, int W) {
  int w = W;
  for (const auto& row : M)
    for (const auto& e : row) w = std::min(w, e.weight());
  return w;
}

bool matrix_zero(const DistMatrix& M) {
  for (const auto& row : M)
    for (const auto& e : row)
      if (!e.is_zero()) return false;
  return true;
}

// Solves X * K_{k-1} = -(lowest weight part of R) in gr Lambda = F_p[pi, b_1..b_d]
// and returns a lift X. R has rows = k-subsets, cols = (k-2)-subsets. The
// Koszul differential preserves the multidegree gamma + e_S of a monomial b^gamma
// in column S, so the system splits by (pi power, multidegree).
DistMatrix graded_correction(const dist::AlgebraPtr& alg, int d, int k, const DistMatrix& R, int w) {
  const auto& A = *alg;
  const i64 p = A.p();
  const Ring F(p, 1);
  const auto& idx = A.index();
  const auto mid = subsets(d, k - 1), low = subsets(d, k - 2);
  auto shifted = [](MultiIndex m, const std::vector<int>& S, int sign) {
    for (int i : S) m[static_cast<std::size_t>(i)] += sign;
    return m;
  };
  auto nonneg = [](const MultiIndex& m) { return std::all_of(m.begin(), m.end(), [](int x) { return x >= 0; }); };
  DistMatrix X = zero_matrix(alg, R.size(), mid.size());
  for (std::size_t r = 0; r < R.size(); ++r) {
    // (pi power, multidegree) -> (column S, gamma position) -> digit
    std::map<std::pair<int, MultiIndex>, std::map<std::size_t, i64>> targets;
    for (std::size_t S = 0; S < low.size(); ++S) {
      const auto& c = R[r][S].coeffs();
      for (std::size_t pos = 0; pos < c.size(); ++pos) {
        if (c[pos] == 0 || A.weight(pos, c[pos]) != w) continue;
        const int a = A.ring().valuation(c[pos]);
        const i64 digit = (c[pos] / A.ring().pow(a)) % p;
        targets[{a, shifted(idx[pos], low[S], 1)}][S] = digit;
      }
    }
    for (const auto& [key, rhs] : targets) {
      const auto& [a, mu] = key;
      std::vector<std::size_t> unk;  // columns I with mu - e_I >= 0
      for (std::size_t I = 0; I < mid.size(); ++I)
        if (nonneg(shifted(mu, mid[I], -1))) unk.push_back(I);
      std::vector<std::size_t> eqs;  // columns S with mu - e_S >= 0
      for (std::size_t S = 0; S < low.size(); ++S)
        if (nonneg(shifted(mu, low[S], -1))) eqs.push_back(S);
      PNMatrix sys(F, eqs.size(), unk.size());
      for (std::size_t u = 0; u < unk.size(); ++u) {
        const auto& I = mid[unk[u]];
        for (std::size_t t = 0; t < I.size(); ++t) {
          std::vector<int> face = I;
          face.erase(face.begin() + static_cast<std::ptrdiff_t>(t));
          const auto e = std::find(eqs.begin(), eqs.end(), subset_pos(low, face));
          if (e != eqs.end()) sys(static_cast<std::size_t>(e - eqs.begin()), u) = t % 2 ? F.neg(1) : 1;
        }
      }
      std::vector<i64> b(eqs.size(), 0);
      for (const auto& [S, v] : rhs) b[static_cast<std::size_t>(std::find(eqs.begin(), eqs.end(), S) - eqs.begin())] = F.neg(v);
      std::vector<i64> x;
      if (!padic::solve(sys, b, x))
        fail(ErrorCode::NoConvergence, "lifting obstruction at weight " + std::to_string(w) + " in degree " +
                                           std::to_string(k) + " is not a Koszul boundary");
      for (std::size_t u = 0; u < unk.size(); ++u) {
        if (x[u] == 0) continue;
        const i64 coef = A.ring().mul(x[u], A.ring().pow(a));
        X[r][unk[u]] = X[r][unk[u]] + Distribution::monomial(alg, shifted(mu, mid[unk[u]], -1), coef);
      }
    }
  }
  return X;
}

void add_into(DistMatrix& X, const DistMatrix& Y) {
  for (std::size_t i = 0; i < X.size(); ++i)
    for (std::size_t j = 0; j < X[i].size(); ++j) X[i][j] = X[i][j] + Y[i][j];
}

}  // namespace

DistMatrix dist_matmul(const DistMatrix& X, const DistMatrix& Y) {
  if (X.empty() || Y.empty()) return {};
  const auto& alg = X[0][0].algebra();
  DistMatrix Z = zero_matrix(alg, X.size(), Y[0].size());
  for (std::size_t i = 0; i < X.size(); ++i)
    for (std::size_t t = 0; t < Y.size(); ++t) {
      if (X[i][t].is_zero()) continue;
      for (std::size_t j = 0; j < Y[t].size(); ++j)
        if (!Y[t][j].is_zero()) Z[i][j] = Z[i][j] + dist::convolve(X[i][t], Y[t][j]);
    }
  return Z;
}

DistMatrix LazardComplex::correction(int k) const {
  DistMatrix C = A[static_cast<std::size_t>(k)];
  for (std::size_t i = 0; i < C.size(); ++i)
    for (std::size_t j = 0; j < C[i].size(); ++j) C[i][j] = C[i][j] - koszul[static_cast<std::size_t>(k)][i][j];
  return C;
}

bool LazardComplex::composition_zero() const {
  for (int k = 2; k <= d; ++k)
    if (!matrix_zero(dist_matmul(A[static_cast<std::size_t>(k)], A[static_cast<std::size_t>(k) - 1]))) return false;
  return true;
}

bool LazardComplex::augmentation_compatible() const {
  if (d == 0) return true;
  for (const auto& row : A[1])
    if (dist::augmentation(row[0]) != 0) return false;
  return true;
}

LazardComplex lazard_resolution(const dist::AlgebraPtr& alg) {
  LazardComplex P;
  P.alg = alg;
  P.d = alg->d();
  const int d = P.d;
  const int W = alg->W();
  P.A.resize(static_cast<std::size_t>(d) + 1);
  P.koszul.resize(static_cast<std::size_t>(d) + 1);
  P.iterations.assign(static_cast<std::size_t>(d) + 1, 0);
  for (int k = 1; k <= d; ++k) {
    P.koszul[static_cast<std::size_t>(k)] = koszul_matrix(alg, d, k);
    P.A[static_cast<std::size_t>(k)] = P.koszul[static_cast<std::size_t>(k)];
  }
  for (int k = 2; k <= d; ++k) {
    auto& Ak = P.A[static_cast<std::size_t>(k)];
    const auto& Aprev = P.A[static_cast<std::size_t>(k) - 1];
    DistMatrix R = dist_matmul(Ak, Aprev);
    int rounds = 0;
    while (true) {
      const int w = matrix_weight(R, W);
      if (w >= W) break;
      if (++rounds > W)
        fail(ErrorCode::NoConvergence, "degree " + std::to_string(k) + " residual still has weight " +
                                           std::to_string(w) + " after " + std::to_string(W) + " rounds");
      DistMatrix X = graded_correction(alg, d, k, R, w);
      add_into(Ak, X);
      add_into(R, dist_matmul(X, Aprev));
      if (matrix_weight(R, W) <= w)
        fail(ErrorCode::NoConvergence, "correction did not raise the residual weight above " + std::to_string(w));
    }
    P.iterations[static_cast<std::size_t>(k)] = rounds;
  }
  return P;
}

ScalarComplex hom_into_rep(const LazardComplex& P, const dist::Representation& rho) {
  const auto& alg = *P.alg;
  const int m = std::min(rho.ring.N(), alg.N());
  ScalarComplex C;
  C.ring = Ring(alg.p(), m);
  const std::size_t r = rho.rank;
  for (int k = 0; k <= P.d; ++k) C.dims.push_back(r * subsets(P.d, k).size());
  for (int k = 1; k <= P.d; ++k) {
    const auto& Ak = P.A[static_cast<std::size_t>(k)];
    PNMatrix M(C.ring, C.dims[static_cast<std::size_t>(k)], C.dims[static_cast<std::size_t>(k) - 1]);
    for (std::size_t J = 0; J < Ak.size(); ++J)
      for (std::size_t I = 0; I < Ak[J].size(); ++I) {
        if (Ak[J][I].is_zero()) continue;
        PNMatrix blk = dist::specialize(Ak[J][I], rho);
        for (std::size_t a = 0; a < r; ++a)
          for (std::size_t b = 0; b < r; ++b) M(J * r + a, I * r + b) = blk(a, b);
      }
    C.d.push_back(std::move(M));
  }
  return C;
}

std::string NormCheck::str() const {
  std::ostringstream os;
  os << (pass ? "bounded" : "unbounded") << ": min correction gauge " << gauge::to_string(worst, radius)
     << " vs Koszul gauge " << gauge::to_string(bound, radius);
  if (!witness.empty()) os << " at " << witness;
  return os.str();
}

NormCheck norm_bounded_check(const LazardComplex& P, const gauge::Radius& h) {
  NormCheck out;
  out.radius = h;
  out.bound = gauge::Value{0, Rational(1, P.alg->p() - 1), false};
  out.worst = gauge::Value::inf();
  for (int k = 1; k <= P.d; ++k) {
    const DistMatrix C = P.correction(k);
    for (std::size_t J = 0; J < C.size(); ++J)
      for (std::size_t I = 0; I < C[J].size(); ++I) {
        if (C[J][I].is_zero()) continue;
        gauge::Value g = dist::dh_valuation(C[J][I], h);
        if (gauge::compare(g, out.worst, h) < 0) {
          out.worst = g;
          out.witness = "A" + std::to_string(k) + "[" + std::to_string(J) + "][" + std::to_string(I) + "]";
        }
      }
  }
  out.pass = gauge::compare(out.worst, out.bound, h) >= 0;
  return out;
}

// ---------------------------------------------------------------------------
// Chevalley-Eilenberg

std::vector<PNMatrix> lie_action(const dist::Representation& rho, int prec) {
  const i64 p = rho.ring.p();
  prec = std::min(prec, rho.ring.N());
  // divisions by p^{v(j)} need headroom; keep p^{big} below 2^62
  int slack = 0;
  for (i64 t = p; slack < 40; t *= p) {
    ++slack;
    if (t > (i64(1) << 20)) break;
  }
  int big_e = prec + slack;
  while (big_e > prec) {
    long double v = 1;
    for (int i = 0; i < big_e; ++i) v *= static_cast<long double>(p);
    if (v < 4.0e18L) break;
    --big_e;
  }
  if (big_e <= prec) fail(ErrorCode::PrecisionExhausted, "no headroom for the logarithm series");
  Ring big(p, big_e), R(p, prec);
  std::vector<PNMatrix> out;
  for (const auto& g : rho.images) {
    const std::size_t k = g.rows();
    PNMatrix X(big, k, k);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) {
        const i64 v = g(a, b) - (a == b ? 1 : 0);
        if (v % p != 0) fail(ErrorCode::NotProUnipotent, "representation is not 1 mod p");
        X(a, b) = big.reduce(v);
      }
    PNMatrix acc(R, k, k), power = PNMatrix::identity(big, k);
    for (int j = 1;; ++j) {
      int vj = 0;
      i64 unit = j;
      while (unit % p == 0) {
        unit /= p;
        ++vj;
      }
      if (j - vj >= prec && j > prec) break;
      power = power * X;
      if (vj >= big_e - prec) fail(ErrorCode::PrecisionExhausted, "logarithm series needs more headroom");
      const i64 inv = R.inverse(R.reduce(unit));
      for (std::size_t e = 0; e < k * k; ++e) {
        i64 t = power.data()[e] / big.pow(vj);
        t = R.mul(R.reduce(t), inv);
        if (j % 2 == 0) t = R.neg(t);
        acc(e / k, e % k) = R.add(acc(e / k, e % k), t);
      }
    }
    out.push_back(std::move(acc));
  }
  return out;
}

ScalarComplex ce_cochain(const group::LieBracketConstants& c, const std::vector<PNMatrix>& action, int max_degree) {
  const int d = c.d;
  ScalarComplex C;
  std::size_t r = 1;
  if (action.empty()) {
    C.ring = Ring(c.p, c.precision);
  } else {
    C.ring = action[0].ring();
    r = action[0].rows();
    if (static_cast<int>(action.size()) != d) fail(ErrorCode::InvalidArgument, "one action matrix per generator");
  }
  const Ring& R = C.ring;
  if (R.N() > c.precision) fail(ErrorCode::PrecisionExhausted, "action ring finer than the bracket precision");
  const int top = max_degree < 0 ? d : std::min(d, max_degree + 1);
  std::vector<std::vector<std::vector<int>>> sub;
  for (int k = 0; k <= top; ++k) {
    sub.push_back(subsets(d, k));
    C.dims.push_back(r * sub.back().size());
  }
  auto coef = [&](int i, int j, int t) { return R.reduce(c.at(i, j, t)); };
  for (int k = 0; k < top; ++k) {
    PNMatrix M(R, C.dims[static_cast<std::size_t>(k) + 1], C.dims[static_cast<std::size_t>(k)]);
    const auto& outs = sub[static_cast<std::size_t>(k) + 1];
    const auto& ins = sub[static_cast<std::size_t>(k)];
    for (std::size_t Jp = 0; Jp < outs.size(); ++Jp) {
      const auto& J = outs[Jp];
      // sum_i (-1)^i x_i . w(.. x_i hat ..)
      if (!action.empty())
        for (int i = 0; i <= k; ++i) {
          std::vector<int> I = J;
          I.erase(I.begin() + i);
          const std::size_t Ip = subset_pos(ins, I);
          const PNMatrix& X = action[static_cast<std::size_t>(J[static_cast<std::size_t>(i)])];
          for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = 0; b < r; ++b) {
              const i64 v = i % 2 ? R.neg(X(a, b)) : X(a, b);
              M(Jp * r + a, Ip * r + b) = R.add(M(Jp * r + a, Ip * r + b), v);
            }
        }
      // sum_{i<j} (-1)^{i+j} w([x_i, x_j], rest)
      for (int i = 0; i <= k; ++i)
        for (int j = i + 1; j <= k; ++j) {
          std::vector<int> rest = J;
          rest.erase(rest.begin() + j);
          rest.erase(rest.begin() + i);
          for (int t = 0; t < d; ++t) {
            i64 cc = coef(J[static_cast<std::size_t>(i)], J[static_cast<std::size_t>(j)], t);
            if (cc == 0 || std::find(rest.begin(), rest.end(), t) != rest.end()) continue;
            const auto before = std::count_if(rest.begin(), rest.end(), [t](int x) { return x < t; });
            std::vector<int> I = rest;
            I.insert(I.begin() + before, t);
            if ((i + j + before) % 2) cc = R.neg(cc);
            const std::size_t Ip = subset_pos(ins, I);
            for (std::size_t a = 0; a < r; ++a) M(Jp * r + a, Ip * r + a) = R.add(M(Jp * r + a, Ip * r + a), cc);
          }
        }
    }
    C.d.push_back(std::move(M));
  }
  return C;
}

}  // namespace lazard::cx
