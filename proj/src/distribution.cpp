#include "lazardlab/distribution.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>

#include "json.hpp"
#include "lazardlab/mahler.hpp"

namespace lazard::dist {

using gauge::Rational;
using gauge::Value;

Weights Weights::for_prime(i64 p) {
  if (p == 3) return {2, 3};
  if (p >= 5) return {1, 2};
  fail(ErrorCode::UnsupportedPrime, "distribution algebras need an odd prime");
}

// ---------------------------------------------------------------------------
// Algebra

namespace {

constexpr std::uint64_t kCacheMagic = 0x6c7a6c6f70730002ULL;

std::string cache_path(const std::string& dir, const group::GroupModel& G, int N, int D) {
  return dir + "/lops_" + G.hash() + "_p" + std::to_string(G.p()) + "_N" + std::to_string(N) + "_D" +
         std::to_string(D) + ".bin";
}

bool read_cache(const std::string& path, std::size_t n, int d, std::vector<SparseOperator>& L) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::uint64_t magic = 0, size = 0, dims = 0;
  in.read(reinterpret_cast<char*>(&magic), sizeof magic);
  in.read(reinterpret_cast<char*>(&size), sizeof size);
  in.read(reinterpret_cast<char*>(&dims), sizeof dims);
  if (!in || magic != kCacheMagic || size != n || dims != static_cast<std::uint64_t>(d)) return false;
  L.assign(static_cast<std::size_t>(d), SparseOperator{});
  for (auto& op : L) {
    op.cols.resize(n);
    for (auto& col : op.cols) {
      std::uint64_t len = 0;
      in.read(reinterpret_cast<char*>(&len), sizeof len);
      if (!in || len > n) return false;
      col.resize(len);
      for (auto& [t, v] : col) {
        in.read(reinterpret_cast<char*>(&t), sizeof t);
        in.read(reinterpret_cast<char*>(&v), sizeof v);
      }
    }
  }
  return static_cast<bool>(in);
}

void write_cache(const std::string& path, std::size_t n, const std::vector<SparseOperator>& L) {
  const std::string tmp = path + ".tmp";
  std::error_code ec;
  std::filesystem::create_directories(std::filesystem::path(path).parent_path(), ec);
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) return;
    std::uint64_t magic = kCacheMagic, size = n, dims = L.size();
    out.write(reinterpret_cast<const char*>(&magic), sizeof magic);
    out.write(reinterpret_cast<const char*>(&size), sizeof size);
    out.write(reinterpret_cast<const char*>(&dims), sizeof dims);
    for (const auto& op : L)
      for (const auto& col : op.cols) {
        std::uint64_t len = col.size();
        out.write(reinterpret_cast<const char*>(&len), sizeof len);
        for (const auto& [t, v] : col) {
          out.write(reinterpret_cast<const char*>(&t), sizeof t);
          out.write(reinterpret_cast<const char*>(&v), sizeof v);
        }
      }
  }
  std::rename(tmp.c_str(), path.c_str());
}

}  // namespace

std::shared_ptr<const Algebra> Algebra::build(const group::GroupModel& G, int N, int D, const std::string& cache_dir) {
  if (N < 1 || D < 1) fail(ErrorCode::InvalidArgument, "algebra needs N >= 1 and D >= 1");
  auto A = std::make_shared<Algebra>();
  A->G_ = G;
  A->N_ = N;
  A->D_ = D;
  A->wt_ = Weights::for_prime(G.p());
  const int s = A->wt_.s, q = A->wt_.q;
  A->W_ = q * N + s * D;
  A->D_ext_ = (A->W_ - 1) / s;
  A->ring_ = Ring(G.p(), N);
  A->index_ = SimplexIndex(G.d(), A->D_ext_);
  const std::size_t n = A->index_.size();
  A->prec_.resize(n);
  A->prec_mod_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const int rest = A->W_ - s * total_degree(A->index_[k]);
    A->prec_[k] = std::min(N, (rest + q - 1) / q);
    A->prec_mod_[k] = A->ring_.pow(A->prec_[k]);
  }

  if (!cache_dir.empty() && read_cache(cache_path(cache_dir, G, N, D), n, G.d(), A->L_)) {
    A->from_cache_ = true;
    return A;
  }

  // law precision: binom(z, gamma) mod p^N needs z mod p^{N + v_p(gamma!)}
  const int law_prec = N + static_cast<int>(mahler::factorial_valuation({A->D_ext_}, G.p()));
  const Ring& R = A->ring_;
  const int d = G.d();
  A->L_.resize(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    group::Coords e(static_cast<std::size_t>(d), 0);
    e[static_cast<std::size_t>(i)] = 1;
    // F[y][gamma] = binom(psi(e_i, y), gamma) - binom(y, gamma)
    std::vector<i64> F(n * n);
    for (std::size_t yk = 0; yk < n; ++yk) {
      const MultiIndex& y = A->index_[yk];
      group::Coords yc(y.begin(), y.end());
      group::Coords z = G.multiply(e, yc, law_prec);
      std::vector<std::vector<i64>> bz(static_cast<std::size_t>(d)), by(static_cast<std::size_t>(d));
      for (int j = 0; j < d; ++j) {
        bz[j] = mahler::binomial_row(z[j], A->D_ext_, R);
        by[j] = mahler::binomial_row(y[j], A->D_ext_, R);
      }
      i64* row = F.data() + yk * n;
      for (std::size_t gk = 0; gk < n; ++gk) {
        const MultiIndex& g = A->index_[gk];
        i64 a = R.reduce(1), b = R.reduce(1);
        for (int j = 0; j < d; ++j) {
          a = R.mul(a, bz[j][g[j]]);
          b = R.mul(b, by[j][g[j]]);
        }
        row[gk] = R.sub(a, b);
      }
    }
    mahler::mahler_invert(F, A->index_, 1, n, R);
    SparseOperator op;
    op.cols.resize(n);
    for (std::size_t bk = 0; bk < n; ++bk)
      for (std::size_t gk = 0; gk < n; ++gk) {
        i64 v = F[bk * n + gk] % A->prec_mod_[gk];
        if (v) op.cols[bk].emplace_back(static_cast<std::uint32_t>(gk), v);
      }
    A->L_[static_cast<std::size_t>(i)] = std::move(op);
  }
  if (!cache_dir.empty()) write_cache(cache_path(cache_dir, G, N, D), n, A->L_);
  return A;
}

int Algebra::weight(std::size_t pos, i64 c) const {
  c %= prec_mod_[pos];
  if (c == 0) return W_;
  return wt_.q * ring_.valuation(c) + wt_.s * total_degree(index_[pos]);
}

void Algebra::normalize(std::vector<i64>& v) const {
  for (std::size_t k = 0; k < v.size(); ++k) {
    i64 x = v[k] % prec_mod_[k];
    v[k] = x < 0 ? x + prec_mod_[k] : x;
  }
}

std::vector<i64> Algebra::apply_left(int i, const std::vector<i64>& v) const {
  const auto& op = L_[static_cast<std::size_t>(i)];
  std::vector<i64> out(v.size(), 0);
  const i64 mod = ring_.modulus();
  for (std::size_t b = 0; b < v.size(); ++b) {
    const i64 x = v[b];
    if (x == 0) continue;
    for (const auto& [g, c] : op.cols[b]) {
      i64 s = out[g] + ring_.mul(c, x);
      out[g] = s >= mod ? s - mod : s;
    }
  }
  normalize(out);
  return out;
}

// ---------------------------------------------------------------------------
// Distribution

Distribution::Distribution(AlgebraPtr alg) : alg_(std::move(alg)) {
  if (!alg_) fail(ErrorCode::TensorMissing, "distribution without an algebra");
  a_.assign(alg_->size(), 0);
}

Distribution::Distribution(AlgebraPtr alg, std::vector<i64> coeffs) : alg_(std::move(alg)), a_(std::move(coeffs)) {
  if (!alg_) fail(ErrorCode::TensorMissing, "distribution without an algebra");
  if (a_.size() != alg_->size()) fail(ErrorCode::InvalidArgument, "coefficient vector has the wrong size");
  for (auto& x : a_) x = alg_->ring().reduce(x);
  alg_->normalize(a_);
}

Distribution Distribution::one(const AlgebraPtr& alg) { return monomial(alg, MultiIndex(alg->d(), 0), 1); }

Distribution Distribution::monomial(const AlgebraPtr& alg, const MultiIndex& a, i64 c) {
  Distribution m(alg);
  std::size_t k = alg->index().find(a);
  if (k == SimplexIndex::npos) return m;
  m.a_[k] = alg->ring().reduce(c);
  alg->normalize(m.a_);
  return m;
}

Distribution Distribution::generator(const AlgebraPtr& alg, int i) {
  MultiIndex a(alg->d(), 0);
  a[static_cast<std::size_t>(i)] = 1;
  return monomial(alg, a);
}

i64 Distribution::at(const MultiIndex& a) const {
  std::size_t k = alg_->index().find(a);
  return k == SimplexIndex::npos ? 0 : a_[k];
}

bool Distribution::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](i64 x) { return x == 0; });
}

Distribution Distribution::operator+(const Distribution& o) const {
  Distribution r = *this;
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = alg_->ring().add(a_[k], o.a_[k]);
  alg_->normalize(r.a_);
  return r;
}

Distribution Distribution::operator-(const Distribution& o) const {
  Distribution r = *this;
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = alg_->ring().sub(a_[k], o.a_[k]);
  alg_->normalize(r.a_);
  return r;
}

Distribution Distribution::operator-() const { return scaled(-1); }

Distribution Distribution::scaled(i64 c) const {
  Distribution r = *this;
  c = alg_->ring().reduce(c);
  for (auto& x : r.a_) x = alg_->ring().mul(x, c);
  alg_->normalize(r.a_);
  return r;
}

int Distribution::weight() const {
  int w = alg_->W();
  for (std::size_t k = 0; k < a_.size(); ++k)
    if (a_[k]) w = std::min(w, alg_->weight(k, a_[k]));
  return w;
}

Distribution Distribution::weight_part(int w) const {
  Distribution r(alg_);
  for (std::size_t k = 0; k < a_.size(); ++k)
    if (a_[k] && alg_->weight(k, a_[k]) == w) r.a_[k] = a_[k];
  return r;
}

Distribution dirac(const AlgebraPtr& alg, const group::Coords& x) {
  if (static_cast<int>(x.size()) != alg->d()) fail(ErrorCode::InvalidArgument, "dirac: wrong coordinate count");
  const Ring& R = alg->ring();
  std::vector<std::vector<i64>> rows;
  for (i64 xi : x) rows.push_back(mahler::binomial_row(xi, alg->D_ext(), R));
  std::vector<i64> a(alg->size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    const MultiIndex& g = alg->index()[k];
    i64 v = R.reduce(1);
    for (std::size_t j = 0; j < g.size(); ++j) v = R.mul(v, rows[j][g[j]]);
    a[k] = v;
  }
  return Distribution(alg, std::move(a));
}

Distribution convolve(const Distribution& mu, const Distribution& nu) {
  const AlgebraPtr& alg = mu.algebra();
  if (!alg || !nu.algebra()) fail(ErrorCode::TensorMissing, "convolution needs a built algebra");
  if (alg != nu.algebra()) fail(ErrorCode::InvalidArgument, "convolution of distributions over different algebras");
  const Ring& R = alg->ring();
  const auto& idx = alg->index();
  const std::size_t n = alg->size();
  // T[alpha] = b^alpha * nu, with b^alpha = b_i * b^{alpha - e_i}, i the first nonzero index
  std::vector<std::vector<i64>> T(n);
  std::vector<bool> have(n, false);
  T[0] = nu.coeffs();
  have[0] = true;
  std::function<const std::vector<i64>&(std::size_t)> get = [&](std::size_t k) -> const std::vector<i64>& {
    if (have[k]) return T[k];
    MultiIndex a = idx[k];
    std::size_t i = 0;
    while (a[i] == 0) ++i;
    a[i] -= 1;
    const std::vector<i64>& parent = get(idx.find(a));
    T[k] = alg->apply_left(static_cast<int>(i), parent);
    have[k] = true;
    return T[k];
  };
  std::vector<i64> out(n, 0);
  const i64 mod = R.modulus();
  for (std::size_t k = 0; k < n; ++k) {
    const i64 c = mu.coeffs()[k];
    if (c == 0) continue;
    const std::vector<i64>& t = get(k);
    for (std::size_t g = 0; g < n; ++g) {
      if (t[g] == 0) continue;
      i64 s = out[g] + R.mul(c, t[g]);
      out[g] = s >= mod ? s - mod : s;
    }
  }
  return Distribution(alg, std::move(out));
}

i64 augmentation(const Distribution& mu) { return mu.coeffs()[0]; }

gauge::Value dh_valuation(const Distribution& mu, const gauge::Radius& h) {
  const auto& alg = *mu.algebra();
  const i64 p = alg.p();
  Value best = Value::inf();
  for (std::size_t k = 0; k < alg.size(); ++k) {
    if (mu.coeffs()[k] == 0) continue;
    Value v{Rational(alg.ring().valuation(mu.coeffs()[k])), Rational(total_degree(alg.index()[k]), p - 1), false};
    best = gauge::min(best, v, h);
  }
  return best;
}

gauge::Value analytic_valuation(const Distribution& mu, const gauge::Radius& h) {
  const auto& alg = *mu.algebra();
  const i64 p = alg.p();
  Value best = Value::inf();
  for (std::size_t k = 0; k < alg.size(); ++k) {
    if (mu.coeffs()[k] == 0) continue;
    const MultiIndex& a = alg.index()[k];
    Value v{Rational(alg.ring().valuation(mu.coeffs()[k])) - Rational(mahler::digit_sum(a, p), p - 1),
            Rational(total_degree(a), p - 1), false};
    best = gauge::min(best, v, h);
  }
  return best;
}

// ---------------------------------------------------------------------------
// specialization

Representation Representation::trivial(i64 p, int d, int m) {
  Representation r;
  r.name = m == 0 ? "trivial" : "mod:" + std::to_string(m);
  r.ring = Ring(p, m);
  r.rank = 1;
  for (int i = 0; i < d; ++i) r.images.push_back(PNMatrix::identity(r.ring, 1));
  return r;
}

Representation Representation::standard(const group::GroupModel& G, int N) {
  if (!G.has_matrices()) fail(ErrorCode::InvalidArgument, "standard representation needs a matrix model");
  Representation r;
  r.name = "standard";
  r.ring = Ring(G.p(), N);
  r.rank = G.matrix_size();
  for (int i = 0; i < G.d(); ++i) r.images.push_back(G.recompose([&] {
    group::Coords e(static_cast<std::size_t>(G.d()), 0);
    e[static_cast<std::size_t>(i)] = 1;
    return e;
  }(), N).coarsen(N));
  return r;
}

PNMatrix specialize(const Distribution& mu, const Representation& rho) {
  const auto& alg = *mu.algebra();
  const int m = std::min(rho.ring.N(), alg.N());
  Ring R(alg.p(), m);
  const std::size_t k = rho.rank;
  if (static_cast<int>(rho.images.size()) != alg.d())
    fail(ErrorCode::InvalidArgument, "representation has the wrong number of generator images");
  std::vector<std::vector<PNMatrix>> pw(rho.images.size());
  const PNMatrix I = PNMatrix::identity(R, k);
  for (std::size_t i = 0; i < rho.images.size(); ++i) {
    PNMatrix X = (rho.images[i].ring().N() == m ? rho.images[i] : rho.images[i].coarsen(m)) - I;
    for (i64 v : X.data())
      if (v % alg.p() != 0) fail(ErrorCode::NotProUnipotent, "rho(g_" + std::to_string(i + 1) + ") is not 1 mod p");
    pw[i].push_back(I);
    for (int e = 1; e <= alg.D_ext(); ++e) pw[i].push_back(pw[i].back() * X);
  }
  PNMatrix out(R, k, k);
  for (std::size_t pos = 0; pos < alg.size(); ++pos) {
    const i64 c = mu.coeffs()[pos] % R.modulus();
    if (c == 0) continue;
    const MultiIndex& a = alg.index()[pos];
    PNMatrix term = I;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i]) term = term * pw[i][static_cast<std::size_t>(a[i])];
    out = out + term.scaled(c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// literal structure tensor

i64 StructureTensor::at(std::size_t g, std::size_t a, std::size_t b) const {
  auto it = entries.find({static_cast<std::uint32_t>(g), static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)});
  return it == entries.end() ? 0 : it->second;
}

StructureTensor build_structure_tensor(const group::GroupModel& G, int D, int N, std::size_t mem_cap_bytes) {
  StructureTensor T{Ring(G.p(), N), SimplexIndex(G.d(), D), {}};
  const std::size_t n = T.index.size();
  if (static_cast<double>(n) * n * n * sizeof(i64) > static_cast<double>(mem_cap_bytes))
    fail(ErrorCode::ResourceCap, "structure tensor exceeds the memory cap");
  const Ring& R = T.ring;
  const int law_prec = N + static_cast<int>(mahler::factorial_valuation({D}, G.p()));
  // F[x][y][gamma] = binom(psi(x, y), gamma)
  std::vector<i64> F(n * n * n);
  for (std::size_t xk = 0; xk < n; ++xk)
    for (std::size_t yk = 0; yk < n; ++yk) {
      group::Coords x(T.index[xk].begin(), T.index[xk].end()), y(T.index[yk].begin(), T.index[yk].end());
      group::Coords z = G.multiply(x, y, law_prec);
      std::vector<std::vector<i64>> rows;
      for (i64 zj : z) rows.push_back(mahler::binomial_row(zj, D, R));
      i64* out = F.data() + (xk * n + yk) * n;
      for (std::size_t gk = 0; gk < n; ++gk) {
        i64 v = R.reduce(1);
        for (std::size_t j = 0; j < rows.size(); ++j) v = R.mul(v, rows[j][T.index[gk][j]]);
        out[gk] = v;
      }
    }
  mahler::mahler_invert(F, T.index, 1, n * n, R);  // in x
  mahler::mahler_invert(F, T.index, n, n, R);      // in y
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t g = 0; g < n; ++g) {
        i64 v = F[(a * n + b) * n + g];
        if (v)
          T.entries[{static_cast<std::uint32_t>(g), static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)}] = v;
      }
  return T;
}

std::vector<i64> convolve_with_tensor(const StructureTensor& T, const std::vector<i64>& mu, const std::vector<i64>& nu) {
  const Ring& R = T.ring;
  std::vector<i64> out(T.index.size(), 0);
  for (const auto& [key, v] : T.entries) {
    const auto [g, a, b] = key;
    if (mu[a] == 0 || nu[b] == 0) continue;
    out[g] = R.add(out[g], R.mul(v, R.mul(R.reduce(mu[a]), R.reduce(nu[b]))));
  }
  return out;
}

// ---------------------------------------------------------------------------
// dump format

std::string dump_json(const Distribution& mu) {
  const auto& alg = *mu.algebra();
  nlohmann::ordered_json j;
  j["group_hash"] = alg.group().hash();
  j["p"] = alg.p();
  j["N"] = alg.N();
  j["D"] = alg.D();
  auto arr = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < alg.size(); ++k) {
    if (mu.coeffs()[k] == 0) continue;
    arr.push_back({{"alpha", alg.index()[k]}, {"c", padic::format_digits(alg.ring(), mu.coeffs()[k])}});
  }
  j["coefficients"] = arr;
  return j.dump(2);
}

Distribution load_json(const AlgebraPtr& alg, const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorCode::Parse, std::string("distribution dump: ") + e.what());
  }
  try {
    if (j.at("group_hash").get<std::string>() != alg->group().hash())
      fail(ErrorCode::InvalidArgument, "distribution dump belongs to a different group");
    if (j.at("p").get<i64>() != alg->p() || j.at("N").get<int>() != alg->N() || j.at("D").get<int>() != alg->D())
      fail(ErrorCode::InvalidArgument, "distribution dump has different (p, N, D)");
    std::vector<i64> a(alg->size(), 0);
    for (const auto& e : j.at("coefficients")) {
      MultiIndex alpha = e.at("alpha").get<MultiIndex>();
      std::size_t k = alg->index().find(alpha);
      if (k == SimplexIndex::npos) fail(ErrorCode::Parse, "coefficient index outside the algebra");
      a[k] = padic::parse_digits(alg->ring(), e.at("c").get<std::string>());
    }
    return Distribution(alg, std::move(a));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, std::string("distribution dump: ") + e.what());
  }
}

}  // namespace lazard::dist
