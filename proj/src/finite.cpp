#include "lazardlab/finite.hpp"

#include <algorithm>
#include <array>
#include <map>

namespace lazard::cx {

// ---------------------------------------------------------------------------
// finite groups

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
  FiniteGroup G;
  G.name = "Z/" + std::to_string(n);
  G.order = n;
  G.table.resize(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) G.table[a * n + b] = static_cast<std::uint32_t>((a + b) % n);
  if (n > 1) G.generators = {1};
  return G;
}

FiniteGroup FiniteGroup::product(const FiniteGroup& A, const FiniteGroup& B) {
  FiniteGroup G;
  G.name = A.name + "x" + B.name;
  G.order = A.order * B.order;
  G.table.resize(G.order * G.order);
  // (a, b) -> a * |B| + b
  for (std::size_t x = 0; x < G.order; ++x)
    for (std::size_t y = 0; y < G.order; ++y) {
      const auto a = A.mul(static_cast<std::uint32_t>(x / B.order), static_cast<std::uint32_t>(y / B.order));
      const auto b = B.mul(static_cast<std::uint32_t>(x % B.order), static_cast<std::uint32_t>(y % B.order));
      G.table[x * G.order + y] = static_cast<std::uint32_t>(a * B.order + b);
    }
  for (auto s : A.generators) G.generators.push_back(static_cast<std::uint32_t>(s * B.order));
  for (auto s : B.generators) G.generators.push_back(s);
  return G;
}

FiniteGroup FiniteGroup::symmetric3() {
  std::vector<std::array<int, 3>> perms = {{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
  FiniteGroup G;
  G.name = "S3";
  G.order = 6;
  G.table.resize(36);
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) {
      std::array<int, 3> c{};
      for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
      G.table[a * 6 + b] = static_cast<std::uint32_t>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  G.generators = {1, 4};  // a transposition and a 3-cycle
  return G;
}

FiniteGroup FiniteGroup::from_quotient(const group::FiniteQuotient& Q) {
  FiniteGroup G;
  G.name = "quotient";
  G.order = Q.order;
  G.table = Q.table;
  for (int i = 0; i < Q.d; ++i) {
    group::Coords e(static_cast<std::size_t>(Q.d), 0);
    e[static_cast<std::size_t>(i)] = 1;
    G.generators.push_back(static_cast<std::uint32_t>(Q.index_of(e)));
  }
  return G;
}

// ---------------------------------------------------------------------------
// Cayley graphs

namespace {

void build_tree(CayleyGraph& C, const std::vector<std::uint32_t>& right_inv) {
  const std::size_t n = C.order, S = C.ngens;
  constexpr std::uint32_t unseen = 0xffffffffu;
  C.parent.assign(n, unseen);
  C.pgen.assign(n, 0);
  C.pdir.assign(n, 0);
  C.bfs.clear();
  C.bfs.reserve(n);
  C.parent[0] = 0;
  C.bfs.push_back(0);
  for (std::size_t head = 0; head < C.bfs.size(); ++head) {
    const std::uint32_t x = C.bfs[head];
    for (std::size_t s = 0; s < S; ++s) {
      const std::uint32_t y = C.right[x * S + s];
      if (C.parent[y] == unseen) {
        C.parent[y] = x;
        C.pgen[y] = static_cast<std::uint32_t>(s);
        C.pdir[y] = 1;
        C.bfs.push_back(y);
      }
      const std::uint32_t z = right_inv[x * S + s];
      if (C.parent[z] == unseen) {
        C.parent[z] = x;
        C.pgen[z] = static_cast<std::uint32_t>(s);
        C.pdir[z] = -1;
        C.bfs.push_back(z);
      }
    }
  }
  if (C.bfs.size() != n) fail(ErrorCode::InvalidArgument, "generators do not generate the group");
  C.edge_id.assign(n * S, 0);
  for (std::size_t v = 1; v < n; ++v) {
    const std::size_t tail = C.pdir[v] > 0 ? C.parent[v] : v;
    C.edge_id[tail * S + C.pgen[v]] = -1;
  }
  C.non_tree = 0;
  for (auto& e : C.edge_id) e = e < 0 ? -1 : static_cast<std::int64_t>(C.non_tree++);
}

}  // namespace

void CayleyGraph::path_edges(std::uint32_t g, std::vector<std::pair<std::uint32_t, int>>& out) const {
  for (std::uint32_t v = g; v != 0; v = parent[v]) {
    const std::size_t tail = pdir[v] > 0 ? parent[v] : v;
    out.push_back({static_cast<std::uint32_t>(tail * ngens + pgen[v]), pdir[v]});
  }
}

CayleyGraph cayley_from_table(const FiniteGroup& G) {
  CayleyGraph C;
  C.order = G.order;
  C.ngens = G.generators.size();
  const std::size_t n = G.order, S = C.ngens;
  C.right.resize(n * S);
  C.left.resize(S * n);
  std::vector<std::uint32_t> rinv(n * S);
  for (std::size_t s = 0; s < S; ++s) {
    const std::uint32_t g = G.generators[s];
    std::uint32_t ginv = 0;
    for (std::uint32_t h = 0; h < n; ++h)
      if (G.mul(g, h) == 0) ginv = h;
    for (std::uint32_t x = 0; x < n; ++x) {
      C.right[x * S + s] = G.mul(x, g);
      C.left[s * n + x] = G.mul(g, x);
      rinv[x * S + s] = G.mul(x, ginv);
    }
  }
  build_tree(C, rinv);
  return C;
}

CayleyGraph cayley_from_model(const group::GroupModel& G, int n, std::size_t mem_cap_bytes) {
  const int d = G.d();
  std::size_t q = 1, order = 1;
  for (int k = 0; k < n; ++k) q *= static_cast<std::size_t>(G.p());
  long double est = 1;
  for (int i = 0; i < d; ++i) est *= static_cast<long double>(q);
  const long double bytes = est * (static_cast<long double>(d) * 16 + 32);
  if (est > 4.0e9L || bytes > static_cast<long double>(mem_cap_bytes))
    fail(ErrorCode::ResourceCap, "Cayley graph of G/G_" + std::to_string(n) + " needs about " +
                                     std::to_string(static_cast<long long>(bytes / (1 << 20))) + " MiB");
  for (int i = 0; i < d; ++i) order *= q;
  CayleyGraph C;
  C.order = order;
  C.ngens = static_cast<std::size_t>(d);
  const std::size_t S = C.ngens;
  C.right.resize(order * S);
  C.left.resize(S * order);
  std::vector<std::uint32_t> rinv(order * S);
  auto index_of = [&](const group::Coords& x) {
    std::size_t idx = 0, mult = 1;
    for (int i = 0; i < d; ++i) {
      i64 v = x[static_cast<std::size_t>(i)] % static_cast<i64>(q);
      if (v < 0) v += static_cast<i64>(q);
      idx += static_cast<std::size_t>(v) * mult;
      mult *= q;
    }
    return static_cast<std::uint32_t>(idx);
  };
  std::vector<group::Coords> gen, geninv;
  for (int s = 0; s < d; ++s) {
    group::Coords e(static_cast<std::size_t>(d), 0);
    e[static_cast<std::size_t>(s)] = 1;
    gen.push_back(e);
    geninv.push_back(G.inverse(e, n));
  }
  group::Coords x(static_cast<std::size_t>(d), 0);
  for (std::size_t idx = 0; idx < order; ++idx) {
    std::size_t t = idx;
    for (int i = 0; i < d; ++i) {
      x[static_cast<std::size_t>(i)] = static_cast<i64>(t % q);
      t /= q;
    }
    for (std::size_t s = 0; s < S; ++s) {
      C.right[idx * S + s] = index_of(G.multiply(x, gen[s], n));
      C.left[s * order + idx] = index_of(G.multiply(gen[s], x, n));
      rinv[idx * S + s] = index_of(G.multiply(x, geninv[s], n));
    }
  }
  build_tree(C, rinv);
  return C;
}

// ---------------------------------------------------------------------------
// representations of finite groups

bool FiniteRep::is_trivial() const {
  const std::size_t rr = rank * rank;
  for (std::size_t g = 0; g * rr < mats.size(); ++g)
    for (std::size_t a = 0; a < rank; ++a)
      for (std::size_t b = 0; b < rank; ++b)
        if (mats[g * rr + a * rank + b] != (a == b ? 1 : 0)) return false;
  return true;
}

FiniteRep FiniteRep::trivial(const Ring& ring, std::size_t order) {
  FiniteRep V;
  V.ring = ring;
  V.rank = 1;
  V.mats.assign(order, ring.reduce(1));
  return V;
}

namespace {

void matmul_small(const Ring& R, std::size_t r, const i64* A, const i64* B, i64* out) {
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      i64 s = 0;
      for (std::size_t k = 0; k < r; ++k) s = R.add(s, R.mul(A[i * r + k], B[k * r + j]));
      out[i * r + j] = s;
    }
}

}  // namespace

FiniteRep FiniteRep::from_generators(const CayleyGraph& C, const Ring& ring, const std::vector<PNMatrix>& images) {
  if (images.size() != C.ngens) fail(ErrorCode::InvalidArgument, "one image per generator");
  FiniteRep V;
  V.ring = ring;
  V.rank = images.empty() ? 1 : images[0].rows();
  const std::size_t r = V.rank, rr = r * r;
  std::vector<i64> gens(C.ngens * rr), invs(C.ngens * rr);
  for (std::size_t s = 0; s < C.ngens; ++s) {
    const PNMatrix M = images[s].ring().N() == ring.N() ? images[s] : images[s].coarsen(ring.N());
    for (std::size_t e = 0; e < rr; ++e) gens[s * rr + e] = M.data()[e];
    // inverse as the power rho(s)^{ord(s) - 1}
    std::size_t ord = 1;
    for (std::uint32_t g = C.mul_gen(0, s); g != 0; g = C.mul_gen(g, s)) ++ord;
    std::vector<i64> acc(rr, 0), tmp(rr);
    for (std::size_t a = 0; a < r; ++a) acc[a * r + a] = ring.reduce(1);
    for (std::size_t k = 1; k < ord; ++k) {
      matmul_small(ring, r, acc.data(), gens.data() + s * rr, tmp.data());
      acc.swap(tmp);
    }
    std::copy(acc.begin(), acc.end(), invs.begin() + static_cast<std::ptrdiff_t>(s * rr));
  }
  V.mats.assign(C.order * rr, 0);
  for (std::size_t a = 0; a < r; ++a) V.mats[a * r + a] = ring.reduce(1);
  for (std::size_t k = 1; k < C.bfs.size(); ++k) {
    const std::uint32_t v = C.bfs[k];
    const std::size_t s = C.pgen[v];
    matmul_small(ring, r, V.mats.data() + std::size_t(C.parent[v]) * rr,
                 (C.pdir[v] > 0 ? gens.data() : invs.data()) + s * rr, V.mats.data() + std::size_t(v) * rr);
  }
  std::vector<i64> tmp(rr);
  for (std::uint32_t g = 0; g < C.order; ++g)
    for (std::size_t s = 0; s < C.ngens; ++s) {
      matmul_small(ring, r, V.at(g), gens.data() + s * rr, tmp.data());
      if (!std::equal(tmp.begin(), tmp.end(), V.at(C.mul_gen(g, s))))
        fail(ErrorCode::InvalidArgument, "representation does not factor through the finite group");
    }
  return V;
}

// ---------------------------------------------------------------------------
// bar complex

ScalarComplex bar_cochain(const FiniteGroup& G, const FiniteRep& V, int max_degree, std::size_t mem_cap_bytes) {
  const std::size_t n = G.order, r = V.rank;
  const Ring& R = V.ring;
  ScalarComplex C;
  C.ring = R;
  std::size_t tuples = 1;
  for (int k = 0; k <= max_degree + 1; ++k) {
    C.dims.push_back(tuples * r);
    if (k <= max_degree) {
      const long double bytes = static_cast<long double>(tuples) * n * tuples * r * r * 8;
      if (bytes > static_cast<long double>(mem_cap_bytes))
        fail(ErrorCode::ResourceCap, "bar cochains in degree " + std::to_string(k + 1) + " exceed the memory cap");
    }
    tuples *= n;
  }
  std::vector<std::uint32_t> g, h;
  for (int k = 0; k <= max_degree; ++k) {
    const std::size_t rows = C.dims[static_cast<std::size_t>(k) + 1] / r;
    PNMatrix M(R, rows * r, C.dims[static_cast<std::size_t>(k)]);
    g.assign(static_cast<std::size_t>(k) + 1, 0);
    auto encode = [&](const std::vector<std::uint32_t>& t) {
      std::size_t idx = 0;
      for (auto x : t) idx = idx * n + x;
      return idx;
    };
    auto add_block = [&](std::size_t row, std::size_t col, const i64* blk, i64 sign) {
      for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b) {
          const i64 v = blk ? blk[a * r + b] : (a == b ? 1 : 0);
          if (v == 0) continue;
          i64& dst = M(row * r + a, col * r + b);
          dst = sign > 0 ? R.add(dst, v) : R.sub(dst, v);
        }
    };
    for (std::size_t row = 0; row < rows; ++row) {
      std::size_t t = row;
      for (int i = k; i >= 0; --i) {
        g[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(t % n);
        t /= n;
      }
      h.assign(g.begin() + 1, g.end());
      add_block(row, encode(h), V.at(g[0]), 1);
      for (int i = 0; i < k; ++i) {
        h.clear();
        for (int j = 0; j <= k; ++j) {
          if (j == i) {
            h.push_back(G.mul(g[static_cast<std::size_t>(j)], g[static_cast<std::size_t>(j) + 1]));
            ++j;
          } else {
            h.push_back(g[static_cast<std::size_t>(j)]);
          }
        }
        add_block(row, encode(h), nullptr, (i + 1) % 2 ? -1 : 1);
      }
      h.assign(g.begin(), g.end() - 1);
      add_block(row, encode(h), nullptr, (k + 1) % 2 ? -1 : 1);
    }
    C.d.push_back(std::move(M));
  }
  return C;
}

// ---------------------------------------------------------------------------
// Cayley graph complex

namespace {

// Psi(v) = sum over the tree path root -> v of sign * rho(x) E_s, an r x (r S)
// block per vertex.
std::vector<i64> cons_potentials(const CayleyGraph& C, const FiniteRep& V) {
  const std::size_t r = V.rank, S = C.ngens, w = r * r * S;
  const Ring& R = V.ring;
  std::vector<i64> Psi(C.order * w, 0);
  for (std::size_t k = 1; k < C.bfs.size(); ++k) {
    const std::uint32_t v = C.bfs[k];
    const std::size_t s = C.pgen[v];
    const i64* par = Psi.data() + std::size_t(C.parent[v]) * w;
    i64* out = Psi.data() + std::size_t(v) * w;
    std::copy(par, par + w, out);
    const i64* rho = V.at(C.pdir[v] > 0 ? C.parent[v] : v);
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b) {
        i64& x = out[a * r * S + s * r + b];
        x = C.pdir[v] > 0 ? R.add(x, rho[a * r + b]) : R.sub(x, rho[a * r + b]);
      }
  }
  return Psi;
}

PNMatrix cons_matrix(const CayleyGraph& C, const FiniteRep& V) {
  const std::size_t r = V.rank, S = C.ngens, w = r * r * S;
  const Ring& R = V.ring;
  const auto Psi = cons_potentials(C, V);
  PNMatrix M(R, r * C.non_tree, r * S);
  for (std::uint32_t g = 0; g < C.order; ++g)
    for (std::size_t s = 0; s < S; ++s) {
      const std::int64_t e = C.edge_id[g * S + s];
      if (e < 0) continue;
      const std::uint32_t gs = C.mul_gen(g, s);
      const i64* rho = V.at(g);
      for (std::size_t a = 0; a < r; ++a)
        for (std::size_t c = 0; c < r * S; ++c) {
          i64 x = R.sub(Psi[g * w + a * r * S + c], Psi[gs * w + a * r * S + c]);
          if (c / r == s) x = R.add(x, rho[a * r + c % r]);
          M(static_cast<std::size_t>(e) * r + a, c) = x;
        }
    }
  return M;
}

PNMatrix equivariance_matrix(const CayleyGraph& C, const FiniteRep& V) {
  const std::size_t r = V.rank, S = C.ngens, E = C.non_tree;
  const Ring& R = V.ring;
  PNMatrix M(R, r * S * E, r * E);
  std::vector<std::pair<std::uint32_t, int>> cyc;
  std::map<std::int64_t, i64> count;
  for (std::uint32_t g = 0; g < C.order; ++g)
    for (std::size_t s = 0; s < S; ++s) {
      const std::int64_t e = C.edge_id[g * S + s];
      if (e < 0) continue;
      cyc.clear();
      C.path_edges(g, cyc);
      cyc.push_back({static_cast<std::uint32_t>(g * S + s), 1});
      const std::size_t mark = cyc.size();
      C.path_edges(C.mul_gen(g, s), cyc);
      for (std::size_t i = mark; i < cyc.size(); ++i) cyc[i].second = -cyc[i].second;
      for (std::size_t t = 0; t < S; ++t) {
        count.clear();
        for (const auto& [edge, sign] : cyc) {
          const std::uint32_t tail = edge / static_cast<std::uint32_t>(S);
          const std::size_t gen = edge % S;
          const std::int64_t id = C.edge_id[std::size_t(C.left[t * C.order + tail]) * S + gen];
          if (id >= 0) count[id] += sign;
        }
        const std::size_t row = (t * E + static_cast<std::size_t>(e)) * r;
        for (const auto& [id, c] : count)
          for (std::size_t a = 0; a < r; ++a)
            M(row + a, static_cast<std::size_t>(id) * r + a) =
                R.add(M(row + a, static_cast<std::size_t>(id) * r + a), R.reduce(c));
        const i64* rho = V.at(C.right[t]);  // generator t = 0 * t
        for (std::size_t a = 0; a < r; ++a)
          for (std::size_t b = 0; b < r; ++b)
            M(row + a, static_cast<std::size_t>(e) * r + b) =
                R.sub(M(row + a, static_cast<std::size_t>(e) * r + b), rho[a * r + b]);
      }
    }
  return M;
}

}  // namespace

ScalarComplex graph_cochain(const CayleyGraph& C, const FiniteRep& V, bool with_h2, std::size_t mem_cap_bytes) {
  const std::size_t r = V.rank, S = C.ngens, E = C.non_tree;
  const Ring& R = V.ring;
  if (with_h2) {
    const long double bytes = 3.0L * static_cast<long double>(r * S * E) * static_cast<long double>(r * E) * 8;
    if (bytes > static_cast<long double>(mem_cap_bytes))
      fail(ErrorCode::ResourceCap, "equivariance matrix needs about " +
                                       std::to_string(static_cast<long long>(bytes / (1 << 20))) + " MiB");
  }
  ScalarComplex X;
  X.ring = R;
  X.dims = {r, r * S, r * E};
  PNMatrix d0(R, r * S, r);
  for (std::size_t s = 0; s < S; ++s) {
    const i64* rho = V.at(C.right[s]);
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b) d0(s * r + a, b) = R.sub(rho[a * r + b], a == b ? 1 : 0);
  }
  X.d.push_back(std::move(d0));
  X.d.push_back(cons_matrix(C, V));
  if (with_h2) {
    X.dims.push_back(r * S * E);
    X.d.push_back(equivariance_matrix(C, V));
  }
  return X;
}

// ---------------------------------------------------------------------------
// inflation colimit

bool ColimitResult::stabilized() const {
  return std::all_of(stabilized_at.begin(), stabilized_at.end(), [](int n) { return n > 0; });
}

namespace {

struct Level {
  CayleyGraph C;
  FiniteRep V;
  std::size_t q = 1;  // p^n
};

std::string invariants_str(const ModuleInvariants& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.divisor_exponents.size(); ++i)
    s += (i ? "," : "") + std::to_string(m.divisor_exponents[i]);
  return s + "]";
}

// Image of the classes K (columns: generators of Hom_Q(K_n, V) in V^{E'_n})
// in H^2(Q_M) = Hom_Q(K_M, V) / im(Cons_M).
ModuleInvariants inflate_h2(const Level& lo, const Level& hi, int d, const PNMatrix& K, const PNMatrix& cons_hi) {
  const std::size_t r = lo.V.rank, S = lo.C.ngens, k = K.cols();
  const Ring& R = lo.V.ring;
  if (k == 0) return {};
  auto proj = [&](std::uint32_t idx) {
    std::size_t out = 0, mult = 1, t = idx;
    for (int i = 0; i < d; ++i) {
      out += (t % hi.q) % lo.q * mult;
      t /= hi.q;
      mult *= lo.q;
    }
    return static_cast<std::uint32_t>(out);
  };
  const std::size_t w = r * k;
  // weight of the projected edge (x, s): the class values on a non-tree edge, 0 on tree edges
  auto add_weight = [&](i64* dst, std::uint32_t x_hi, std::size_t s, int sign) {
    const std::int64_t id = lo.C.edge_id[std::size_t(proj(x_hi)) * S + s];
    if (id < 0) return;
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t j = 0; j < k; ++j) {
        const i64 v = K(static_cast<std::size_t>(id) * r + a, j);
        dst[a * k + j] = sign > 0 ? R.add(dst[a * k + j], v) : R.sub(dst[a * k + j], v);
      }
  };
  std::vector<i64> Phi(hi.C.order * w, 0);
  for (std::size_t t = 1; t < hi.C.bfs.size(); ++t) {
    const std::uint32_t v = hi.C.bfs[t];
    i64* out = Phi.data() + std::size_t(v) * w;
    const i64* par = Phi.data() + std::size_t(hi.C.parent[v]) * w;
    std::copy(par, par + w, out);
    if (hi.C.pdir[v] > 0)
      add_weight(out, hi.C.parent[v], hi.C.pgen[v], 1);
    else
      add_weight(out, v, hi.C.pgen[v], -1);
  }
  const std::size_t cc = cons_hi.cols();
  PNMatrix T(R, cons_hi.rows(), cc + k);
  for (std::size_t i = 0; i < cons_hi.rows(); ++i)
    for (std::size_t j = 0; j < cc; ++j) T(i, j) = cons_hi(i, j);
  std::vector<i64> acc(w);
  for (std::uint32_t g = 0; g < hi.C.order; ++g)
    for (std::size_t s = 0; s < S; ++s) {
      const std::int64_t e = hi.C.edge_id[std::size_t(g) * S + s];
      if (e < 0) continue;
      const std::uint32_t gs = hi.C.mul_gen(g, s);
      for (std::size_t x = 0; x < w; ++x) acc[x] = R.sub(Phi[std::size_t(g) * w + x], Phi[std::size_t(gs) * w + x]);
      add_weight(acc.data(), g, s, 1);
      for (std::size_t a = 0; a < r; ++a)
        for (std::size_t j = 0; j < k; ++j) T(static_cast<std::size_t>(e) * r + a, cc + j) = acc[a * k + j];
    }
  const PNMatrix ker = padic::kernel_basis(T);
  PNMatrix rel(R, k, ker.cols());
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t c = 0; c < ker.cols(); ++c) rel(j, c) = ker(cc + j, c);
  return padic::cokernel_invariants(rel);
}

}  // namespace

ColimitResult inflation_colimit(const group::GroupModel& G, const dist::Representation& rho, int max_degree,
                                int n_max, int lookahead, std::size_t mem_cap_bytes) {
  if (max_degree < 0 || max_degree > 2)
    fail(ErrorCode::InvalidArgument, "the inflation route computes degrees 0..2 only");
  const int m = rho.ring.N();
  ColimitResult res;
  res.lookahead = lookahead > 0 ? lookahead : m;
  res.n_max = n_max;
  res.stabilized_at.assign(static_cast<std::size_t>(max_degree) + 1, -1);
  std::map<int, Level> cache;
  auto level = [&](int n) -> const Level* {
    auto it = cache.find(n);
    if (it != cache.end()) return &it->second;
    Level L;
    L.C = cayley_from_model(G, n, mem_cap_bytes);
    for (int k = 0; k < n; ++k) L.q *= static_cast<std::size_t>(G.p());
    try {
      L.V = FiniteRep::from_generators(L.C, rho.ring, rho.images);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InvalidArgument) throw;
      return nullptr;
    }
    return &cache.emplace(n, std::move(L)).first->second;
  };
  for (int n = 1; n <= n_max; ++n) {
    const Level* lo = level(n);
    if (!lo) continue;
    const ScalarComplex X = graph_cochain(lo->C, lo->V, max_degree >= 2, mem_cap_bytes);
    ColimitLevel lv;
    lv.n = n;
    lv.H = cohomology(X, "graph", max_degree).degrees;
    lv.image = lv.H;  // inflation is the identity on H^0 and injective on H^1
    if (max_degree >= 2) {
      const Level* hi = level(n + res.lookahead);
      const ScalarComplex Y = graph_cochain(hi->C, hi->V, false, mem_cap_bytes);
      lv.image[2] = inflate_h2(*lo, *hi, G.d(), padic::kernel_basis(X.d[2]), Y.d[1]);
    }
    // drop the level-n tables that are no longer needed
    cache.erase(n);
    res.levels.push_back(std::move(lv));
    const std::size_t L = res.levels.size();
    if (L >= 2)
      for (std::size_t i = 0; i < res.stabilized_at.size(); ++i)
        if (res.stabilized_at[i] < 0 && res.levels[L - 1].image[i] == res.levels[L - 2].image[i])
          res.stabilized_at[i] = n;
    if (res.stabilized()) break;
  }
  if (!res.stabilized()) {
    std::string msg = "inflation colimit did not stabilize by n = " + std::to_string(n_max) + ":";
    for (std::size_t i = 0; i < res.stabilized_at.size(); ++i)
      if (res.stabilized_at[i] < 0 && !res.levels.empty())
        msg += " H^" + std::to_string(i) + " last " + invariants_str(res.levels.back().image[i]);
    fail(ErrorCode::NotStabilized, msg);
  }
  for (int at : res.stabilized_at)
    for (const auto& lv : res.levels)
      if (lv.n == at) res.H.push_back(lv.image[res.H.size()]);
  return res;
}

}  // namespace lazard::cx
