#pragma once

// Cohomology of finite groups and of the finite quotients G/G_n, and the
// inflation colimit that recovers continuous cohomology from them.
//
// Small groups use the inhomogeneous bar complex. Larger quotients use the
// Cayley graph of the generators: with T a spanning tree and E' the non-tree
// edges,
//   V -> V^S -> V^{E'} -> V^{S x E'}
// computes H^0, H^1, H^2 exactly. The third term is Hom_Z(K, V) for the
// relation module K (free abelian on the fundamental cycles) and the last map
// measures failure of Q-equivariance.

#include <cstdint>
#include <string>
#include <vector>

#include "lazardlab/complexes.hpp"
#include "lazardlab/distribution.hpp"
#include "lazardlab/group.hpp"

namespace lazard::cx {

struct FiniteGroup {
  std::string name;
  std::size_t order = 1;
  std::vector<std::uint32_t> table;       // order * order, identity = 0
  std::vector<std::uint32_t> generators;  // generating set S

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return table[std::size_t(a) * order + b]; }

  static FiniteGroup cyclic(std::size_t n);
  static FiniteGroup product(const FiniteGroup& A, const FiniteGroup& B);
  static FiniteGroup symmetric3();
  static FiniteGroup from_quotient(const group::FiniteQuotient& Q);
};

/// Right and left multiplication by the generators plus a BFS spanning tree
/// of the undirected Cayley graph (edges g -> g*s).
struct CayleyGraph {
  std::size_t order = 1;
  std::size_t ngens = 0;
  std::vector<std::uint32_t> right;   // right[g * ngens + s] = g * s
  std::vector<std::uint32_t> left;    // left[s * order + g] = s * g
  std::vector<std::uint32_t> bfs;     // vertices in BFS order, root 0 first
  std::vector<std::uint32_t> parent;  // tree parent
  std::vector<std::uint32_t> pgen;    // generator on the tree edge
  std::vector<std::int8_t> pdir;      // +1: g = parent*s, -1: g*s = parent
  std::vector<std::int64_t> edge_id;  // (g, s) -> non-tree index or -1
  std::size_t non_tree = 0;

  std::uint32_t mul_gen(std::uint32_t g, std::size_t s) const { return right[g * ngens + s]; }
  /// Signed non-tree edges along the tree path from the root to g.
  void path_edges(std::uint32_t g, std::vector<std::pair<std::uint32_t, int>>& out_edges_sign) const;
};

CayleyGraph cayley_from_table(const FiniteGroup& G);
/// The quotient G/G_n with indices little-endian in base p^n; never builds
/// the full multiplication table.
CayleyGraph cayley_from_model(const group::GroupModel& G, int n, std::size_t mem_cap_bytes);

/// A representation of a finite group on (Z/p^m)^r, one matrix per element.
struct FiniteRep {
  Ring ring;
  std::size_t rank = 1;
  std::vector<i64> mats;  // order * rank * rank, row-major per element

  const i64* at(std::uint32_t g) const { return mats.data() + std::size_t(g) * rank * rank; }
  bool is_trivial() const;

  static FiniteRep trivial(const Ring& ring, std::size_t order);
  /// Extends generator images along the Cayley tree; checks that the result
  /// is a homomorphism on every edge.
  static FiniteRep from_generators(const CayleyGraph& C, const Ring& ring, const std::vector<PNMatrix>& images);
};

/// Inhomogeneous cochains C^k = Maps(G^k, V) for k = 0 .. max_degree + 1.
ScalarComplex bar_cochain(const FiniteGroup& G, const FiniteRep& V, int max_degree,
                          std::size_t mem_cap_bytes = std::size_t(1) << 30);

/// The Cayley graph complex V -> V^S -> V^{E'} -> V^{S x E'} (degrees <= 2).
/// With with_h2 = false the last map is omitted.
ScalarComplex graph_cochain(const CayleyGraph& C, const FiniteRep& V, bool with_h2 = true,
                            std::size_t mem_cap_bytes = std::size_t(1) << 30);

struct ColimitLevel {
  int n = 0;
  std::vector<ModuleInvariants> H;      // H^i(G/G_n, V)
  std::vector<ModuleInvariants> image;  // image of H^i(G/G_n) in H^i(G/G_{n+L})
};

struct ColimitResult {
  int lookahead = 1;
  int n_max = 3;
  std::vector<ColimitLevel> levels;
  std::vector<int> stabilized_at;  // per degree, -1 when not stabilized
  std::vector<ModuleInvariants> H;  // stabilized images
  bool stabilized() const;
};

/// Estimates H^i(G, V), i <= max_degree <= 2, as the image of
/// H^i(G/G_n) -> H^i(G/G_{n+L}), declared stable once two consecutive levels
/// agree. lookahead <= 0 means L = m (V = (Z/p^m)^r). Throws NotStabilized
/// when some degree is still moving at n_max, ResourceCap when a level would
/// exceed the memory cap.
ColimitResult inflation_colimit(const group::GroupModel& G, const dist::Representation& rho, int max_degree,
                                int n_max = 3, int lookahead = 0,
                                std::size_t mem_cap_bytes = std::size_t(4) << 30);

}  // namespace lazard::cx
