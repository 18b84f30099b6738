#pragma once

// Cochain complexes over Z/p^N and the resolutions that produce them: the
// Lazard-Serre lift of the Koszul complex over the truncated Iwasawa algebra,
// and the Chevalley-Eilenberg complex of the Lie algebra.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lazardlab/distribution.hpp"
#include "lazardlab/gauge.hpp"
#include "lazardlab/group.hpp"
#include "lazardlab/padic.hpp"

namespace lazard::cx {

using padic::i64;
using padic::ModuleInvariants;
using padic::PNMatrix;
using padic::Ring;

/// 0 -> C^0 -> C^1 -> ... with d[i]: C^i -> C^{i+1} acting on column vectors.
struct ScalarComplex {
  Ring ring;
  std::vector<std::size_t> dims;
  std::vector<PNMatrix> d;  // d.size() == dims.size() - 1

  int top() const { return static_cast<int>(dims.size()) - 1; }
  bool d2_zero() const;
};

struct CohomologyReport {
  std::string method;
  int N = 0;  // coefficient precision; divisors below N are torsion
  int d = 0;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::vector<ModuleInvariants> degrees;
  bool d2_zero = true;
  std::optional<double> timing_ms;
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();

  std::vector<int> full_ranks() const;
  /// sum (-1)^i full_rank_count(H^i)
  int euler() const;
  nlohmann::ordered_json to_json() const;
};

nlohmann::ordered_json invariants_json(const ModuleInvariants& m, int N);

/// H^i for i = 0 .. max_degree (all of the complex when negative); degrees
/// above the top are zero.
CohomologyReport cohomology(const ScalarComplex& C, const std::string& method, int max_degree = -1);

// ---------------------------------------------------------------------------
// Lazard-Serre resolution

/// Sorted k-subsets of {0..d-1} in lexicographic order.
std::vector<std::vector<int>> subsets(int d, int k);

using DistMatrix = std::vector<std::vector<dist::Distribution>>;

struct LazardComplex {
  dist::AlgebraPtr alg;
  int d = 0;
  /// A[k] : P_k -> P_{k-1}, rows = k-subsets, cols = (k-1)-subsets, for
  /// k = 1..d (A[0] unused). Maps are v -> v * A[k].
  std::vector<DistMatrix> A;
  /// The graded Koszul matrices the lift started from.
  std::vector<DistMatrix> koszul;
  std::vector<int> iterations;  // correction rounds per k

  /// A[k] - koszul[k]
  DistMatrix correction(int k) const;
  /// A[k+1] * A[k] == 0 in the truncated algebra for all k.
  bool composition_zero() const;
  /// Every entry of A[1] has zero augmentation.
  bool augmentation_compatible() const;
};

DistMatrix dist_matmul(const DistMatrix& X, const DistMatrix& Y);

/// Lifts the graded Koszul differentials until consecutive compositions
/// vanish in Lambda / (p^N + F^{>=W}). Throws NoConvergence (with the
/// residual weight) if a degree needs more than W correction rounds.
LazardComplex lazard_resolution(const dist::AlgebraPtr& alg);

/// Hom_Lambda(P, V): blocks specialize(A[k][J][I], rho).
ScalarComplex hom_into_rep(const LazardComplex& P, const dist::Representation& rho);

struct NormCheck {
  bool pass = true;
  gauge::Radius radius;
  gauge::Value bound;  // gauge of the initial Koszul entries, b(h)
  gauge::Value worst;  // smallest correction gauge
  std::string witness;
  std::string str() const;
};

/// Every lifting correction has D_(h)-gauge >= the gauge b(h) of the initial
/// Koszul entries.
NormCheck norm_bounded_check(const LazardComplex& P, const gauge::Radius& h);

// ---------------------------------------------------------------------------
// Chevalley-Eilenberg

/// log rho(g_i), truncated series, over Z/p^prec.
std::vector<PNMatrix> lie_action(const dist::Representation& rho, int prec);

/// Standard CE cochains Hom(Lambda^k g, V) with the given bracket constants
/// and Lie action matrices (all over the same ring).
ScalarComplex ce_cochain(const group::LieBracketConstants& c, const std::vector<PNMatrix>& action,
                         int max_degree = -1);

}  // namespace lazard::cx
