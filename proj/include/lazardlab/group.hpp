#pragma once

// Uniform pro-p groups in a chart of the second kind
// x -> g_1^{x_1} ... g_d^{x_d}, with an exact evaluator for the group law.

#include <cstdint>
#include <string>
#include <vector>

#include "lazardlab/padic.hpp"

namespace lazard::group {

using padic::i64;
using padic::PNMatrix;
using padic::Ring;
using Coords = std::vector<i64>;

enum class Kind { Additive, Heisenberg, GL2Congruence, Matrix, Polynomial };

const char* kind_name(Kind k);

/// One monomial c * x^a * y^b in a polynomial law correction term.
struct PolyTerm {
  i64 coefficient = 0;
  std::vector<int> x_exp;
  std::vector<int> y_exp;
};

class GroupModel {
 public:
  static GroupModel additive(i64 p, int d, int N);
  /// Upper unitriangular 3x3 matrices with off-diagonal entries in p^n Z_p.
  static GroupModel heisenberg(i64 p, int n, int N);
  /// The congruence subgroup 1 + p^n M_2(Z_p).
  static GroupModel gl2_congruence(i64 p, int n, int N);
  /// Matrix group generated (as a chart of the second kind) by the given
  /// k x k matrices, each congruent to the identity mod p.
  static GroupModel matrix(i64 p, std::vector<std::vector<i64>> generators, int N, std::string name = "matrix");
  /// psi_k(x, y) = x_k + y_k + sum of the terms in corrections[k].
  static GroupModel polynomial(i64 p, int d, std::vector<std::vector<PolyTerm>> corrections, int N,
                               std::string name = "polynomial");

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  i64 p() const { return p_; }
  int d() const { return d_; }
  int N() const { return N_; }
  /// Congruence level of the generators (g_i = 1 mod p^n).
  int level() const { return level_; }
  bool has_matrices() const { return !gens_.empty(); }
  std::size_t matrix_size() const { return k_; }
  const std::vector<std::vector<PolyTerm>>& corrections() const { return corr_; }
  /// Generators as flat row-major integer matrices (residues mod the largest
  /// representable power of p).
  const std::vector<std::vector<i64>>& generator_entries() const { return gens_; }

  /// psi(x, y) mod p^m.
  Coords multiply(const Coords& x, const Coords& y, int m) const;
  /// The y with psi(x, y) = 0 mod p^m; throws NoConvergence if the fixed
  /// point iteration does not settle.
  Coords inverse(const Coords& x, int m) const;
  /// psi computed through the matrix realization (matrix product followed by
  /// chart_decompose), used as an oracle for the closed-form laws.
  Coords multiply_via_matrices(const Coords& x, const Coords& y, int m) const;

  /// phi(x) = g_1^{x_1} ... g_d^{x_d} as a matrix over Z/p^{m + level}.
  PNMatrix recompose(const Coords& x, int m) const;
  /// Inverse of recompose: coordinates mod p^m of a matrix over Z/p^{m + level}.
  Coords chart_decompose(const PNMatrix& M, int m) const;

  /// Stable hash of the defining data, hex encoded.
  std::string hash() const;

 private:
  Kind kind_ = Kind::Additive;
  std::string name_;
  i64 p_ = 3;
  int d_ = 1;
  int N_ = 1;
  int level_ = 1;
  std::size_t k_ = 0;
  std::vector<std::vector<i64>> gens_;
  std::vector<std::vector<PolyTerm>> corr_;

  Ring matrix_ring(int m) const;
  PNMatrix generator(std::size_t i, const Ring& R) const;
  PNMatrix generator_power(std::size_t i, i64 e, const Ring& R, int m) const;
};

/// Builds a group from a builtin name; recognised names are additive,
/// heisenberg and gl2_congruence.
GroupModel builtin_group(const std::string& name, i64 p, int d, int n, int N);

/// Parses a group spec (JSON text).
GroupModel group_from_spec_json(const std::string& text);

struct AxiomResult {
  std::string axiom;
  bool pass = true;
  std::string witness;
};

struct ValidationReport {
  std::vector<AxiomResult> axioms;
  bool all_pass() const;
};

ValidationReport validate_group(const GroupModel& G, int sample_count, int m, std::uint64_t seed);

/// Multiplication table of G/G_n on (Z/p^n)^d. Element index is
/// sum_i x_i * (p^n)^i; index 0 is the identity.
struct FiniteQuotient {
  i64 p = 3;
  int n = 1;
  int d = 1;
  std::size_t order = 1;
  std::vector<std::uint32_t> table;  // order * order
  std::vector<std::uint32_t> inverse;

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return table[std::size_t(a) * order + b]; }
  std::size_t index_of(const Coords& x) const;
  Coords coords_of(std::size_t idx) const;
};

/// Throws ResourceCap when the table would exceed mem_cap_bytes.
FiniteQuotient finite_quotient(const GroupModel& G, int n, std::size_t mem_cap_bytes = std::size_t(1) << 30);

struct LieBracketConstants {
  i64 p = 3;
  int d = 0;
  int precision = 0;  // N_bracket
  bool antisymmetric = true;
  std::string source;  // "matrix_log" or "finite_difference"
  std::vector<i64> c;  // c[(i*d + j)*d + k], residues mod p^precision

  i64 at(int i, int j, int k) const { return c[(std::size_t(i) * d + j) * d + k]; }
};

/// Structure constants of Lie G in the basis log(g_i): from matrix logarithms
/// when a matrix realization exists, else from finite differences of the law.
LieBracketConstants lie_bracket(const GroupModel& G);
LieBracketConstants lie_bracket_matrix_log(const GroupModel& G);
LieBracketConstants lie_bracket_finite_difference(const GroupModel& G);

}  // namespace lazard::group
