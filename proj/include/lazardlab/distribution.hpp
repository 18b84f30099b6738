#pragma once

// Truncated Iwasawa algebra of a uniform group in the basis
// b^alpha = b_1^{alpha_1} ... b_d^{alpha_d}, b_i = [g_i] - 1.
//
// Elements live in Lambda / (p^N + F^{>=W}), where F is the filtration with
// weight(p^a b^gamma) = q*a + s*|gamma| and W = q*N + s*D. This quotient is a
// two-sided ideal quotient, so products are exact in it; coefficients with
// |gamma| <= D are exact mod p^N and the tail up to D_ext = floor((W-1)/s) is
// kept at the reduced precision ceil((W - s|gamma|)/q).

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "lazardlab/gauge.hpp"
#include "lazardlab/group.hpp"
#include "lazardlab/multiindex.hpp"
#include "lazardlab/padic.hpp"

namespace lazard::dist {

using padic::i64;
using padic::PNMatrix;
using padic::Ring;

/// Filtration weights (s, q) with 1/(p-1) < s/q < 1.
struct Weights {
  int s = 1;
  int q = 2;
  static Weights for_prime(i64 p);
};

/// Sparse column operator: for each source position, (target, value) pairs.
struct SparseOperator {
  std::vector<std::vector<std::pair<std::uint32_t, i64>>> cols;
};

class Algebra {
 public:
  /// Builds the left multiplication operators b_i * (.). When cache_dir is
  /// non-empty the operators are read from / written to a file keyed by the
  /// group hash and (N, D).
  static std::shared_ptr<const Algebra> build(const group::GroupModel& G, int N, int D,
                                              const std::string& cache_dir = "");

  const group::GroupModel& group() const { return G_; }
  i64 p() const { return G_.p(); }
  int d() const { return G_.d(); }
  int N() const { return N_; }
  int D() const { return D_; }
  int W() const { return W_; }
  int D_ext() const { return D_ext_; }
  Weights weights() const { return wt_; }
  const Ring& ring() const { return ring_; }
  const SimplexIndex& index() const { return index_; }
  std::size_t size() const { return index_.size(); }
  /// Precision exponent of the coefficient at a position.
  int precision(std::size_t pos) const { return prec_[pos]; }
  /// Weight q*v(c) + s*|gamma| of c*b^gamma (W when c vanishes at that precision).
  int weight(std::size_t pos, i64 c) const;
  /// Reduces a coefficient vector into the quotient (coefficient-wise).
  void normalize(std::vector<i64>& v) const;
  /// b_i * v.
  std::vector<i64> apply_left(int i, const std::vector<i64>& v) const;
  const SparseOperator& left_operator(int i) const { return L_[static_cast<std::size_t>(i)]; }
  bool loaded_from_cache() const { return from_cache_; }

 private:
  group::GroupModel G_;
  int N_ = 1, D_ = 0, W_ = 0, D_ext_ = 0;
  Weights wt_;
  Ring ring_;
  SimplexIndex index_;
  std::vector<int> prec_;
  std::vector<i64> prec_mod_;
  std::vector<SparseOperator> L_;
  bool from_cache_ = false;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

class Distribution {
 public:
  Distribution() = default;
  explicit Distribution(AlgebraPtr alg);
  Distribution(AlgebraPtr alg, std::vector<i64> coeffs);

  static Distribution zero(const AlgebraPtr& alg) { return Distribution(alg); }
  static Distribution one(const AlgebraPtr& alg);
  static Distribution monomial(const AlgebraPtr& alg, const MultiIndex& a, i64 c = 1);
  /// b_i
  static Distribution generator(const AlgebraPtr& alg, int i);

  const AlgebraPtr& algebra() const { return alg_; }
  const std::vector<i64>& coeffs() const { return a_; }
  i64 at(const MultiIndex& a) const;
  bool is_zero() const;
  bool operator==(const Distribution& o) const { return a_ == o.a_; }

  Distribution operator+(const Distribution& o) const;
  Distribution operator-(const Distribution& o) const;
  Distribution operator-() const;
  Distribution scaled(i64 c) const;
  /// Minimal filtration weight of a nonzero coefficient (W for zero).
  int weight() const;
  /// Part of weight exactly w, as a coefficient vector (others zeroed).
  Distribution weight_part(int w) const;

 private:
  AlgebraPtr alg_;
  std::vector<i64> a_;
};

/// delta_g = sum_alpha binom(x(g), alpha) b^alpha.
Distribution dirac(const AlgebraPtr& alg, const group::Coords& x);
/// Convolution product mu * nu in the truncated algebra.
Distribution convolve(const Distribution& mu, const Distribution& nu);
/// a_0.
i64 augmentation(const Distribution& mu);

/// D_(h) gauge min_alpha v(a_alpha) + b(h)|alpha|, b(h) = p^{-h}/(p-1).
gauge::Value dh_valuation(const Distribution& mu, const gauge::Radius& h);
/// D^(h) gauge min_alpha v(a_alpha) + (p^{-h}|alpha| - s(alpha))/(p-1).
gauge::Value analytic_valuation(const Distribution& mu, const gauge::Radius& h);

/// A representation of G on (Z/p^N)^k given by the images of the generators.
struct Representation {
  std::string name;
  Ring ring;
  std::size_t rank = 1;
  std::vector<PNMatrix> images;  // rho(g_i)

  /// Trivial action on Z/p^m.
  static Representation trivial(i64 p, int d, int m);
  /// The defining matrix representation of a matrix model.
  static Representation standard(const group::GroupModel& G, int N);
};

/// sum_alpha a_alpha (rho(g_1)-1)^{alpha_1} ... (rho(g_d)-1)^{alpha_d}.
/// Throws NotProUnipotent unless every rho(g_i) = 1 mod p.
PNMatrix specialize(const Distribution& mu, const Representation& rho);

/// M[gamma][alpha][beta] = Delta_x^alpha Delta_y^beta binom(psi(x, y), gamma)
/// at (0, 0) for |alpha|, |beta|, |gamma| <= D, exact mod p^N.
struct StructureTensor {
  Ring ring;
  SimplexIndex index;
  std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, i64> entries;  // (gamma, alpha, beta)

  i64 at(std::size_t g, std::size_t a, std::size_t b) const;
};

StructureTensor build_structure_tensor(const group::GroupModel& G, int D, int N,
                                       std::size_t mem_cap_bytes = std::size_t(1) << 30);
/// (mu * nu)_gamma = sum mu_alpha nu_beta M^gamma_{alpha beta} on |gamma| <= D,
/// with mu, nu read on |alpha|, |beta| <= D.
std::vector<i64> convolve_with_tensor(const StructureTensor& T, const std::vector<i64>& mu,
                                      const std::vector<i64>& nu);

/// Dump format: {"group_hash", "p", "N", "D", "coefficients": [{"alpha": [..], "c": "digits"}]}.
std::string dump_json(const Distribution& mu);
Distribution load_json(const AlgebraPtr& alg, const std::string& text);

}  // namespace lazard::dist
