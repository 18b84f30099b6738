#pragma once

// Exact arithmetic over Z/p^N and canonical linear algebra (Howell and
// Smith forms) used to compute homology of complexes over Z/p^N.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lazardlab/error.hpp"

namespace lazard::padic {

using i64 = std::int64_t;

/// The coefficient ring Z/p^N. Residues are kept in [0, p^N).
class Ring {
 public:
  Ring() = default;
  Ring(i64 p, int N);

  i64 p() const { return p_; }
  int N() const { return N_; }
  i64 modulus() const { return mod_; }
  /// p^e for 0 <= e <= N (p^N is the modulus itself).
  i64 pow(int e) const { return pows_[static_cast<std::size_t>(e)]; }

  i64 reduce(i64 x) const {
    x %= mod_;
    return x < 0 ? x + mod_ : x;
  }
  i64 add(i64 a, i64 b) const {
    i64 s = a + b;
    return s >= mod_ ? s - mod_ : s;
  }
  i64 sub(i64 a, i64 b) const {
    i64 s = a - b;
    return s < 0 ? s + mod_ : s;
  }
  i64 neg(i64 a) const { return a == 0 ? 0 : mod_ - a; }
  i64 mul(i64 a, i64 b) const {
    if (small_) return static_cast<i64>((static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(b)) %
                                        static_cast<std::uint64_t>(mod_));
    return static_cast<i64>((static_cast<__int128>(a) * b) % mod_);
  }
  /// Largest e <= N with p^e | x.
  int valuation(i64 x) const;
  /// Inverse of a unit; throws InvalidArgument for non-units.
  i64 inverse(i64 unit) const;
  /// Splits x = p^v * u with u a unit (u = 1 when x = 0).
  std::pair<int, i64> split(i64 x) const;
  /// Reduction map to the coarser ring Z/p^e.
  Ring coarsen(int e) const { return Ring(p_, e); }

  bool operator==(const Ring& o) const { return p_ == o.p_ && N_ == o.N_; }

 private:
  i64 p_ = 2;
  int N_ = 1;
  i64 mod_ = 2;
  bool small_ = true;
  std::vector<i64> pows_{1, 2};
};

/// Base-p digit string (most significant digit first) to residue.
i64 parse_digits(const Ring& ring, const std::string& digits);
/// Residue to base-p digit string with exactly N digits trimmed of leading zeros.
std::string format_digits(const Ring& ring, i64 residue);

/// Element of Z/p^N with its ring attached.
struct PadicScalar {
  Ring ring;
  i64 residue = 0;

  static PadicScalar of(const Ring& r, i64 x) { return {r, r.reduce(x)}; }
  int valuation() const { return ring.valuation(residue); }
  bool is_zero() const { return residue == 0; }

  PadicScalar operator+(const PadicScalar& o) const { return {ring, ring.add(residue, o.residue)}; }
  PadicScalar operator-(const PadicScalar& o) const { return {ring, ring.sub(residue, o.residue)}; }
  PadicScalar operator*(const PadicScalar& o) const { return {ring, ring.mul(residue, o.residue)}; }
  PadicScalar operator-() const { return {ring, ring.neg(residue)}; }
  bool operator==(const PadicScalar& o) const { return ring == o.ring && residue == o.residue; }
};

int valuation(const PadicScalar& x);

/// Dense row-major matrix over Z/p^N.
class PNMatrix {
 public:
  PNMatrix() = default;
  PNMatrix(const Ring& ring, std::size_t rows, std::size_t cols)
      : ring_(ring), rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  PNMatrix(const Ring& ring, std::size_t rows, std::size_t cols, std::vector<i64> data);

  static PNMatrix identity(const Ring& ring, std::size_t n);

  const Ring& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  i64 operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  i64& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, i64 v) { data_[i * cols_ + j] = ring_.reduce(v); }
  std::span<i64> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const i64> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  const std::vector<i64>& data() const { return data_; }

  PNMatrix operator*(const PNMatrix& o) const;
  PNMatrix operator+(const PNMatrix& o) const;
  PNMatrix operator-(const PNMatrix& o) const;
  bool operator==(const PNMatrix& o) const {
    return ring_ == o.ring_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  PNMatrix transpose() const;
  PNMatrix scaled(i64 c) const;
  bool is_zero() const;
  /// Same entries reduced into Z/p^e (e <= N).
  PNMatrix coarsen(int e) const;
  /// Rows [r0, r1) as a new matrix.
  PNMatrix row_block(std::size_t r0, std::size_t r1) const;

  // Elementary operations used by the normal-form routines.
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += c * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, i64 c);
  void scale_row(std::size_t r, i64 c);

 private:
  Ring ring_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<i64> data_;
};

/// A finite Z/p^N-module presented as the direct sum of Z/p^e over the multiset.
struct ModuleInvariants {
  std::vector<int> divisor_exponents;  // sorted ascending, each in [1, N]
  int full_rank_count = 0;             // multiplicity of N

  static ModuleInvariants from_exponents(std::vector<int> exps, int N);
  bool operator==(const ModuleInvariants& o) const {
    return divisor_exponents == o.divisor_exponents && full_rank_count == o.full_rank_count;
  }
  /// log_p of the module order.
  long long length() const;
};

struct HowellResult {
  PNMatrix H;  // (rows + cols) x cols, nonzero rows first
  PNMatrix U;  // square, invertible, H = U * [M; 0]
};

/// Howell canonical form. The input is padded with `cols` zero rows so that the
/// transform stays square; use howell_rows for the nonzero rows only.
HowellResult howell_form(const PNMatrix& M);
/// Nonzero rows of the Howell form (no transform, no padding).
PNMatrix howell_rows(const PNMatrix& M);
/// True iff v lies in the row span of M.
bool in_row_span(const PNMatrix& M, std::span<const i64> v);

/// Exponents e_1 <= e_2 <= ... of the Smith diagonal (p^N = 0 gives N),
/// min(rows, cols) entries.
std::vector<int> smith_invariants(const PNMatrix& M);

/// Smith reduction that also returns B^{-1} where A*M*B = diag.
struct SmithResult {
  std::vector<int> diag_exponents;  // length min(rows, cols)
  PNMatrix B_inverse;               // cols x cols
};
SmithResult smith_with_column_transform(const PNMatrix& M);

/// Generators (as columns) of ker(M) for M acting on column vectors.
PNMatrix kernel_basis(const PNMatrix& M);

/// Invariants of coker(R) = R^rows / colspan(R).
ModuleInvariants cokernel_invariants(const PNMatrix& relations);

/// H = ker(d_out) / im(d_in) for column-vector differentials
/// d_in: R^a -> R^n, d_out: R^n -> R^b.
ModuleInvariants homology_at(const PNMatrix& d_in, const PNMatrix& d_out);

/// Solves A x = b; returns nullopt-like empty vector and false if unsolvable.
bool solve(const PNMatrix& A, std::span<const i64> b, std::vector<i64>& x);

}  // namespace lazard::padic
