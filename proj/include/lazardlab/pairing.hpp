#pragma once

// Finite windows of the residue pairing between anti-Tate series and the Tate
// algebra, and of the pairing between finitely supported and arbitrary
// sequences over Z/p^N.

#include <map>
#include <vector>

#include "lazardlab/padic.hpp"

namespace lazard::pairing {

using padic::i64;
using padic::PNMatrix;
using padic::Ring;

/// sum_{-D <= n <= D} a_n T^n; n >= 0 is the Tate side, n < 0 the anti-Tate side.
class TruncatedTate {
 public:
  TruncatedTate(const Ring& ring, int D);
  static TruncatedTate monomial(const Ring& ring, int D, int n, i64 c = 1);

  const Ring& ring() const { return ring_; }
  int D() const { return D_; }
  i64 at(int n) const;
  void set(int n, i64 v);
  bool tate() const;       // supported in n >= 0
  bool anti_tate() const;  // supported in n < 0
  TruncatedTate operator+(const TruncatedTate& o) const;

 private:
  Ring ring_;
  int D_ = 0;
  std::vector<i64> a_;  // a_[n + D]
};

/// sum_{n + m = -1} a_n b_m for f anti-Tate and g Tate.
i64 residue_pair(const TruncatedTate& f, const TruncatedTate& g);

/// G[n][m] = residue_pair(T^{-n-1}, T^{perm[m]}) for 0 <= n, m <= D
/// (identity permutation when perm is empty).
PNMatrix gram_matrix(const Ring& ring, int D, const std::vector<int>& perm = {});

/// sum_{i in window} x_i y_i with x finitely supported inside the window.
i64 banach_smith_pair(const Ring& ring, const std::map<std::size_t, i64>& x, const std::vector<i64>& y,
                      std::size_t window);

/// The window pairing against the family ys (one sequence per column) is
/// perfect iff the matrix P[i][j] = y_j(i) is invertible over Z/p^N.
bool window_perfect(const Ring& ring, const std::vector<std::vector<i64>>& ys, std::size_t window);

}  // namespace lazard::pairing
