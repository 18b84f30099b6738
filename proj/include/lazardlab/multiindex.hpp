#pragma once

// Multi-indices alpha in N^d, enumerated in graded lexicographic order.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace lazard {

using MultiIndex = std::vector<int>;

inline int total_degree(const MultiIndex& a) {
  int s = 0;
  for (int x : a) s += x;
  return s;
}

/// All alpha with |alpha| <= D, graded, lexicographically decreasing inside a
/// degree (so e_1 comes before e_2). Positions are stable and dense.
class SimplexIndex {
 public:
  SimplexIndex() = default;
  SimplexIndex(int d, int D);

  int d() const { return d_; }
  int D() const { return D_; }
  std::size_t size() const { return list_.size(); }
  const MultiIndex& operator[](std::size_t i) const { return list_[i]; }
  const std::vector<MultiIndex>& all() const { return list_; }
  /// Position of alpha, or npos when |alpha| > D.
  std::size_t find(const MultiIndex& a) const;
  /// First position of the degree-k shell.
  std::size_t shell_begin(int k) const { return shell_start_[static_cast<std::size_t>(k)]; }
  std::size_t shell_end(int k) const { return shell_start_[static_cast<std::size_t>(k) + 1]; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  int d_ = 0;
  int D_ = 0;
  std::vector<MultiIndex> list_;
  std::vector<std::size_t> shell_start_;
  std::map<MultiIndex, std::size_t> pos_;
};

std::string multi_index_str(const MultiIndex& a);

}  // namespace lazard
