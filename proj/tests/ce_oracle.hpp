#pragma once

// Exact rational Chevalley-Eilenberg Betti numbers; an oracle independent of
// the Z/p^N machinery.

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

// rank over Q by exact elimination
inline int rational_rank(std::vector<std::vector<boost::multiprecision::cpp_rational>> M) {
  int rank = 0;
  const std::size_t rows = M.size(), cols = rows ? M[0].size() : 0;
  for (std::size_t c = 0; c < cols && static_cast<std::size_t>(rank) < rows; ++c) {
    std::size_t piv = static_cast<std::size_t>(rank);
    while (piv < rows && M[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(M[piv], M[static_cast<std::size_t>(rank)]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == static_cast<std::size_t>(rank) || M[r][c] == 0) continue;
      const auto f = M[r][c] / M[static_cast<std::size_t>(rank)][c];
      for (std::size_t k = c; k < cols; ++k) M[r][k] -= f * M[static_cast<std::size_t>(rank)][k];
    }
    ++rank;
  }
  return rank;
}

// Betti numbers of a Lie algebra over Q with integer structure constants
// br[i][j] = sum_k c[i][j][k] e_k, via exterior forms on bitmasks.
inline std::vector<int> ce_betti_over_q(const std::vector<std::vector<std::vector<int>>>& c) {
  const int d = static_cast<int>(c.size());
  std::vector<std::vector<unsigned>> forms(static_cast<std::size_t>(d) + 1);
  for (unsigned m = 0; m < (1u << d); ++m) forms[static_cast<std::size_t>(__builtin_popcount(m))].push_back(m);
  std::vector<int> rk(static_cast<std::size_t>(d) + 2, 0);
  for (int k = 0; k < d; ++k) {
    const auto& in = forms[static_cast<std::size_t>(k)];
    const auto& out = forms[static_cast<std::size_t>(k) + 1];
    std::vector<std::vector<boost::multiprecision::cpp_rational>> M(out.size(),
                                                                    std::vector<boost::multiprecision::cpp_rational>(in.size()));
    for (std::size_t o = 0; o < out.size(); ++o) {
      std::vector<int> x;
      for (int b = 0; b < d; ++b)
        if (out[o] >> b & 1) x.push_back(b);
      // (dw)(x_0..x_k) = sum_{i<j} (-1)^{i+j} w([x_i, x_j], x_0..^..^..)
      for (int i = 0; i <= k; ++i)
        for (int j = i + 1; j <= k; ++j)
          for (int t = 0; t < d; ++t) {
            const int cc = c[static_cast<std::size_t>(x[i])][static_cast<std::size_t>(x[j])][static_cast<std::size_t>(t)];
            if (!cc) continue;
            std::vector<int> args = {t};
            for (int l = 0; l <= k; ++l)
              if (l != i && l != j) args.push_back(x[l]);
            // sort with sign
            int sign = (i + j) % 2 ? -1 : 1;
            bool dup = false;
            for (std::size_t a = 0; a < args.size(); ++a)
              for (std::size_t b = a + 1; b < args.size(); ++b) {
                if (args[a] == args[b]) dup = true;
                if (args[a] > args[b]) sign = -sign;
              }
            if (dup) continue;
            unsigned mask = 0;
            for (int a : args) mask |= 1u << a;
            const auto col = std::find(in.begin(), in.end(), mask) - in.begin();
            M[o][static_cast<std::size_t>(col)] += sign * cc;
          }
    }
    rk[static_cast<std::size_t>(k) + 1] = rational_rank(M);
  }
  std::vector<int> betti;
  for (int k = 0; k <= d; ++k)
    betti.push_back(static_cast<int>(forms[static_cast<std::size_t>(k)].size()) - rk[static_cast<std::size_t>(k) + 1] -
                    rk[static_cast<std::size_t>(k)]);
  return betti;
}

// gl_2 over Q in the basis E11, E12, E21, E22
inline std::vector<std::vector<std::vector<int>>> gl2_constants() {
  std::vector<std::vector<std::vector<int>>> c(4, std::vector<std::vector<int>>(4, std::vector<int>(4, 0)));
  auto E = [](int i, int j) { return 2 * i + j; };
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          if (j == k) c[E(i, j)][E(k, l)][E(i, l)] += 1;
          if (l == i) c[E(i, j)][E(k, l)][E(k, j)] -= 1;
        }
  return c;
}

}  // namespace oracle
