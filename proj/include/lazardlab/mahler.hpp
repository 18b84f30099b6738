#pragma once

// Mahler expansions on Z_p^d by exact finite differences, and the Amice
// criterion for h-analyticity read off from coefficient valuations.

#include <map>
#include <string>
#include <vector>

#include "lazardlab/gauge.hpp"
#include "lazardlab/multiindex.hpp"
#include "lazardlab/padic.hpp"

namespace lazard::mahler {

using padic::i64;
using padic::Ring;

/// s(alpha): sum of the base-p digits of all entries.
int digit_sum(const MultiIndex& a, i64 p);
/// v_p(alpha!) = sum_i v_p(alpha_i!) by Legendre's formula.
long long factorial_valuation(const MultiIndex& a, i64 p);
/// binom(x, k) mod p^N for an integer x (any sign). Exact when x is known
/// modulo p^{N + v_p(k!)}.
i64 binomial_mod(i64 x, int k, const Ring& R);
/// binom(x, k) mod p^N for k = 0..K.
std::vector<i64> binomial_row(i64 x, int K, const Ring& R);
/// Inverts f(beta) -> Delta^beta f(0) in place over a simplex index. The data
/// is laid out as [outer][position][block]; every block is transformed.
void mahler_invert(std::vector<i64>& data, const SimplexIndex& idx, std::size_t outer, std::size_t block,
                   const Ring& R);

struct MahlerCoefficients {
  Ring ring;
  int d = 1;
  int D = 0;
  SimplexIndex index;
  std::vector<i64> c;  // c[index.find(alpha)]

  i64 at(const MultiIndex& a) const;
};

/// Function samples f(x) mod p^N at integer points.
struct Samples {
  Ring ring;
  int d = 1;
  int D = 0;
  std::map<MultiIndex, i64> values;
};

/// c_alpha = sum_{beta <= alpha} (-1)^{|alpha - beta|} binom(alpha, beta) f(beta).
/// Needs f at every beta with |beta| <= D; throws MissingSample otherwise.
MahlerCoefficients mahler_expand(const Samples& f);

struct Evaluation {
  i64 value = 0;
  bool in_window = true;  // false: the truncated tail may change the value
  std::string warning;
};

Evaluation mahler_evaluate(const MahlerCoefficients& c, const MultiIndex& x);

enum class Verdict { AnalyticEvidence, NotAnalyticEvidence, Inconclusive };
const char* verdict_name(Verdict v);

struct AmiceProfile {
  gauge::Radius radius;
  std::vector<gauge::Value> t;         // per simplex position
  std::vector<bool> lower_bound;       // true where c_alpha = 0 (v >= N)
  std::vector<gauge::Value> shell_min; // per degree
  gauge::Value early_min, late_min;
  Verdict verdict = Verdict::Inconclusive;
};

/// t_alpha = v(c_alpha) - (p^{-h}|alpha| - s(alpha))/(p - 1). The verdict
/// compares the minimum over shells |alpha| in [2D/3, D] against the minimum
/// over [0, D/3]: AnalyticEvidence when late - early >= margin,
/// NotAnalyticEvidence when late <= early and the late minimum is attained
/// at a nonzero coefficient, Inconclusive otherwise.
AmiceProfile amice_profile(const MahlerCoefficients& c, const gauge::Radius& h, int margin = 2);

/// JSON sample file: {"p", "d", "D", "N", "samples": [{"x": [..], "v": "digits"}]}.
Samples samples_from_json(const std::string& text);

}  // namespace lazard::mahler
