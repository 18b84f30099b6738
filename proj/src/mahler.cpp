#include "lazardlab/mahler.hpp"

#include "json.hpp"

namespace lazard::mahler {

using gauge::Rational;
using gauge::Value;

int digit_sum(const MultiIndex& a, i64 p) {
  int s = 0;
  for (int x : a)
    for (long long y = x; y > 0; y /= p) s += static_cast<int>(y % p);
  return s;
}

long long factorial_valuation(const MultiIndex& a, i64 p) {
  long long v = 0;
  for (int x : a)
    for (long long q = p; q <= x; q *= p) v += x / q;
  return v;
}

i64 binomial_mod(i64 x, int k, const Ring& R) {
  if (k < 0) return 0;
  if (k == 0) return R.reduce(1);
  if (x >= 0 && x < k) return 0;
  const i64 p = R.p();
  long long V = 0;
  i64 num = R.reduce(1), den = R.reduce(1);
  for (int j = 0; j < k; ++j) {
    i64 t = x - j;
    while (t % p == 0) {
      t /= p;
      ++V;
    }
    num = R.mul(num, R.reduce(t));
    i64 s = j + 1;
    while (s % p == 0) {
      s /= p;
      --V;
    }
    den = R.mul(den, R.reduce(s));
  }
  if (V >= R.N()) return 0;
  return R.mul(R.pow(static_cast<int>(V)), R.mul(num, R.inverse(den)));
}

std::vector<i64> binomial_row(i64 x, int K, const Ring& R) {
  std::vector<i64> out(static_cast<std::size_t>(K) + 1, 0);
  out[0] = R.reduce(1);
  const i64 p = R.p();
  long long V = 0;
  i64 unit = R.reduce(1);
  for (int k = 0; k < K; ++k) {
    i64 t = x - k;
    if (t == 0) break;  // binom(x, j) = 0 for j > x >= 0
    while (t % p == 0) {
      t /= p;
      ++V;
    }
    i64 s = k + 1;
    while (s % p == 0) {
      s /= p;
      --V;
    }
    unit = R.mul(R.mul(unit, R.reduce(t)), R.inverse(R.reduce(s)));
    out[static_cast<std::size_t>(k) + 1] = V >= R.N() ? 0 : R.mul(R.pow(static_cast<int>(V)), unit);
  }
  return out;
}

void mahler_invert(std::vector<i64>& data, const SimplexIndex& idx, std::size_t outer, std::size_t block,
                   const Ring& R) {
  const std::size_t n = idx.size();
  const int D = idx.D();
  std::vector<std::vector<i64>> C(static_cast<std::size_t>(D) + 1);
  for (int m = 0; m <= D; ++m) {
    C[m].assign(static_cast<std::size_t>(m) + 1, R.reduce(1));
    for (int k = 1; k < m; ++k) C[m][k] = R.add(C[m - 1][k - 1], C[m - 1][k]);
  }
  std::vector<i64> row(block);
  std::vector<i64> next(data.size());
  for (int axis = 0; axis < idx.d(); ++axis) {
    // positions along the axis line through each position
    std::vector<std::vector<std::size_t>> line(n);
    for (std::size_t k = 0; k < n; ++k) {
      MultiIndex b = idx[k];
      const int top = b[axis];
      for (int j = 0; j <= top; ++j) {
        b[axis] = j;
        line[k].push_back(idx.find(b));
      }
    }
    for (std::size_t o = 0; o < outer; ++o) {
      const std::size_t base = o * n * block;
      for (std::size_t k = 0; k < n; ++k) {
        std::fill(row.begin(), row.end(), 0);
        const int top = static_cast<int>(line[k].size()) - 1;
        for (int j = 0; j <= top; ++j) {
          i64 c = C[top][j];
          if ((top - j) % 2) c = R.neg(c);
          const i64* src = data.data() + base + line[k][j] * block;
          for (std::size_t t = 0; t < block; ++t)
            if (src[t]) row[t] = R.add(row[t], R.mul(c, src[t]));
        }
        std::copy(row.begin(), row.end(), next.begin() + static_cast<std::ptrdiff_t>(base + k * block));
      }
    }
    data.swap(next);
  }
}

i64 MahlerCoefficients::at(const MultiIndex& a) const {
  std::size_t k = index.find(a);
  return k == SimplexIndex::npos ? 0 : c[k];
}

MahlerCoefficients mahler_expand(const Samples& f) {
  const Ring& R = f.ring;
  SimplexIndex idx(f.d, f.D);
  std::vector<i64> vals(idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) {
    auto it = f.values.find(idx[k]);
    if (it == f.values.end()) fail(ErrorCode::MissingSample, "missing sample at " + multi_index_str(idx[k]));
    vals[k] = R.reduce(it->second);
  }
  // Pascal triangle mod p^N
  std::vector<std::vector<i64>> C(static_cast<std::size_t>(f.D) + 1);
  for (int n = 0; n <= f.D; ++n) {
    C[n].assign(static_cast<std::size_t>(n) + 1, R.reduce(1));
    for (int k = 1; k < n; ++k) C[n][k] = R.add(C[n - 1][k - 1], C[n - 1][k]);
  }
  for (int axis = 0; axis < f.d; ++axis) {
    std::vector<i64> next(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) {
      MultiIndex b = idx[k];
      const int top = b[axis];
      i64 acc = 0;
      for (int j = 0; j <= top; ++j) {
        b[axis] = j;
        i64 term = R.mul(C[top][j], vals[idx.find(b)]);
        acc = (top - j) % 2 ? R.sub(acc, term) : R.add(acc, term);
      }
      next[k] = acc;
    }
    vals.swap(next);
  }
  return {R, f.d, f.D, std::move(idx), std::move(vals)};
}

Evaluation mahler_evaluate(const MahlerCoefficients& c, const MultiIndex& x) {
  const Ring& R = c.ring;
  if (static_cast<int>(x.size()) != c.d) fail(ErrorCode::InvalidArgument, "point has the wrong dimension");
  Evaluation e;
  for (std::size_t k = 0; k < c.index.size(); ++k) {
    if (c.c[k] == 0) continue;
    const MultiIndex& a = c.index[k];
    i64 term = c.c[k];
    for (int i = 0; i < c.d && term != 0; ++i) term = R.mul(term, binomial_mod(x[i], a[i], R));
    e.value = R.add(e.value, term);
  }
  bool nonneg = true;
  for (int v : x) nonneg = nonneg && v >= 0;
  e.in_window = nonneg && total_degree(x) <= c.D;
  if (!e.in_window)
    e.warning = "point " + multi_index_str(x) + " lies outside the sample window |x| <= " + std::to_string(c.D) +
                "; value ignores the truncated tail";
  return e;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::AnalyticEvidence: return "AnalyticEvidence";
    case Verdict::NotAnalyticEvidence: return "NotAnalyticEvidence";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

AmiceProfile amice_profile(const MahlerCoefficients& c, const gauge::Radius& h, int margin) {
  const Ring& R = c.ring;
  const i64 p = R.p();
  AmiceProfile prof;
  prof.radius = h;
  prof.t.resize(c.index.size());
  prof.lower_bound.resize(c.index.size());
  for (std::size_t k = 0; k < c.index.size(); ++k) {
    const MultiIndex& a = c.index[k];
    const int v = R.valuation(c.c[k]);
    prof.lower_bound[k] = c.c[k] == 0;
    prof.t[k] = Value{Rational(v) + Rational(digit_sum(a, p), p - 1), Rational(-total_degree(a), p - 1), false};
  }
  const int early_hi = c.D / 3;
  const int late_lo = (2 * c.D + 2) / 3;
  Value early_all = Value::inf(), early_exact = Value::inf(), late_all = Value::inf(), late_exact = Value::inf();
  for (int deg = 0; deg <= c.D; ++deg) {
    Value m = Value::inf();
    for (std::size_t k = c.index.shell_begin(deg); k < c.index.shell_end(deg); ++k) {
      m = gauge::min(m, prof.t[k], h);
      if (deg <= early_hi) {
        early_all = gauge::min(early_all, prof.t[k], h);
        if (!prof.lower_bound[k]) early_exact = gauge::min(early_exact, prof.t[k], h);
      }
      if (deg >= late_lo) {
        late_all = gauge::min(late_all, prof.t[k], h);
        if (!prof.lower_bound[k]) late_exact = gauge::min(late_exact, prof.t[k], h);
      }
    }
    prof.shell_min.push_back(m);
  }
  prof.early_min = early_all;
  prof.late_min = late_all;
  // lower bounds may only make t larger: they support an analytic verdict
  // against an exact early minimum, and never a non-analytic one
  const Value early_ref = early_exact.infinite ? early_all : early_exact;
  if (!early_ref.infinite && gauge::compare(late_all, early_ref + Value{Rational(margin), 0, false}, h) >= 0)
    prof.verdict = Verdict::AnalyticEvidence;
  else if (!late_exact.infinite && gauge::compare(late_exact, early_all, h) <= 0)
    prof.verdict = Verdict::NotAnalyticEvidence;
  else
    prof.verdict = Verdict::Inconclusive;
  return prof;
}

Samples samples_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorCode::Parse, std::string("sample file: ") + e.what());
  }
  try {
    Samples s{Ring(j.at("p").get<i64>(), j.at("N").get<int>()), j.at("d").get<int>(), j.at("D").get<int>(), {}};
    for (const auto& e : j.at("samples")) {
      MultiIndex x = e.at("x").get<MultiIndex>();
      if (static_cast<int>(x.size()) != s.d) fail(ErrorCode::Parse, "sample point has the wrong dimension");
      const auto& v = e.at("v");
      s.values[x] = v.is_string() ? padic::parse_digits(s.ring, v.get<std::string>()) : s.ring.reduce(v.get<i64>());
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, std::string("sample file: ") + e.what());
  }
}

}  // namespace lazard::mahler
