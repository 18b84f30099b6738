#include "lazardlab/pairing.hpp"

namespace lazard::pairing {

TruncatedTate::TruncatedTate(const Ring& ring, int D) : ring_(ring), D_(D) {
  if (D < 0) fail(ErrorCode::InvalidArgument, "window must be nonnegative");
  a_.assign(2 * static_cast<std::size_t>(D) + 1, 0);
}

TruncatedTate TruncatedTate::monomial(const Ring& ring, int D, int n, i64 c) {
  TruncatedTate t(ring, D);
  t.set(n, c);
  return t;
}

i64 TruncatedTate::at(int n) const {
  if (n < -D_ || n > D_) return 0;
  return a_[static_cast<std::size_t>(n + D_)];
}

void TruncatedTate::set(int n, i64 v) {
  if (n < -D_ || n > D_) fail(ErrorCode::InvalidArgument, "exponent " + std::to_string(n) + " outside the window");
  a_[static_cast<std::size_t>(n + D_)] = ring_.reduce(v);
}

bool TruncatedTate::tate() const {
  for (int n = -D_; n < 0; ++n)
    if (at(n)) return false;
  return true;
}

bool TruncatedTate::anti_tate() const {
  for (int n = 0; n <= D_; ++n)
    if (at(n)) return false;
  return true;
}

TruncatedTate TruncatedTate::operator+(const TruncatedTate& o) const {
  if (o.D_ != D_ || !(o.ring_ == ring_)) fail(ErrorCode::InvalidArgument, "windows differ");
  TruncatedTate r = *this;
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = ring_.add(a_[k], o.a_[k]);
  return r;
}

i64 residue_pair(const TruncatedTate& f, const TruncatedTate& g) {
  if (!f.anti_tate()) fail(ErrorCode::InvalidArgument, "first argument must be supported in negative degrees");
  if (!g.tate()) fail(ErrorCode::InvalidArgument, "second argument must be supported in nonnegative degrees");
  const Ring& R = f.ring();
  i64 s = 0;
  for (int m = 0; m <= g.D(); ++m) s = R.add(s, R.mul(f.at(-m - 1), R.reduce(g.at(m))));
  return s;
}

PNMatrix gram_matrix(const Ring& ring, int D, const std::vector<int>& perm) {
  PNMatrix G(ring, static_cast<std::size_t>(D) + 1, static_cast<std::size_t>(D) + 1);
  // T^{-n-1} needs a window of D + 1
  for (int n = 0; n <= D; ++n)
    for (int m = 0; m <= D; ++m) {
      const int e = perm.empty() ? m : perm[static_cast<std::size_t>(m)];
      G(static_cast<std::size_t>(n), static_cast<std::size_t>(m)) = residue_pair(
          TruncatedTate::monomial(ring, D + 1, -n - 1), TruncatedTate::monomial(ring, D + 1, e));
    }
  return G;
}

i64 banach_smith_pair(const Ring& ring, const std::map<std::size_t, i64>& x, const std::vector<i64>& y,
                      std::size_t window) {
  i64 s = 0;
  for (const auto& [i, v] : x) {
    if (i >= window || i >= y.size()) fail(ErrorCode::InvalidArgument, "support outside the window");
    s = ring.add(s, ring.mul(ring.reduce(v), ring.reduce(y[i])));
  }
  return s;
}

bool window_perfect(const Ring& ring, const std::vector<std::vector<i64>>& ys, std::size_t window) {
  if (ys.size() != window) return false;
  PNMatrix P(ring, window, window);
  for (std::size_t j = 0; j < window; ++j)
    for (std::size_t i = 0; i < window; ++i) P(i, j) = banach_smith_pair(ring, {{i, 1}}, ys[j], window);
  for (int e : padic::smith_invariants(P))
    if (e != 0) return false;
  return true;
}

}  // namespace lazard::pairing
