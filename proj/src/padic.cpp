#include "lazardlab/padic.hpp"

#include <algorithm>
#include <numeric>

namespace lazard {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UnsupportedPrime: return "UnsupportedPrime";
    case ErrorCode::NotInGroup: return "NotInGroup";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::CompositionNonzero: return "CompositionNonzero";
    case ErrorCode::ResourceCap: return "ResourceCap";
    case ErrorCode::NotStabilized: return "NotStabilized";
    case ErrorCode::NotUnimodular: return "NotUnimodular";
    case ErrorCode::NotProUnipotent: return "NotProUnipotent";
    case ErrorCode::MissingSample: return "MissingSample";
    case ErrorCode::TensorMissing: return "TensorMissing";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace lazard

namespace lazard::padic {

Ring::Ring(i64 p, int N) : p_(p), N_(N) {
  if (p < 2) fail(ErrorCode::InvalidArgument, "prime must be >= 2");
  if (N < 1) fail(ErrorCode::InvalidArgument, "precision must be >= 1");
  pows_.assign(1, 1);
  i64 m = 1;
  for (int e = 0; e < N; ++e) {
    if (m > (static_cast<i64>(1) << 62) / p)
      fail(ErrorCode::PrecisionExhausted, "p^N does not fit in 62 bits");
    m *= p;
    pows_.push_back(m);
  }
  mod_ = m;
  small_ = mod_ < (static_cast<i64>(1) << 31);
}

int Ring::valuation(i64 x) const {
  if (x == 0) return N_;
  int v = 0;
  while (x % p_ == 0) {
    x /= p_;
    ++v;
  }
  return v;
}

i64 Ring::inverse(i64 unit) const {
  i64 a = reduce(unit);
  if (a % p_ == 0) fail(ErrorCode::InvalidArgument, "inverse of a non-unit");
  // extended Euclid on (a, mod)
  __int128 old_r = a, r = mod_, old_s = 1, s = 0;
  while (r != 0) {
    __int128 q = old_r / r;
    __int128 t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  return reduce(static_cast<i64>(old_s % mod_));
}

std::pair<int, i64> Ring::split(i64 x) const {
  if (x == 0) return {N_, 1};
  int v = 0;
  while (x % p_ == 0) {
    x /= p_;
    ++v;
  }
  return {v, x};
}

i64 parse_digits(const Ring& ring, const std::string& digits) {
  if (digits.empty()) fail(ErrorCode::Parse, "empty digit string");
  bool negative = false;
  std::size_t start = 0;
  if (digits[0] == '-') {
    negative = true;
    start = 1;
  }
  i64 acc = 0;
  for (std::size_t k = start; k < digits.size(); ++k) {
    char ch = digits[k];
    int d;
    if (ch >= '0' && ch <= '9') d = ch - '0';
    else if (ch >= 'a' && ch <= 'z') d = ch - 'a' + 10;
    else fail(ErrorCode::Parse, "bad digit '" + std::string(1, ch) + "' in \"" + digits + "\"");
    if (d >= ring.p()) fail(ErrorCode::Parse, "digit out of range for p in \"" + digits + "\"");
    acc = ring.add(ring.mul(acc, ring.reduce(ring.p())), d);
  }
  return negative ? ring.neg(acc) : acc;
}

std::string format_digits(const Ring& ring, i64 residue) {
  if (residue == 0) return "0";
  std::string out;
  i64 x = residue;
  while (x > 0) {
    int d = static_cast<int>(x % ring.p());
    out.push_back(d < 10 ? static_cast<char>('0' + d) : static_cast<char>('a' + d - 10));
    x /= ring.p();
  }
  std::reverse(out.begin(), out.end());
  return out;
}

int valuation(const PadicScalar& x) { return x.ring.valuation(x.residue); }

// ---------------------------------------------------------------------------
// PNMatrix

PNMatrix::PNMatrix(const Ring& ring, std::size_t rows, std::size_t cols, std::vector<i64> data)
    : ring_(ring), rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) fail(ErrorCode::InvalidArgument, "matrix data size mismatch");
  for (auto& x : data_) x = ring_.reduce(x);
}

PNMatrix PNMatrix::identity(const Ring& ring, std::size_t n) {
  PNMatrix I(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) I(i, i) = ring.reduce(1);
  return I;
}

PNMatrix PNMatrix::operator*(const PNMatrix& o) const {
  if (cols_ != o.rows_) fail(ErrorCode::InvalidArgument, "matrix shape mismatch in product");
  PNMatrix out(ring_, rows_, o.cols_);
  const i64 mod = ring_.modulus();
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      i64 a = (*this)(i, k);
      if (a == 0) continue;
      const i64* src = o.data_.data() + k * o.cols_;
      i64* dst = out.data_.data() + i * o.cols_;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        if (src[j] == 0) continue;
        i64 s = dst[j] + ring_.mul(a, src[j]);
        dst[j] = s >= mod ? s - mod : s;
      }
    }
  }
  return out;
}

PNMatrix PNMatrix::operator+(const PNMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorCode::InvalidArgument, "shape mismatch in sum");
  PNMatrix out = *this;
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = ring_.add(data_[k], o.data_[k]);
  return out;
}

PNMatrix PNMatrix::operator-(const PNMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorCode::InvalidArgument, "shape mismatch in difference");
  PNMatrix out = *this;
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = ring_.sub(data_[k], o.data_[k]);
  return out;
}

PNMatrix PNMatrix::transpose() const {
  PNMatrix out(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

PNMatrix PNMatrix::scaled(i64 c) const {
  PNMatrix out = *this;
  c = ring_.reduce(c);
  for (auto& x : out.data_) x = ring_.mul(x, c);
  return out;
}

bool PNMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](i64 x) { return x == 0; });
}

PNMatrix PNMatrix::coarsen(int e) const {
  Ring r = ring_.coarsen(e);
  PNMatrix out(r, rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = data_[k] % r.modulus();
  return out;
}

PNMatrix PNMatrix::row_block(std::size_t r0, std::size_t r1) const {
  PNMatrix out(ring_, r1 - r0, cols_);
  std::copy(data_.begin() + static_cast<std::ptrdiff_t>(r0 * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>(r1 * cols_), out.data_.begin());
  return out;
}

void PNMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  std::swap_ranges(data_.begin() + static_cast<std::ptrdiff_t>(a * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((a + 1) * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>(b * cols_));
}

void PNMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void PNMatrix::add_row_multiple(std::size_t dst, std::size_t src, i64 c) {
  c = ring_.reduce(c);
  if (c == 0) return;
  const i64 mod = ring_.modulus();
  i64* d = data_.data() + dst * cols_;
  const i64* s = data_.data() + src * cols_;
  for (std::size_t j = 0; j < cols_; ++j) {
    if (s[j] == 0) continue;
    i64 v = d[j] + ring_.mul(c, s[j]);
    d[j] = v >= mod ? v - mod : v;
  }
}

void PNMatrix::scale_row(std::size_t r, i64 c) {
  c = ring_.reduce(c);
  for (auto& x : row(r)) x = ring_.mul(x, c);
}

// ---------------------------------------------------------------------------
// ModuleInvariants

ModuleInvariants ModuleInvariants::from_exponents(std::vector<int> exps, int N) {
  ModuleInvariants m;
  for (int e : exps)
    if (e > 0) m.divisor_exponents.push_back(e);
  std::sort(m.divisor_exponents.begin(), m.divisor_exponents.end());
  m.full_rank_count = static_cast<int>(std::count(m.divisor_exponents.begin(), m.divisor_exponents.end(), N));
  return m;
}

long long ModuleInvariants::length() const {
  return std::accumulate(divisor_exponents.begin(), divisor_exponents.end(), 0LL);
}

// ---------------------------------------------------------------------------
// Howell form

namespace {

struct PivotInfo {
  std::size_t row;
  std::size_t col;
  int exponent;
};

// Row reduction to Howell form on W; applies every row operation to U too
// when U is non-null. W must have at least (nonzero rows + cols) rows.
std::vector<PivotInfo> howell_in_place(PNMatrix& W, PNMatrix* U) {
  const Ring& R = W.ring();
  const std::size_t n = W.rows();
  const std::size_t m = W.cols();
  std::vector<PivotInfo> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m && r < n; ++c) {
    std::size_t best = n;
    int best_v = R.N();
    for (std::size_t i = r; i < n; ++i) {
      i64 x = W(i, c);
      if (x == 0) continue;
      int v = R.valuation(x);
      if (v < best_v) {
        best_v = v;
        best = i;
        if (v == 0) break;
      }
    }
    if (best == n) continue;
    W.swap_rows(best, r);
    if (U) U->swap_rows(best, r);
    auto [k, unit] = R.split(W(r, c));
    i64 uinv = R.inverse(unit);
    W.scale_row(r, uinv);
    if (U) U->scale_row(r, uinv);
    const i64 pk = R.pow(k);
    for (std::size_t i = r + 1; i < n; ++i) {
      i64 x = W(i, c);
      if (x == 0) continue;
      i64 q = x / pk;
      W.add_row_multiple(i, r, R.neg(q));
      if (U) U->add_row_multiple(i, r, R.neg(q));
    }
    if (k > 0) {
      // annihilator row p^{N-k} * row_r has a zero in column c
      const i64 ann = R.pow(R.N() - k);
      bool nonzero = false;
      for (std::size_t j = c + 1; j < m && !nonzero; ++j) nonzero = R.mul(ann, W(r, j)) != 0;
      if (nonzero) {
        std::size_t z = n;
        for (std::size_t i = r + 1; i < n; ++i) {
          auto row = W.row(i);
          if (std::all_of(row.begin(), row.end(), [](i64 x) { return x == 0; })) {
            z = i;
            break;
          }
        }
        if (z == n) fail(ErrorCode::Internal, "Howell form: no free row for annihilator");
        W.add_row_multiple(z, r, ann);
        if (U) U->add_row_multiple(z, r, ann);
      }
    }
    pivots.push_back({r, c, k});
    ++r;
  }
  // reduce entries above pivots into [0, p^k)
  for (const auto& pv : pivots) {
    const i64 pk = R.pow(pv.exponent);
    for (std::size_t i = 0; i < pv.row; ++i) {
      i64 q = W(i, pv.col) / pk;
      if (q == 0) continue;
      W.add_row_multiple(i, pv.row, R.neg(q));
      if (U) U->add_row_multiple(i, pv.row, R.neg(q));
    }
  }
  return pivots;
}

PNMatrix padded(const PNMatrix& M, std::size_t extra) {
  PNMatrix W(M.ring(), M.rows() + extra, M.cols());
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) W(i, j) = M(i, j);
  return W;
}

}  // namespace

HowellResult howell_form(const PNMatrix& M) {
  PNMatrix W = padded(M, M.cols());
  PNMatrix U = PNMatrix::identity(M.ring(), W.rows());
  howell_in_place(W, &U);
  return {std::move(W), std::move(U)};
}

PNMatrix howell_rows(const PNMatrix& M) {
  // drop zero rows first; the Howell form needs at most `cols` free rows
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < M.rows(); ++i) {
    auto row = M.row(i);
    if (std::any_of(row.begin(), row.end(), [](i64 x) { return x != 0; })) keep.push_back(i);
  }
  PNMatrix W(M.ring(), keep.size() + M.cols(), M.cols());
  for (std::size_t k = 0; k < keep.size(); ++k)
    for (std::size_t j = 0; j < M.cols(); ++j) W(k, j) = M(keep[k], j);
  auto pivots = howell_in_place(W, nullptr);
  return W.row_block(0, pivots.size());
}

bool in_row_span(const PNMatrix& M, std::span<const i64> v) {
  const Ring& R = M.ring();
  PNMatrix H = howell_rows(M);
  std::vector<i64> w(v.begin(), v.end());
  for (auto& x : w) x = R.reduce(x);
  std::size_t c = 0;
  for (std::size_t r = 0; r < H.rows(); ++r) {
    while (c < H.cols() && H(r, c) == 0) ++c;
    const i64 pivot = H(r, c);
    const i64 rem = w[c] % pivot;
    if (rem != 0) return false;
    const i64 q = w[c] / pivot;
    for (std::size_t j = c; j < H.cols(); ++j) w[j] = R.sub(w[j], R.mul(q, H(r, j)));
  }
  return std::all_of(w.begin(), w.end(), [](i64 x) { return x == 0; });
}

// ---------------------------------------------------------------------------
// Smith form

namespace {

struct SmithWork {
  std::vector<int> diag;
  PNMatrix B;
  PNMatrix Binv;
};

SmithWork smith_impl(PNMatrix W, bool track_B, bool track_Binv) {
  const Ring& R = W.ring();
  const std::size_t n = W.rows();
  const std::size_t m = W.cols();
  const std::size_t steps = std::min(n, m);
  SmithWork out;
  if (track_B) out.B = PNMatrix::identity(R, m);
  if (track_Binv) out.Binv = PNMatrix::identity(R, m);
  out.diag.assign(steps, R.N());
  const i64 mod = R.modulus();
  for (std::size_t t = 0; t < steps; ++t) {
    // minimal valuation; ties go to the leftmost column, then the lowest row
    std::size_t bi = n, bj = m;
    int bv = R.N();
    for (std::size_t j = t; j < m && bv > 0; ++j) {
      for (std::size_t i = t; i < n; ++i) {
        i64 x = W(i, j);
        if (x == 0) continue;
        if (bv > 0 && x % R.p() != 0) {
          bi = i, bj = j, bv = 0;
          break;
        }
        int v = R.valuation(x);
        if (v < bv) bi = i, bj = j, bv = v;
      }
    }
    if (bi == n) break;
    W.swap_rows(bi, t);
    if (bj != t) {
      W.swap_cols(bj, t);
      if (track_B) out.B.swap_cols(bj, t);
      if (track_Binv) out.Binv.swap_rows(bj, t);
    }
    auto [k, unit] = R.split(W(t, t));
    W.scale_row(t, R.inverse(unit));
    const i64 pk = R.pow(k);
    // clear column t below the pivot
    const i64* prow = &W(t, 0);
    for (std::size_t i = t + 1; i < n; ++i) {
      i64 x = W(i, t);
      if (x == 0) continue;
      const i64 q = R.neg(x / pk);
      i64* drow = &W(i, 0);
      for (std::size_t j = t; j < m; ++j) {
        if (prow[j] == 0) continue;
        i64 s = drow[j] + R.mul(q, prow[j]);
        drow[j] = s >= mod ? s - mod : s;
      }
    }
    // clear row t right of the pivot (only entry (t, j) changes in W)
    for (std::size_t j = t + 1; j < m; ++j) {
      i64 x = W(t, j);
      if (x == 0) continue;
      const i64 q = x / pk;
      W(t, j) = 0;
      if (track_B) {
        for (std::size_t i = 0; i < m; ++i) out.B(i, j) = R.sub(out.B(i, j), R.mul(q, out.B(i, t)));
      }
      if (track_Binv) out.Binv.add_row_multiple(t, j, q);
    }
    out.diag[t] = k;
  }
  return out;
}

}  // namespace

std::vector<int> smith_invariants(const PNMatrix& M) {
  auto w = smith_impl(M, false, false);
  std::sort(w.diag.begin(), w.diag.end());
  return w.diag;
}

SmithResult smith_with_column_transform(const PNMatrix& M) {
  auto w = smith_impl(M, false, true);
  return {std::move(w.diag), std::move(w.Binv)};
}

PNMatrix kernel_basis(const PNMatrix& M) {
  const Ring& R = M.ring();
  auto w = smith_impl(M, true, false);
  const std::size_t n = M.cols();
  std::vector<std::size_t> gens;
  std::vector<i64> scale;
  for (std::size_t i = 0; i < n; ++i) {
    int e = i < w.diag.size() ? w.diag[i] : R.N();
    if (e == 0) continue;
    gens.push_back(i);
    scale.push_back(R.pow(R.N() - e));
  }
  PNMatrix K(R, n, gens.size());
  for (std::size_t g = 0; g < gens.size(); ++g)
    for (std::size_t r = 0; r < n; ++r) K(r, g) = R.mul(w.B(r, gens[g]), R.reduce(scale[g]));
  return K;
}

ModuleInvariants cokernel_invariants(const PNMatrix& relations) {
  const Ring& R = relations.ring();
  auto diag = smith_invariants(relations);
  std::vector<int> exps(diag.begin(), diag.end());
  for (std::size_t i = diag.size(); i < relations.rows(); ++i) exps.push_back(R.N());
  return ModuleInvariants::from_exponents(std::move(exps), R.N());
}

ModuleInvariants homology_at(const PNMatrix& d_in, const PNMatrix& d_out) {
  const Ring& R = d_out.rows() > 0 || d_out.cols() > 0 ? d_out.ring() : d_in.ring();
  const std::size_t n = d_out.cols();
  if (d_in.rows() != n) fail(ErrorCode::InvalidArgument, "homology_at: shapes do not chain");
  if (d_out.rows() > 0 && d_in.cols() > 0 && !(d_out * d_in).is_zero())
    fail(ErrorCode::CompositionNonzero, "homology_at: d_out * d_in != 0");
  auto sm = smith_with_column_transform(d_out);
  std::vector<int> e(n, R.N());
  for (std::size_t i = 0; i < sm.diag_exponents.size(); ++i) e[i] = sm.diag_exponents[i];
  PNMatrix Z = d_in.cols() > 0 ? sm.B_inverse * d_in : PNMatrix(R, n, 0);
  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < n; ++i)
    if (e[i] > 0) live.push_back(i);
  const std::size_t k = live.size();
  PNMatrix rel(R, k, k + d_in.cols());
  for (std::size_t a = 0; a < k; ++a) {
    const std::size_t i = live[a];
    rel(a, a) = R.pow(e[i]) % R.modulus();
    const i64 div = R.pow(R.N() - e[i]);
    for (std::size_t c = 0; c < d_in.cols(); ++c) {
      i64 z = Z(i, c);
      if (z % div != 0) fail(ErrorCode::CompositionNonzero, "homology_at: image not inside kernel");
      rel(a, k + c) = z / div;
    }
  }
  return cokernel_invariants(rel);
}

bool solve(const PNMatrix& A, std::span<const i64> b, std::vector<i64>& x) {
  const Ring& R = A.ring();
  PNMatrix aug(R, A.rows(), A.cols() + 1);
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < A.cols(); ++j) aug(i, j) = A(i, j);
    aug(i, A.cols()) = R.neg(R.reduce(b[i]));
  }
  PNMatrix K = kernel_basis(aug);
  const std::size_t last = A.cols();
  for (std::size_t g = 0; g < K.cols(); ++g) {
    i64 t = K(last, g);
    if (t % R.p() == 0) continue;
    i64 inv = R.inverse(t);
    x.assign(A.cols(), 0);
    for (std::size_t j = 0; j < A.cols(); ++j) x[j] = R.mul(K(j, g), inv);
    return true;
  }
  // a combination of non-unit last coordinates can still reach 1 only if
  // some generator has a unit there; none does
  return false;
}

}  // namespace lazard::padic
