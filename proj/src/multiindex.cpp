#include "lazardlab/multiindex.hpp"

namespace lazard {

namespace {

void shells(int d, int remaining, int pos, MultiIndex& cur, std::vector<MultiIndex>& out) {
  if (pos == d - 1) {
    cur[static_cast<std::size_t>(pos)] = remaining;
    out.push_back(cur);
    return;
  }
  for (int v = remaining; v >= 0; --v) {
    cur[static_cast<std::size_t>(pos)] = v;
    shells(d, remaining - v, pos + 1, cur, out);
  }
}

}  // namespace

SimplexIndex::SimplexIndex(int d, int D) : d_(d), D_(D) {
  MultiIndex cur(static_cast<std::size_t>(d), 0);
  for (int k = 0; k <= D; ++k) {
    shell_start_.push_back(list_.size());
    if (d == 0) {
      if (k == 0) list_.push_back({});
      continue;
    }
    shells(d, k, 0, cur, list_);
  }
  shell_start_.push_back(list_.size());
  for (std::size_t i = 0; i < list_.size(); ++i) pos_.emplace(list_[i], i);
}

std::size_t SimplexIndex::find(const MultiIndex& a) const {
  auto it = pos_.find(a);
  return it == pos_.end() ? npos : it->second;
}

std::string multi_index_str(const MultiIndex& a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(a[i]);
  }
  return s + ")";
}

}  // namespace lazard
