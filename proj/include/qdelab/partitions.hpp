#pragma once
// Integer partitions: generation, dominance, conjugation.

#include <algorithm>
#include <string>
#include <vector>

namespace qdelab {

using Partition = std::vector<int>;  // weakly decreasing, positive parts

inline int part_size(const Partition& p) {
  int s = 0;
  for (int x : p) s += x;
  return s;
}

// All partitions of n, in reverse-lexicographic order starting from (n).
inline std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  Partition cur;
  auto rec = [&](auto&& self, int rem, int maxpart) -> void {
    if (rem == 0) {
      out.push_back(cur);
      return;
    }
    for (int k = std::min(rem, maxpart); k >= 1; --k) {
      cur.push_back(k);
      self(self, rem - k, k);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

inline Partition conjugate(const Partition& p) {
  Partition c;
  if (p.empty()) return c;
  c.resize(p[0], 0);
  for (int row : p)
    for (int j = 0; j < row; ++j) c[j]++;
  return c;
}

// mu dominated by la (both partitions of the same size):
// sum of first k parts of mu <= same for la, all k.
inline bool dominates(const Partition& la, const Partition& mu) {
  int sa = 0, sb = 0;
  std::size_t k = std::max(la.size(), mu.size());
  for (std::size_t i = 0; i < k; ++i) {
    sa += i < la.size() ? la[i] : 0;
    sb += i < mu.size() ? mu[i] : 0;
    if (sb > sa) return false;
  }
  return true;
}

inline std::string part_str(const Partition& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p[i]);
  }
  s += ")";
  return s;
}

}  // namespace qdelab
