#ifndef CYCLIC_BIGRADED_HPP
#define CYCLIC_BIGRADED_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "combinatorics.hpp"
#include "linalg.hpp"

namespace cyclic {

/// (row n, internal degree m)
using Bideg = std::pair<int, int>;

inline std::string to_string(const Bideg& b) {
  return "(" + std::to_string(b.first) + "," + std::to_string(b.second) + ")";
}
inline std::string tuple_string(const IndexTuple& t) {
  std::string s = "(";
  for (size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + ")";
}

/** \brief Bigraded space X_{n,m} truncated to total degree n + m <= truncation. */
struct BigradedSpace {
  std::map<Bideg, int> dims;
  int truncation = 0;

  int dim(const Bideg& b) const {
    auto it = dims.find(b);
    return it == dims.end() ? 0 : it->second;
  }
  bool in_window(const Bideg& b) const { return b.first >= 0 && b.first + b.second <= truncation; }
  /// Nonzero bidegrees in row n.
  std::vector<Bideg> row(int n) const {
    std::vector<Bideg> r;
    for (auto& [b, d] : dims)
      if (b.first == n && d > 0) r.push_back(b);
    return r;
  }
  int max_row() const {
    int r = -1;
    for (auto& [b, d] : dims)
      if (d > 0) r = std::max(r, b.first);
    return r;
  }
  friend bool operator==(const BigradedSpace&, const BigradedSpace&) = default;
};

/** \brief Homogeneous map of bidegree `shift`, stored blockwise by source bidegree; absent blocks are zero. */
template <class K>
struct BigradedMap {
  Bideg shift{0, 0};
  std::map<Bideg, Matrix<K>> blocks;

  const Matrix<K>* block(const Bideg& b) const {
    auto it = blocks.find(b);
    return it == blocks.end() ? nullptr : &it->second;
  }
  Bideg target_of(const Bideg& b) const { return {b.first + shift.first, b.second + shift.second}; }
  void set(const Bideg& b, Matrix<K> m) {
    if (m.is_zero()) blocks.erase(b);
    else blocks[b] = std::move(m);
  }
  void add(const Bideg& b, const Matrix<K>& m) {
    if (m.is_zero()) return;
    auto it = blocks.find(b);
    if (it == blocks.end()) blocks.emplace(b, m);
    else {
      it->second += m;
      if (it->second.is_zero()) blocks.erase(it);
    }
  }
  bool is_zero() const { return blocks.empty(); }
  friend bool operator==(const BigradedMap& a, const BigradedMap& b) {
    return a.shift == b.shift && a.blocks == b.blocks;
  }
};

template <class K>
using Components = std::map<IndexTuple, BigradedMap<K>>;

/// All index tuples of length 0..max_len with entries in [0, n].
inline std::vector<IndexTuple> tuples_on_row(int n, int max_len) {
  std::vector<IndexTuple> out;
  for (int mask = 0; mask < (1 << (n + 1)); ++mask) {
    IndexTuple t;
    for (int i = 0; i <= n; ++i)
      if (mask >> i & 1) t.push_back(i);
    if (static_cast<int>(t.size()) <= max_len) out.push_back(t);
  }
  std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.size() != b.size() ? a.size() < b.size() : a < b; });
  return out;
}

/// Zero matrix of the right shape between two bidegrees.
template <class K>
Matrix<K> zero_block(const BigradedSpace& tgt, const Bideg& t, const BigradedSpace& src, const Bideg& s) {
  return Matrix<K>(tgt.dim(t), src.dim(s));
}

}  // namespace cyclic

#endif
