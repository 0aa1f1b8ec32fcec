#ifndef CYCLIC_COMBINATORICS_HPP
#define CYCLIC_COMBINATORICS_HPP

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "error.hpp"

namespace cyclic {

/// Strictly increasing sequence of nonnegative integers.
using IndexTuple = std::vector<int>;

inline bool is_index_tuple(const IndexTuple& t) {
  for (size_t i = 0; i < t.size(); ++i)
    if (t[i] < 0 || (i > 0 && t[i] <= t[i - 1])) return false;
  return true;
}

/// One-line notation: perm[a] is the position of the tuple placed at slot a.
using Permutation = std::vector<int>;

inline int inversions(const std::vector<int>& s) {
  int n = 0;
  for (size_t a = 0; a < s.size(); ++a)
    for (size_t b = a + 1; b < s.size(); ++b)
      if (s[a] > s[b]) ++n;
  return n;
}

inline int permutation_sign(const Permutation& p) { return inversions(p) % 2 == 0 ? 1 : -1; }

/// Hat operation on a rearranged tuple, split after the first m entries.
template <class T, class Less, class Lower>
std::vector<T> hat_generic(const std::vector<T>& arranged, int m, Less less, Lower lower) {
  std::vector<T> out = arranged;
  for (int a = 0; a < m; ++a) {
    int smaller = 0;
    for (size_t b = a + 1; b < arranged.size(); ++b)
      if (less(arranged[b], arranged[a])) ++smaller;
    out[a] = lower(arranged[a], smaller);
  }
  return out;
}

/// Hat of (i_{sigma(1)}, ..., i_{sigma(k)}): each entry lowered by the number of smaller entries to its right.
inline IndexTuple hat_tuple(const Permutation& sigma, const IndexTuple& t) {
  IndexTuple arranged;
  for (int p : sigma) arranged.push_back(t[p]);
  return hat_generic(arranged, static_cast<int>(arranged.size()), std::less<int>(),
                     [](int v, int s) { return v - s; });
}

struct SplitPartition {
  Permutation sigma;
  int m = 0;
  int sign = 0;  // inversion parity, 0 or 1
};

/**
 * \brief All (sigma, m) with sigma increasing on the first m slots and on the rest.
 * Found by brute force over the symmetric group and cached per (k, allow_trivial).
 */
inline const std::vector<SplitPartition>& admissible_splits(int k, bool allow_trivial) {
  static std::mutex mu;
  static std::map<std::pair<int, bool>, std::vector<SplitPartition>> cache;
  if (k < 0 || k > 8) throw Error(Errc::shape_mismatch, "split enumeration supports k <= 8");
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(k, allow_trivial);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<SplitPartition> out;
  int lo = allow_trivial ? 0 : 1, hi = allow_trivial ? k : k - 1;
  for (int m = lo; m <= hi; ++m) {
    Permutation p(k);
    std::iota(p.begin(), p.end(), 0);
    do {
      bool ok = std::is_sorted(p.begin(), p.begin() + m) && std::is_sorted(p.begin() + m, p.end());
      if (ok) out.push_back({p, m, inversions(p) % 2});
    } while (std::next_permutation(p.begin(), p.end()));
  }
  return cache.emplace(key, std::move(out)).first->second;
}

/// Left and right hatted tuples of a split applied to a concrete tuple.
inline std::pair<IndexTuple, IndexTuple> split_tuple(const SplitPartition& s, const IndexTuple& t) {
  IndexTuple h = hat_tuple(s.sigma, t);
  return {IndexTuple(h.begin(), h.begin() + s.m), IndexTuple(h.begin() + s.m, h.end())};
}

/** \brief Index of the form i_var + offset; var 0 means a constant. */
struct SymIndex {
  int var = 0;
  int offset = 0;
  auto operator<=>(const SymIndex&) const = default;
};

using SymTuple = std::vector<SymIndex>;

inline SymTuple symbolic_tuple(int k) {
  SymTuple t;
  for (int s = 1; s <= k; ++s) t.push_back({s, 0});
  return t;
}

inline std::string to_string(const SymIndex& x) {
  std::string s = x.var ? "i" + std::to_string(x.var) : "";
  if (x.var == 0) return std::to_string(x.offset);
  if (x.offset > 0) s += "+" + std::to_string(x.offset);
  if (x.offset < 0) s += std::to_string(x.offset);
  return s;
}

/// Substitutes concrete values for i_1..i_k.
inline IndexTuple substitute(const SymTuple& t, const IndexTuple& values) {
  IndexTuple r;
  for (auto& x : t) r.push_back((x.var ? values.at(x.var - 1) : 0) + x.offset);
  return r;
}

inline std::pair<SymTuple, SymTuple> split_symbolic(const SplitPartition& s, const SymTuple& t) {
  SymTuple arranged;
  for (int p : s.sigma) arranged.push_back(t[p]);
  // entries of a symbolic increasing tuple compare by variable order
  auto h = hat_generic(arranged, s.m, [](const SymIndex& a, const SymIndex& b) { return a.var < b.var; },
                       [](SymIndex v, int sm) { return SymIndex{v.var, v.offset - sm}; });
  return {SymTuple(h.begin(), h.begin() + s.m), SymTuple(h.begin() + s.m, h.end())};
}

}  // namespace cyclic

#endif
