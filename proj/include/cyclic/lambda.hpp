#ifndef CYCLIC_LAMBDA_HPP
#define CYCLIC_LAMBDA_HPP

#include <memory>
#include <string>
#include <vector>

#include "ainf.hpp"
#include "bicomplex.hpp"

namespace cyclic {

/** \brief Bases of L(A)_{n,m} = (A^{(x)(n+1)})_m: tensor words in lexicographic order. */
struct TensorBasis {
  GradedSpace space;
  int truncation = 0;
  std::map<Bideg, std::vector<std::vector<int>>> words;
  std::map<Bideg, std::map<std::vector<int>, int>> index;

  TensorBasis(const GradedSpace& S, int T) : space(S), truncation(T) {
    for (int n = 0; n <= T; ++n)
      for (int m = 0; n + m <= T; ++m) {
        auto& ws = words[{n, m}];
        for_each_tuple(S, n + 1, m, m, [&](const std::vector<int>& w) { ws.push_back(w); });
        auto& ix = index[{n, m}];
        for (size_t i = 0; i < ws.size(); ++i) ix.emplace(ws[i], static_cast<int>(i));
      }
  }
  int dim(const Bideg& b) const {
    auto it = words.find(b);
    return it == words.end() ? 0 : static_cast<int>(it->second.size());
  }
  int find(const Bideg& b, const std::vector<int>& w) const { return index.at(b).at(w); }
  BigradedSpace carrier() const {
    BigradedSpace c;
    c.truncation = truncation;
    for (auto& [b, ws] : words)
      if (!ws.empty()) c.dims[b] = static_cast<int>(ws.size());
    return c;
  }
  std::string label(const std::vector<int>& w) const {
    std::string s;
    for (size_t i = 0; i < w.size(); ++i) s += (i ? "|" : "") + space.labels[w[i]];
    return s;
  }
};

/// Matrix of sign * (F_1 (x) ... (x) F_r) from L_{src} to L_{tgt}.
template <class K>
Matrix<K> tensor_matrix(const std::vector<Factor<K>>& fs, const K& sign, const TensorBasis& S, const Bideg& src,
                        const TensorBasis& T, const Bideg& tgt) {
  Matrix<K> m(T.dim(tgt), S.dim(src));
  for (auto& f : fs)
    if (!f.identity && !f.map) return m;
  if (!m.rows() || !m.cols()) return m;
  const auto& ws = S.words.at(src);
  const auto& ix = T.index.at(tgt);
  for (size_t c = 0; c < ws.size(); ++c) {
    TensorVec<K> out;
    apply_factors(fs, ws[c], S.space, sign, out);
    for (auto& [w, v] : out) m.add_entry(ix.at(w), static_cast<int>(c), v);
  }
  return m;
}

/** \brief Normal form of an index tuple: maximal runs, gap sizes and the wrap-around twist. */
struct BlockPattern {
  IndexTuple tuple;        // the (unwrapped) tuple the block formula applies to
  std::vector<int> runs;   // n_1, ..., n_s
  std::vector<int> gaps;   // k_1, ..., k_{s+1}
  long gamma = 0;
  int q = 0, z = 0;        // twist t^q with sign (-1)^{q(z-1)}; q = 0 means no twist

  int k() const { return static_cast<int>(tuple.size()); }
};

/// Maximal runs of consecutive integers as (start, length).
inline std::vector<std::pair<int, int>> maximal_runs(const IndexTuple& t) {
  std::vector<std::pair<int, int>> r;
  for (int x : t) {
    if (!r.empty() && r.back().first + r.back().second == x) ++r.back().second;
    else r.emplace_back(x, 1);
  }
  return r;
}

inline BlockPattern parse_block_pattern(const IndexTuple& t, int n) {
  if (!is_index_tuple(t) || static_cast<int>(t.size()) > n || (!t.empty() && t.back() > n))
    throw Error(Errc::shape_mismatch, "tuple " + tuple_string(t) + " is not admissible on row " + std::to_string(n));
  BlockPattern p;
  auto runs = maximal_runs(t);
  if (!t.empty() && t.back() == n) {
    p.q = runs.back().second;
    runs.pop_back();
    int r0 = 0;
    if (!runs.empty() && runs.front().first == 0) {
      r0 = runs.front().second;
      runs.erase(runs.begin());
    }
    p.z = r0 + p.q;
    std::vector<std::pair<int, int>> un{{0, p.z}};
    for (auto& [s, l] : runs) un.emplace_back(s + p.q, l);
    runs = un;
  }
  for (auto& [s, l] : runs)
    for (int i = 0; i < l; ++i) p.tuple.push_back(s + i);
  int prev_end = -2, used = 0;
  for (auto& [s, l] : runs) {
    p.gaps.push_back(s - prev_end - 2);
    p.runs.push_back(l);
    used += p.gaps.back();
    prev_end = s + l - 1;
  }
  int k = static_cast<int>(p.tuple.size()), s = static_cast<int>(p.runs.size());
  p.gaps.push_back(n + 1 - used - k - s);
  for (int i = 0; i < s; ++i)
    for (int j = i + 1; j < s; ++j) p.gamma += static_cast<long>(p.runs[i]) * p.runs[j];
  return p;
}

namespace detail {

/// t_n^q on L(A)_{n,m}.
template <class K>
Matrix<K> t_power(const CFModule<K>& X, const Bideg& b, int q) {
  int dim = X.carrier.dim(b);
  Matrix<K> p = Matrix<K>::identity(dim);
  const Matrix<K>* t = X.t.block(b);
  for (int i = 0; i < q; ++i) p = t ? *t * p : Matrix<K>(dim, dim);
  return p;
}

template <class K>
void require_structure_map(const AInfAlgebra<K>& A, int n) {
  if (n <= A.max_degree()) A.pi_at(n);
}

}  // namespace detail

/// The tensor CF-module of A, truncated at total degree T.
template <class K>
CFModule<K> build_lambda(const AInfAlgebra<K>& A, int T) {
  if (T < 0) throw Error(Errc::truncation, "negative truncation");
  const auto& S = A.space;
  if (S.size() && S.min_degree() < 0) throw Error(Errc::validation, "negative degrees are not supported");
  // pi_n vanishes by degree when n exceeds the top degree of A
  for (int k = 1; k <= T; ++k) detail::require_structure_map(A, k - 1);
  TensorBasis B(S, T);
  CFModule<K> X;
  X.carrier = B.carrier();
  Factor<K> one{nullptr, 1, 0, true};
  Factor<K> dA{&A.d, 1, -1, false};
  for (auto& [b, ws] : B.words) {
    if (ws.empty()) continue;
    int n = b.first, m = b.second;
    if (m >= 1) {
      Matrix<K> dm(B.dim({n, m - 1}), static_cast<int>(ws.size()));
      for (int i = 0; i <= n; ++i) {
        std::vector<Factor<K>> fs(n + 1, one);
        fs[i] = dA;
        dm += tensor_matrix(fs, K(1), B, b, B, {n, m - 1});
      }
      X.d.set(b, dm);
    }
    Matrix<K> t(static_cast<int>(ws.size()), static_cast<int>(ws.size()));
    for (size_t c = 0; c < ws.size(); ++c) {
      const auto& w = ws[c];
      long rest = 0;
      for (int i = 0; i < n; ++i) rest += S.degree(w[i]);
      std::vector<int> r{w[n]};
      r.insert(r.end(), w.begin(), w.begin() + n);
      t.add_entry(B.find(b, r), static_cast<int>(c), sign_of<K>(rest * S.degree(w[n])));
    }
    X.t.set(b, t);
  }
  for (auto& [b, ws] : B.words) {
    if (ws.empty()) continue;
    int n = b.first, p = b.second;
    for (int k = 1; k <= n; ++k) {
      Bideg tb{n - k, p + k - 1};
      if (!X.carrier.in_window(tb) || B.dim(tb) == 0) continue;
      const MultiMap<K>* pk = k - 1 <= A.max_degree() ? A.pi_at(k - 1) : nullptr;
      if (!pk) continue;
      K sg = sign_of<K>(static_cast<long>(k) * (p - 1));
      Matrix<K> first;
      for (int j = 0; j <= n - k; ++j) {
        std::vector<Factor<K>> fs(n - k + 1, one);
        fs[j] = {pk, k + 1, k - 1, false};
        Matrix<K> m = tensor_matrix(fs, sg, B, b, B, tb);
        if (j == 0) first = m;
        IndexTuple tp(k);
        std::iota(tp.begin(), tp.end(), j);
        auto& f = X.faces[tp];
        f.shift = {-k, k - 1};
        f.set(b, m);
      }
      for (int q = 1; q <= k; ++q) {
        IndexTuple tp;
        for (int i = 0; i < k - q; ++i) tp.push_back(i);
        for (int i = n - q + 1; i <= n; ++i) tp.push_back(i);
        auto& f = X.faces[tp];
        f.shift = {-k, k - 1};
        f.set(b, first * detail::t_power(X, b, q) * sign_of<K>(static_cast<long>(q) * (k - 1)));
      }
    }
  }
  for (auto it = X.faces.begin(); it != X.faces.end();)
    it = it->second.is_zero() ? X.faces.erase(it) : std::next(it);
  return X;
}

namespace detail {

template <class K>
Factor<K> morphism_factor(const AInfMorphism<K>& f, int n) {
  return {f.at(n), n + 1, n, false};
}
template <class K>
Factor<K> homotopy_factor(const AInfHomotopy<K>& h, int n) {
  return {h.at(n), n + 1, n + 1, false};
}

/// Sets component tp at source bidegree b, accumulating into the family.
template <class K>
void put(Components<K>& c, const IndexTuple& tp, const Bideg& shift, const Bideg& b, const Matrix<K>& m) {
  if (m.is_zero()) return;
  auto& comp = c[tp];
  comp.shift = shift;
  comp.add(b, m);
}

}  // namespace detail

/// L(f): L(A) -> L(A'), with the modules built beforehand (they must share the truncation).
template <class K>
CFMorphism<K> induce_cf_morphism(const AInfMorphism<K>& f, std::shared_ptr<const CFModule<K>> LA,
                                 std::shared_ptr<const CFModule<K>> LB) {
  int T = LA->truncation();
  if (LB->truncation() != T) throw Error(Errc::shape_mismatch, "tensor modules with different truncations");
  TensorBasis SA(f.source->space, T), SB(f.target->space, T);
  CFMorphism<K> r;
  r.source = LA;
  r.target = LB;
  for (auto& [b, ws] : SA.words) {
    if (ws.empty()) continue;
    int n = b.first, p = b.second;
    for (auto& tp : tuples_on_row(n, n)) {
      int k = static_cast<int>(tp.size());
      Bideg tb{n - k, p + k};
      if (SB.dim(tb) == 0) continue;
      auto pat = parse_block_pattern(tp, n);
      int s = static_cast<int>(pat.runs.size());
      std::vector<Factor<K>> fs;
      for (int i = 0; i <= s; ++i) {
        for (int j = 0; j < pat.gaps[i]; ++j) fs.push_back(detail::morphism_factor(f, 0));
        if (i < s) fs.push_back(detail::morphism_factor(f, pat.runs[i]));
      }
      Matrix<K> m = tensor_matrix(fs, sign_of<K>(static_cast<long>(k) * (p - 1) + pat.gamma), SA, b, SB, tb);
      if (m.is_zero()) continue;
      if (pat.q) m = m * detail::t_power(*LA, b, pat.q) * sign_of<K>(static_cast<long>(pat.q) * (k - 1));
      detail::put(r.components, tp, {-k, k}, b, m);
    }
  }
  return r;
}

template <class K>
CFMorphism<K> induce_cf_morphism(const AInfMorphism<K>& f, int T) {
  auto LA = std::make_shared<const CFModule<K>>(build_lambda(*f.source, T));
  auto LB = f.source == f.target ? LA : std::make_shared<const CFModule<K>>(build_lambda(*f.target, T));
  return induce_cf_morphism(f, LA, LB);
}

/// L(h) between Lf = L(f) and Lg = L(g).
template <class K>
CFHomotopy<K> induce_cf_homotopy(const AInfHomotopy<K>& h, std::shared_ptr<const CFMorphism<K>> Lf,
                                 std::shared_ptr<const CFMorphism<K>> Lg) {
  const auto& f = *h.from;
  const auto& g = *h.to;
  const auto& LA = *Lf->source;
  int T = LA.truncation();
  TensorBasis SA(f.source->space, T), SB(f.target->space, T);
  CFHomotopy<K> r;
  r.from = Lf;
  r.to = Lg;
  for (auto& [b, ws] : SA.words) {
    if (ws.empty()) continue;
    int n = b.first, p = b.second;
    for (auto& tp : tuples_on_row(n, n)) {
      int k = static_cast<int>(tp.size());
      Bideg tb{n - k, p + k + 1};
      if (SB.dim(tb) == 0 || !Lf->target->carrier.in_window(tb)) continue;
      auto pat = parse_block_pattern(tp, n);
      int s = static_cast<int>(pat.runs.size());
      const auto& gaps = pat.gaps;
      const auto& ns = pat.runs;
      Matrix<K> m(SB.dim(tb), SA.dim(b));
      long lead = 0;  // n_1 + ... + n_{i-1}
      for (int i = 0; i <= s; ++i) {
        // prefix: g_0^{k_1} g_{n_1} ... g_0^{k_i} g_{n_i} for blocks before i
        std::vector<Factor<K>> pre;
        for (int a = 0; a < i; ++a) {
          for (int j = 0; j < gaps[a]; ++j) pre.push_back(detail::morphism_factor(g, 0));
          pre.push_back(detail::morphism_factor(g, ns[a]));
        }
        auto tail = [&](int from_block) {
          std::vector<Factor<K>> t;
          for (int a = from_block; a <= s; ++a) {
            for (int j = 0; j < gaps[a]; ++j) t.push_back(detail::morphism_factor(f, 0));
            if (a < s) t.push_back(detail::morphism_factor(f, ns[a]));
          }
          return t;
        };
        K sg = sign_of<K>(lead);
        // h_{n_i} in place of the i-th run
        if (i < s) {
          auto fs = pre;
          for (int j = 0; j < gaps[i]; ++j) fs.push_back(detail::morphism_factor(g, 0));
          fs.push_back(detail::homotopy_factor(h, ns[i]));
          auto t = tail(i + 1);
          fs.insert(fs.end(), t.begin(), t.end());
          m += tensor_matrix(fs, sg, SA, b, SB, tb);
        }
        // h_0 inside the i-th gap
        for (int j = 1; j <= gaps[i]; ++j) {
          auto fs = pre;
          for (int a = 1; a < j; ++a) fs.push_back(detail::morphism_factor(g, 0));
          fs.push_back(detail::homotopy_factor(h, 0));
          for (int a = j; a < gaps[i]; ++a) fs.push_back(detail::morphism_factor(f, 0));
          if (i < s) fs.push_back(detail::morphism_factor(f, ns[i]));
          auto t = tail(i + 1);
          fs.insert(fs.end(), t.begin(), t.end());
          m += tensor_matrix(fs, sg, SA, b, SB, tb);
        }
        if (i < s) lead += ns[i];
      }
      if (m.is_zero()) continue;
      m *= sign_of<K>(static_cast<long>(k) * (p - 1) + pat.gamma);
      if (pat.q) m = m * detail::t_power(LA, b, pat.q) * sign_of<K>(static_cast<long>(pat.q) * (k - 1));
      detail::put(r.components, tp, {-k, k + 1}, b, m);
    }
  }
  return r;
}

/// HC_0 .. HC_{N-1} of A, computed on L(A) truncated at total degree N.
template <class K>
HomologyReport<K> hc_of_ainf(const AInfAlgebra<K>& A, int N, bool reps = false, int jobs = 1) {
  return cyclic_homology(build_lambda(A, N), N, reps, jobs);
}

}  // namespace cyclic

#endif
