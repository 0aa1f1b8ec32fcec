#ifndef CYCLIC_AINF_HPP
#define CYCLIC_AINF_HPP

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "expansions.hpp"
#include "linalg.hpp"
#include "report.hpp"

namespace cyclic {

/** \brief Multilinear map on basis tuples; absent tuples map to zero. */
template <class K>
struct MultiMap {
  int arity = 1;
  int degree = 0;
  std::map<std::vector<int>, SparseVec<K>> table;

  const SparseVec<K>* at(const std::vector<int>& in) const {
    auto it = table.find(in);
    return it == table.end() ? nullptr : &it->second;
  }
  void add(const std::vector<int>& in, int out, const K& v) {
    if (v.is_zero()) return;
    auto& row = table[in];
    row = axpy(row, K(1), SparseVec<K>{{out, v}});
    if (row.empty()) table.erase(in);
  }
  void add(const std::vector<int>& in, const SparseVec<K>& v, const K& c = K(1)) {
    if (v.empty()) return;
    auto& row = table[in];
    row = axpy(row, c, v);
    if (row.empty()) table.erase(in);
  }
  bool is_zero() const { return table.empty(); }
  friend bool operator==(const MultiMap& a, const MultiMap& b) {
    return a.arity == b.arity && a.degree == b.degree && a.table == b.table;
  }
};

inline constexpr int kComplete = std::numeric_limits<int>::max();

/** \brief A-infinity algebra: differential d and operations pi_n of arity n+2 and degree n. */
template <class K>
struct AInfAlgebra {
  GradedSpace space;
  MultiMap<K> d{1, -1, {}};
  std::vector<MultiMap<K>> pi;
  int cutoff = kComplete;  // pi_n is known for n < cutoff; beyond the stored ones it vanishes

  const MultiMap<K>* pi_at(int n) const {
    if (n >= cutoff)
      throw Error(Errc::truncation, "the structure map of arity " + std::to_string(n + 2) + " is required but only arities < " +
                                        std::to_string(cutoff + 2) + " are given");
    return n < static_cast<int>(pi.size()) && !pi[n].is_zero() ? &pi[n] : nullptr;
  }
  MultiMap<K>& pi_mut(int n) {
    while (static_cast<int>(pi.size()) <= n) pi.push_back({static_cast<int>(pi.size()) + 2, static_cast<int>(pi.size()), {}});
    return pi[n];
  }
  int max_degree() const { return space.max_degree(); }
};

/** \brief Morphism with components f_n of arity n+1 and degree n. */
template <class K>
struct AInfMorphism {
  std::shared_ptr<const AInfAlgebra<K>> source, target;
  std::vector<MultiMap<K>> comps;

  const MultiMap<K>* at(int n) const {
    return n >= 0 && n < static_cast<int>(comps.size()) && !comps[n].is_zero() ? &comps[n] : nullptr;
  }
  MultiMap<K>& mut(int n) {
    while (static_cast<int>(comps.size()) <= n)
      comps.push_back({static_cast<int>(comps.size()) + 1, static_cast<int>(comps.size()), {}});
    return comps[n];
  }
};

/** \brief Homotopy with components h_n of arity n+1 and degree n+1. */
template <class K>
struct AInfHomotopy {
  std::shared_ptr<const AInfMorphism<K>> from, to;
  std::vector<MultiMap<K>> comps;

  const MultiMap<K>* at(int n) const {
    return n >= 0 && n < static_cast<int>(comps.size()) && !comps[n].is_zero() ? &comps[n] : nullptr;
  }
  MultiMap<K>& mut(int n) {
    while (static_cast<int>(comps.size()) <= n)
      comps.push_back({static_cast<int>(comps.size()) + 1, static_cast<int>(comps.size()) + 1, {}});
    return comps[n];
  }
};

// ---- evaluating tensor words ----

/// One tensor factor: a multilinear map, the identity, or zero.
template <class K>
struct Factor {
  const MultiMap<K>* map = nullptr;
  int arity = 1;
  int degree = 0;
  bool identity = false;
};

template <class K>
using TensorVec = std::map<std::vector<int>, K>;

/// (F_1 (x) ... (x) F_r)(x_1 (x) ... (x) x_N) with Koszul signs, accumulated into out with coefficient c.
template <class K>
void apply_factors(const std::vector<Factor<K>>& fs, const std::vector<int>& in, const GradedSpace& src, const K& c,
                   TensorVec<K>& out) {
  std::vector<std::vector<int>> chunks;
  long sign = 0;
  int pos = 0, passed = 0;
  for (auto& f : fs) {
    if (!f.identity && !f.map) return;
    std::vector<int> ch(in.begin() + pos, in.begin() + pos + f.arity);
    sign += static_cast<long>(f.degree) * passed;
    for (int x : ch) passed += src.degree(x);
    pos += f.arity;
    chunks.push_back(std::move(ch));
  }
  // outputs of each factor
  std::vector<const SparseVec<K>*> outs;
  std::vector<SparseVec<K>> ids(fs.size());
  for (size_t i = 0; i < fs.size(); ++i) {
    if (fs[i].identity) {
      ids[i] = {{chunks[i][0], K(1)}};
      outs.push_back(&ids[i]);
    } else {
      const SparseVec<K>* v = fs[i].map->at(chunks[i]);
      if (!v) return;
      outs.push_back(v);
    }
  }
  K base = sign % 2 ? -c : c;
  std::vector<int> cur(fs.size());
  auto rec = [&](auto& self, size_t i, const K& coef) -> void {
    if (i == fs.size()) {
      auto [it, fresh] = out.try_emplace(cur, coef);
      if (!fresh) {
        it->second += coef;
        if (it->second.is_zero()) out.erase(it);
      }
      return;
    }
    for (auto& [j, v] : *outs[i]) {
      cur[i] = j;
      self(self, i + 1, coef * v);
    }
  };
  rec(rec, 0, base);
}

/// Calls fn on every basis tuple of length r whose total degree lies in [lo, hi].
inline void for_each_tuple(const GradedSpace& S, int r, int lo, int hi, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> cur(r);
  int mind = S.size() ? S.min_degree() : 0;
  auto rec = [&](auto& self, int i, int deg) -> void {
    if (deg + (r - i) * mind > hi) return;
    if (i == r) {
      if (deg >= lo) fn(cur);
      return;
    }
    for (int x = 0; x < S.size(); ++x) {
      cur[i] = x;
      self(self, i + 1, deg + S.degree(x));
    }
  };
  if (S.size() || r == 0) rec(rec, 0, 0);
}

/** \brief Resolves generators of a tensor word to factors; `outer` tells whether it is the outermost map. */
template <class K>
using Resolver = std::function<Factor<K>(const TensorGen&, bool outer)>;

inline int generator_arity(const TensorGen& g) {
  switch (g.kind) {
    case 'p': return g.n + 2;
    case '1': return 1;
    default: return g.n + 1;
  }
}
inline int generator_degree(const TensorGen& g) {
  switch (g.kind) {
    case 'h': return g.n + 1;
    case '1': return 0;
    default: return g.n;
  }
}
inline int word_arity(const TensorWord& w) {
  if (w.slots.empty()) return generator_arity(w.outer);
  int a = 0;
  for (auto& s : w.slots) a += generator_arity(s);
  return a;
}
inline int word_degree(const TensorWord& w) {
  int d = generator_degree(w.outer);
  for (auto& s : w.slots) d += generator_degree(s);
  return d;
}

/// Value of a formal combination of words as a multilinear map src^{(x) arity} -> tgt.
template <class K>
MultiMap<K> eval_tensor_sum(const TensorSum& sum, int arity, int degree, const Resolver<K>& res, const GradedSpace& src,
                            const GradedSpace& tgt) {
  MultiMap<K> out{arity, degree, {}};
  if (tgt.size() == 0) return out;
  struct Prepared {
    std::vector<Factor<K>> slots;
    Factor<K> outer;
    K coef;
  };
  std::vector<Prepared> words;
  for (auto& [w, c] : sum.terms()) {
    if (word_arity(w) != arity || word_degree(w) != degree)
      throw Error(Errc::shape_mismatch, "word " + to_string(w) + " has the wrong arity or degree");
    Prepared p{{}, res(w.outer, true), K(c)};
    if (!p.outer.map && !p.outer.identity) continue;
    bool zero = false;
    for (auto& s : w.slots) {
      p.slots.push_back(res(s, false));
      if (!p.slots.back().map && !p.slots.back().identity) zero = true;
    }
    if (!zero) words.push_back(std::move(p));
  }
  if (words.empty()) return out;
  for_each_tuple(src, arity, tgt.min_degree() - degree, tgt.max_degree() - degree, [&](const std::vector<int>& in) {
    SparseVec<K> acc;
    for (auto& p : words) {
      TensorVec<K> mid;
      if (p.slots.empty()) mid[in] = p.coef;
      else apply_factors(p.slots, in, src, p.coef, mid);
      for (auto& [y, c] : mid) {
        if (p.outer.identity) {
          acc = axpy(acc, c, SparseVec<K>{{y[0], K(1)}});
        } else if (auto v = p.outer.map->at(y)) {
          acc = axpy(acc, c, *v);
        }
      }
    }
    if (!acc.empty()) out.table[in] = std::move(acc);
  });
  return out;
}

/// d X - (-1)^{|X|} X d on src^{(x) arity}.
template <class K>
MultiMap<K> boundary(const MultiMap<K>* X, int arity, int degree, const MultiMap<K>& d_src, const GradedSpace& src,
                     const MultiMap<K>& d_tgt, const GradedSpace& tgt) {
  MultiMap<K> out{arity, degree - 1, {}};
  if (!X) return out;
  K sgn = degree % 2 ? K(1) : K(-1);
  for_each_tuple(src, arity, tgt.min_degree() - degree + 1, tgt.max_degree() - degree + 1, [&](const std::vector<int>& in) {
    SparseVec<K> acc;
    if (auto v = X->at(in))
      for (auto& [j, c] : *v)
        if (auto dv = d_tgt.at({j})) acc = axpy(acc, c, *dv);
    for (int i = 0; i < arity; ++i) {
      std::vector<Factor<K>> fs(arity, Factor<K>{nullptr, 1, 0, true});
      fs[i] = {&d_src, 1, -1, false};
      TensorVec<K> mid;
      apply_factors(fs, in, src, sgn, mid);
      for (auto& [y, c] : mid)
        if (auto v = X->at(y)) acc = axpy(acc, c, *v);
    }
    if (!acc.empty()) out.table[in] = std::move(acc);
  });
  return out;
}

namespace detail {

template <class K>
void compare_multi(ValidationReport& rep, const std::string& what, const MultiMap<K>& a, const MultiMap<K>& b,
                   const GradedSpace& src) {
  ++rep.checked;
  if (a.table == b.table) return;
  for (auto& [in, v] : a.table) {
    auto w = b.at(in);
    if (!w || !(*w == v)) {
      std::string s;
      for (int x : in) s += (s.empty() ? "" : ",") + src.labels[x];
      rep.fail(what + " differs on (" + s + ")");
      return;
    }
  }
  for (auto& [in, v] : b.table)
    if (!a.at(in)) {
      std::string s;
      for (int x : in) s += (s.empty() ? "" : ",") + src.labels[x];
      rep.fail(what + " differs on (" + s + ")");
      return;
    }
}

template <class K>
void check_multimap_shape(ValidationReport& rep, const std::string& what, const MultiMap<K>& m, int arity, int degree,
                          const GradedSpace& src, const GradedSpace& tgt) {
  if (m.arity != arity || m.degree != degree) {
    rep.fail(what + " has arity/degree " + std::to_string(m.arity) + "/" + std::to_string(m.degree));
    return;
  }
  for (auto& [in, v] : m.table) {
    if (static_cast<int>(in.size()) != arity) {
      rep.fail(what + " has an input of the wrong length");
      return;
    }
    int deg = 0;
    for (int x : in) {
      if (x < 0 || x >= src.size()) {
        rep.fail(what + " refers to a missing basis element");
        return;
      }
      deg += src.degree(x);
    }
    for (auto& [j, c] : v)
      if (j < 0 || j >= tgt.size() || tgt.degree(j) != deg + degree) {
        rep.fail(what + " is not homogeneous of degree " + std::to_string(degree));
        return;
      }
  }
}

/// Level up to which relations can be nontrivial, for nonnegatively graded spaces.
inline int default_cutoff(const GradedSpace& tgt) { return tgt.max_degree() + 1; }

}  // namespace detail

/// Structure relations for -1 <= n < cutoff (default: all nontrivial ones).
template <class K>
ValidationReport validate_ainf(const AInfAlgebra<K>& A, int cutoff = -1) {
  ValidationReport rep;
  rep.subject = "A-infinity algebra";
  const auto& S = A.space;
  if (S.size() && S.min_degree() < 0) rep.fail("negative degrees are not supported");
  detail::check_multimap_shape(rep, "d", A.d, 1, -1, S, S);
  for (size_t n = 0; n < A.pi.size(); ++n)
    detail::check_multimap_shape(rep, "pi_" + std::to_string(n), A.pi[n], static_cast<int>(n) + 2, static_cast<int>(n), S, S);
  if (!rep.ok()) return rep;
  // d^2 = 0
  MultiMap<K> dd{1, -2, {}};
  for (auto& [in, v] : A.d.table)
    for (auto& [j, c] : v)
      if (auto w = A.d.at({j})) dd.add(in, *w, c);
  detail::compare_multi(rep, "d^2", dd, MultiMap<K>{1, -2, {}}, S);
  if (cutoff < 0) cutoff = std::min(detail::default_cutoff(S), A.cutoff == kComplete ? kComplete : A.cutoff - 1);
  Resolver<K> res = [&](const TensorGen& g, bool) -> Factor<K> {
    if (g.kind == '1') return {nullptr, 1, 0, true};
    return {A.pi_at(g.n), g.n + 2, g.n, false};
  };
  for (int n = -1; n < cutoff; ++n) {
    MultiMap<K> lhs = boundary(A.pi_at(n + 1), n + 3, n + 1, A.d, S, A.d, S);
    MultiMap<K> rhs = eval_tensor_sum(expand_ainf_relation(n), n + 3, n, res, S, S);
    detail::compare_multi(rep, "structure relation n=" + std::to_string(n), lhs, rhs, S);
  }
  return rep;
}

template <class K>
ValidationReport validate_ainf_morphism(const AInfMorphism<K>& f, int cutoff = -1) {
  ValidationReport rep;
  rep.subject = "A-infinity morphism";
  const auto& A = *f.source;
  const auto& B = *f.target;
  for (size_t n = 0; n < f.comps.size(); ++n)
    detail::check_multimap_shape(rep, "f_" + std::to_string(n), f.comps[n], static_cast<int>(n) + 1, static_cast<int>(n),
                                 A.space, B.space);
  if (!rep.ok()) return rep;
  if (cutoff < 0) cutoff = detail::default_cutoff(B.space);
  Resolver<K> res = [&](const TensorGen& g, bool outer) -> Factor<K> {
    if (g.kind == '1') return {nullptr, 1, 0, true};
    if (g.kind == 'p') return {outer ? B.pi_at(g.n) : A.pi_at(g.n), g.n + 2, g.n, false};
    return {f.at(g.n), g.n + 1, g.n, false};
  };
  for (int n = -1; n < cutoff; ++n) {
    MultiMap<K> lhs = boundary(f.at(n + 1), n + 2, n + 1, A.d, A.space, B.d, B.space);
    MultiMap<K> rhs = eval_tensor_sum(expand_ainf_morphism_relation(n), n + 2, n, res, A.space, B.space);
    detail::compare_multi(rep, "morphism relation n=" + std::to_string(n), lhs, rhs, A.space);
  }
  return rep;
}

template <class K>
ValidationReport validate_ainf_homotopy(const AInfHomotopy<K>& h, int cutoff = -1) {
  ValidationReport rep;
  rep.subject = "A-infinity homotopy";
  const auto& f = *h.from;
  const auto& g = *h.to;
  if (f.source != g.source || f.target != g.target) {
    rep.fail("morphisms have different source or target");
    return rep;
  }
  const auto& A = *f.source;
  const auto& B = *f.target;
  for (size_t n = 0; n < h.comps.size(); ++n)
    detail::check_multimap_shape(rep, "h_" + std::to_string(n), h.comps[n], static_cast<int>(n) + 1,
                                 static_cast<int>(n) + 1, A.space, B.space);
  if (!rep.ok()) return rep;
  if (cutoff < 0) cutoff = detail::default_cutoff(B.space);
  Resolver<K> res = [&](const TensorGen& gen, bool outer) -> Factor<K> {
    switch (gen.kind) {
      case '1': return {nullptr, 1, 0, true};
      case 'p': return {outer ? B.pi_at(gen.n) : A.pi_at(gen.n), gen.n + 2, gen.n, false};
      case 'f': return {f.at(gen.n), gen.n + 1, gen.n, false};
      case 'g': return {g.at(gen.n), gen.n + 1, gen.n, false};
      default: return {h.at(gen.n), gen.n + 1, gen.n + 1, false};
    }
  };
  for (int n = -1; n < cutoff; ++n) {
    MultiMap<K> lhs = boundary(h.at(n + 1), n + 2, n + 2, A.d, A.space, B.d, B.space);
    MultiMap<K> rhs = eval_tensor_sum(expand_ainf_homotopy_relation(n), n + 2, n + 1, res, A.space, B.space);
    detail::compare_multi(rep, "homotopy relation n=" + std::to_string(n), lhs, rhs, A.space);
  }
  return rep;
}

template <class K>
AInfMorphism<K> identity_ainf(std::shared_ptr<const AInfAlgebra<K>> A) {
  AInfMorphism<K> f;
  f.source = f.target = A;
  auto& f0 = f.mut(0);
  for (int i = 0; i < A->space.size(); ++i) f0.add({i}, i, K(1));
  return f;
}

/// The composite g f.
template <class K>
AInfMorphism<K> compose_ainf(const AInfMorphism<K>& f, const AInfMorphism<K>& g) {
  if (f.target != g.source && !(f.target->space == g.source->space))
    throw Error(Errc::shape_mismatch, "composing A-infinity morphisms with mismatched algebras");
  AInfMorphism<K> r;
  r.source = f.source;
  r.target = g.target;
  Resolver<K> res = [&](const TensorGen& gen, bool) -> Factor<K> {
    if (gen.kind == 'f') return {f.at(gen.n), gen.n + 1, gen.n, false};
    return {g.at(gen.n), gen.n + 1, gen.n, false};
  };
  int top = detail::default_cutoff(r.target->space);
  for (int n = -1; n < top; ++n) {
    auto m = eval_tensor_sum(expand_ainf_composition(n), n + 2, n + 1, res, f.source->space, r.target->space);
    if (!m.is_zero()) r.mut(n + 1) = std::move(m);
  }
  return r;
}

}  // namespace cyclic

#endif
