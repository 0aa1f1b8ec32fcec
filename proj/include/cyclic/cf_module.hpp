#ifndef CYCLIC_CF_MODULE_HPP
#define CYCLIC_CF_MODULE_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bigraded.hpp"
#include "expansions.hpp"
#include "report.hpp"

namespace cyclic {

/**
 * \brief Cyclic differential module with infinity-simplicial faces.
 * Faces are keyed by index tuple, each carrying blocks for the rows where the tuple applies.
 */
template <class K>
struct CFModule {
  BigradedSpace carrier;
  BigradedMap<K> d{{0, -1}, {}};
  Components<K> faces;
  BigradedMap<K> t{{0, 0}, {}};

  int truncation() const { return carrier.truncation; }
  const Matrix<K>* face(const IndexTuple& tp, const Bideg& b) const {
    auto it = faces.find(tp);
    return it == faces.end() ? nullptr : it->second.block(b);
  }
};

template <class K>
struct CFMorphism {
  std::shared_ptr<const CFModule<K>> source, target;
  Components<K> components;  // X_{n,m} -> Y_{n-k,m+k}
};

template <class K>
struct CFHomotopy {
  std::shared_ptr<const CFMorphism<K>> from, to;
  Components<K> components;  // X_{n,m} -> Y_{n-k,m+k+1}
};

/** \brief Classical cyclic module with simplicial faces; faces[{i,(n,m)}] = d_i on X_{n,m}. */
template <class K>
struct SimplicialModule {
  BigradedSpace carrier;
  std::map<Bideg, Matrix<K>> d, t;
  std::map<std::pair<int, Bideg>, Matrix<K>> faces;
};

namespace detail {

template <class K>
const Matrix<K>* find_block(const Components<K>& c, const IndexTuple& tp, const Bideg& b) {
  auto it = c.find(tp);
  return it == c.end() ? nullptr : it->second.block(b);
}

/// Product of an optional chain; nullptr factors make the product zero.
template <class K>
Matrix<K> chain(std::initializer_list<const Matrix<K>*> fs, int rows, int cols) {
  std::optional<Matrix<K>> cur;
  for (auto it = std::rbegin(fs); it != std::rend(fs); ++it) {
    if (!*it) return Matrix<K>(rows, cols);
    cur = cur ? (**it) * *cur : **it;
  }
  return cur ? *cur : Matrix<K>::identity(cols);
}

}  // namespace detail

/** \brief Modules and component families that face words are evaluated in. */
template <class K>
struct WordEnv {
  struct Family {
    const Components<K>* comps = nullptr;
    int from = 0, to = 1, extra = 0;  // extra internal degree beyond k
  };
  std::vector<const CFModule<K>*> modules;
  std::map<char, Family> families;
};

enum class EvalStatus { value, zero, out_of_window };

template <class K>
struct EvalResult {
  EvalStatus status = EvalStatus::zero;
  Matrix<K> m;
  Bideg target;
};

/// Evaluates a word applied to X_src of module `side`, substituting `values` for the symbolic indices.
template <class K>
EvalResult<K> eval_face_word(const FaceWord& w, const IndexTuple& values, const WordEnv<K>& env, Bideg src,
                             int side) {
  EvalResult<K> r;
  Bideg cur = src;
  std::optional<Matrix<K>> acc;
  bool zero = false;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    IndexTuple tp = substitute(it->tuple, values);
    int k = static_cast<int>(tp.size()), n = cur.first;
    bool valid = is_index_tuple(tp) && k <= n && (tp.empty() || tp.back() <= n) && (it->kind != 'D' || k >= 1);
    const Matrix<K>* blk = nullptr;
    Bideg next;
    if (it->kind == 'D') {
      next = {n - k, cur.second + k - 1};
      if (!env.modules[side]->carrier.in_window(next)) return {EvalStatus::out_of_window, {}, next};
      if (valid) blk = env.modules[side]->face(tp, cur);
    } else {
      auto& fam = env.families.at(it->kind);
      if (fam.from != side) throw Error(Errc::shape_mismatch, "word composes maps between wrong modules");
      next = {n - k, cur.second + k + fam.extra};
      side = fam.to;
      if (!env.modules[side]->carrier.in_window(next)) return {EvalStatus::out_of_window, {}, next};
      if (valid) blk = detail::find_block(*fam.comps, tp, cur);
    }
    if (!blk) zero = true;
    if (!zero) acc = acc ? (*blk) * *acc : *blk;
    cur = next;
  }
  r.target = cur;
  if (zero) {
    r.status = EvalStatus::zero;
    return r;
  }
  r.status = EvalStatus::value;
  r.m = acc ? *acc : Matrix<K>::identity(env.modules[side]->carrier.dim(src));
  return r;
}

/// Sum of a formal combination, or nullopt when some term leaves the window.
template <class K>
std::optional<Matrix<K>> eval_face_sum(const FaceSum& s, const IndexTuple& values, const WordEnv<K>& env, Bideg src,
                                       int side, int rows, int cols) {
  Matrix<K> out(rows, cols);
  for (auto& [w, c] : s.terms()) {
    auto r = eval_face_word(w, values, env, src, side);
    if (r.status == EvalStatus::out_of_window) return std::nullopt;
    if (r.status == EvalStatus::value) out.add_scaled(r.m, K(c));
  }
  return out;
}

namespace detail {

template <class K>
void compare(ValidationReport& rep, const std::string& rel, const IndexTuple& tp, const Bideg& b, const Matrix<K>& lhs,
             const Matrix<K>& rhs) {
  ++rep.checked;
  if (!(lhs == rhs)) rep.fail(rel + " tuple " + tuple_string(tp) + " at " + to_string(b) + ": " + first_difference(lhs, rhs));
}

template <class K>
void check_shapes(ValidationReport& rep, const std::string& what, const BigradedMap<K>& m, const BigradedSpace& src,
                  const BigradedSpace& tgt) {
  for (auto& [b, blk] : m.blocks) {
    Bideg t = m.target_of(b);
    if (blk.cols() != src.dim(b) || blk.rows() != tgt.dim(t))
      rep.fail(what + " block at " + to_string(b) + " has shape " + blk.shape());
  }
}

template <class K>
void check_tuple_blocks(ValidationReport& rep, const std::string& what, const Components<K>& c, int extra,
                        const BigradedSpace& src, const BigradedSpace& tgt, bool faces) {
  for (auto& [tp, m] : c) {
    int k = static_cast<int>(tp.size());
    if (!is_index_tuple(tp) || (faces && k == 0)) rep.fail(what + " has invalid tuple " + tuple_string(tp));
    if (m.shift != Bideg{-k, k + extra}) rep.fail(what + " " + tuple_string(tp) + " has wrong bidegree");
    for (auto& [b, blk] : m.blocks)
      if (k > b.first || (k && tp.back() > b.first))
        rep.fail(what + " " + tuple_string(tp) + " defined on row " + std::to_string(b.first));
    check_shapes(rep, what + " " + tuple_string(tp), m, src, tgt);
  }
}

/// Tuple (i_1-1,...,i_k-1) or, when i_1 = 0, (i_2-1,...,i_k-1,n) with its sign.
inline std::pair<IndexTuple, int> cyclic_shift(const IndexTuple& tp, int n) {
  IndexTuple r;
  if (tp.empty()) return {r, 1};
  if (tp[0] > 0) {
    for (int x : tp) r.push_back(x - 1);
    return {r, 1};
  }
  for (size_t i = 1; i < tp.size(); ++i) r.push_back(tp[i] - 1);
  r.push_back(n);
  return {r, tp.size() % 2 == 1 ? 1 : -1};
}

/// Checks X t_n = t_{n-k} X_{shifted} (or the signed variant) for each component.
template <class K>
void check_cyclic_compat(ValidationReport& rep, const std::string& rel, const Components<K>& comps, int extra,
                         const CFModule<K>& X, const CFModule<K>& Y, bool faces) {
  int T = X.truncation();
  for (int n = 0; n <= T; ++n)
    for (auto& tp : tuples_on_row(n, n)) {
      int k = static_cast<int>(tp.size());
      if (faces && k == 0) continue;
      auto [sh, sg] = cyclic_shift(tp, n);
      for (auto& b : X.carrier.row(n)) {
        Bideg tb{n - k, b.second + k + extra};
        if (!Y.carrier.in_window(tb)) {
          ++rep.skipped;
          continue;
        }
        int rows = Y.carrier.dim(tb), cols = X.carrier.dim(b);
        Matrix<K> lhs = chain<K>({find_block(comps, tp, b), X.t.block(b)}, rows, cols);
        Matrix<K> rhs = tp.empty() || tp[0] > 0 ? chain<K>({Y.t.block(tb), find_block(comps, sh, b)}, rows, cols)
                                                : chain<K>({find_block(comps, sh, b)}, rows, cols) * K(sg);
        compare(rep, rel, tp, b, lhs, rhs);
      }
    }
}

}  // namespace detail

/// d^2 = 0 and the face relations.
template <class K>
ValidationReport validate_f_module(const CFModule<K>& X) {
  ValidationReport rep;
  rep.subject = "F-module";
  const auto& S = X.carrier;
  detail::check_shapes(rep, "d", X.d, S, S);
  detail::check_tuple_blocks(rep, "face", X.faces, -1, S, S, true);
  if (!rep.ok()) return rep;
  for (auto& [b, dim] : S.dims) {
    if (!S.in_window(b) || dim == 0) continue;
    Bideg b1{b.first, b.second - 1}, b2{b.first, b.second - 2};
    Matrix<K> dd = detail::chain<K>({X.d.block(b1), X.d.block(b)}, S.dim(b2), dim);
    detail::compare(rep, "d^2=0", {}, b, dd, Matrix<K>(S.dim(b2), dim));
  }
  WordEnv<K> env;
  env.modules = {&X};
  std::map<int, FaceSum> rel;
  for (int n = 1; n <= S.truncation; ++n)
    for (auto& tp : tuples_on_row(n, n)) {
      int k = static_cast<int>(tp.size());
      if (k == 0) continue;
      if (!rel.count(k)) rel[k] = expand_face_relation(k);
      for (auto& b : S.row(n)) {
        if (!S.in_window(b)) continue;
        Bideg tb{n - k, b.second + k - 2};
        int rows = S.dim(tb), cols = S.dim(b);
        Bideg mid{b.first, b.second - 1};
        const Matrix<K>* f = X.face(tp, b);
        const Matrix<K>* f2 = X.face(tp, mid);
        Matrix<K> lhs = detail::chain<K>({X.d.block({n - k, b.second + k - 1}), f}, rows, cols) +
                        detail::chain<K>({f2, X.d.block(b)}, rows, cols);
        auto rhs = eval_face_sum(rel[k], tp, env, b, 0, rows, cols);
        if (!rhs) {
          ++rep.skipped;
          continue;
        }
        detail::compare(rep, "face relation", tp, b, lhs, *rhs);
      }
    }
  return rep;
}

/// Everything in validate_f_module plus the relations involving t.
template <class K>
ValidationReport validate_cf_module(const CFModule<K>& X) {
  ValidationReport rep = validate_f_module(X);
  rep.subject = "CF-module";
  const auto& S = X.carrier;
  detail::check_shapes(rep, "t", X.t, S, S);
  if (!rep.ok()) return rep;
  for (auto& [b, dim] : S.dims) {
    if (!S.in_window(b) || dim == 0) continue;
    Bideg b1{b.first, b.second - 1};
    int rows = S.dim(b1);
    detail::compare(rep, "dt=td", {}, b, detail::chain<K>({X.d.block(b), X.t.block(b)}, rows, dim),
                    detail::chain<K>({X.t.block(b1), X.d.block(b)}, rows, dim));
    Matrix<K> p = Matrix<K>::identity(dim);
    const Matrix<K>* t = X.t.block(b);
    for (int i = 0; i <= b.first; ++i) p = t ? (*t) * p : Matrix<K>(dim, dim);
    detail::compare(rep, "t^(n+1)=1", {}, b, p, Matrix<K>::identity(dim));
  }
  detail::check_cyclic_compat(rep, "face/t relation", X.faces, -1, X, X, true);
  return rep;
}

/// Rebuilds classical simplicial data as a CF-module; faces become (-1)^m d_i so that they anticommute with d.
template <class K>
CFModule<K> from_simplicial(const SimplicialModule<K>& s) {
  CFModule<K> X;
  X.carrier = s.carrier;
  const auto& S = s.carrier;
  auto get = [](const std::map<Bideg, Matrix<K>>& m, const Bideg& b) -> const Matrix<K>* {
    auto it = m.find(b);
    return it == m.end() ? nullptr : &it->second;
  };
  auto face = [&](int i, const Bideg& b) -> const Matrix<K>* {
    auto it = s.faces.find({i, b});
    return it == s.faces.end() ? nullptr : &it->second;
  };
  auto fail = [](const std::string& w) { throw Error(Errc::simplicial_relation_violated, w); };
  for (auto& [b, dim] : S.dims) {
    if (!S.in_window(b) || dim == 0) continue;
    int n = b.first, m = b.second;
    Bideg b1{n, m - 1}, b2{n, m - 2};
    if (!detail::chain<K>({get(s.d, b1), get(s.d, b)}, S.dim(b2), dim).is_zero()) fail("d^2 != 0 at " + to_string(b));
    if (!(detail::chain<K>({get(s.d, b), get(s.t, b)}, S.dim(b1), dim) ==
          detail::chain<K>({get(s.t, b1), get(s.d, b)}, S.dim(b1), dim)))
      fail("dt != td at " + to_string(b));
    Matrix<K> p = Matrix<K>::identity(dim);
    for (int i = 0; i <= n; ++i) p = get(s.t, b) ? *get(s.t, b) * p : Matrix<K>(dim, dim);
    if (!(p == Matrix<K>::identity(dim))) fail("t^(n+1) != 1 at " + to_string(b));
    if (n == 0) continue;
    Bideg c{n - 1, m}, c1{n - 1, m - 1};
    int rows = S.dim(c);
    for (int i = 0; i <= n; ++i) {
      if (!(detail::chain<K>({get(s.d, c), face(i, b)}, S.dim(c1), dim) ==
            detail::chain<K>({face(i, b1), get(s.d, b)}, S.dim(c1), dim)))
        fail("d does not commute with face " + std::to_string(i) + " at " + to_string(b));
      Matrix<K> lhs = detail::chain<K>({face(i, b), get(s.t, b)}, rows, dim);
      Matrix<K> rhs = i > 0 ? detail::chain<K>({get(s.t, c), face(i - 1, b)}, rows, dim)
                            : detail::chain<K>({face(n, b)}, rows, dim);
      if (!(lhs == rhs)) fail("face/t relation for face " + std::to_string(i) + " at " + to_string(b));
      if (n >= 2)
        for (int j = i + 1; j <= n; ++j)
          if (!(detail::chain<K>({face(i, c), face(j, b)}, S.dim({n - 2, m}), dim) ==
                detail::chain<K>({face(j - 1, c), face(i, b)}, S.dim({n - 2, m}), dim)))
            fail("simplicial identity for faces " + std::to_string(i) + "," + std::to_string(j) + " at " +
                 to_string(b));
    }
  }
  for (auto& [b, blk] : s.d) X.d.set(b, blk);
  for (auto& [b, blk] : s.t) X.t.set(b, blk);
  for (auto& [key, blk] : s.faces) {
    auto& [i, b] = key;
    auto& fm = X.faces[{i}];
    fm.shift = {-1, 0};
    fm.set(b, b.second % 2 == 0 ? blk : -blk);
  }
  return X;
}

// ---- morphisms and homotopies ----

template <class K>
ValidationReport validate_cf_morphism(const CFMorphism<K>& f) {
  ValidationReport rep;
  rep.subject = "CF-morphism";
  const CFModule<K>& X = *f.source;
  const CFModule<K>& Y = *f.target;
  detail::check_tuple_blocks(rep, "component", f.components, 0, X.carrier, Y.carrier, false);
  if (!rep.ok()) return rep;
  WordEnv<K> env;
  env.modules = {&X, &Y};
  env.families['f'] = {&f.components, 0, 1, 0};
  std::map<int, FaceSum> rel;
  for (int n = 0; n <= X.truncation(); ++n)
    for (auto& tp : tuples_on_row(n, n)) {
      int k = static_cast<int>(tp.size());
      if (!rel.count(k)) rel[k] = expand_morphism_relation(k);
      for (auto& b : X.carrier.row(n)) {
        Bideg tb{n - k, b.second + k - 1};
        if (!X.carrier.in_window(b) || !Y.carrier.in_window({n - k, b.second + k})) {
          ++rep.skipped;
          continue;
        }
        int rows = Y.carrier.dim(tb), cols = X.carrier.dim(b);
        Matrix<K> lhs =
            detail::chain<K>({Y.d.block({n - k, b.second + k}), detail::find_block(f.components, tp, b)}, rows, cols) -
            detail::chain<K>({detail::find_block(f.components, tp, {n, b.second - 1}), X.d.block(b)}, rows, cols);
        auto rhs = eval_face_sum(rel[k], tp, env, b, 0, rows, cols);
        if (!rhs) {
          ++rep.skipped;
          continue;
        }
        detail::compare(rep, "morphism relation", tp, b, lhs, *rhs);
      }
    }
  detail::check_cyclic_compat(rep, "morphism/t relation", f.components, 0, X, Y, false);
  return rep;
}

template <class K>
ValidationReport validate_cf_homotopy(const CFHomotopy<K>& h) {
  ValidationReport rep;
  rep.subject = "CF-homotopy";
  const CFMorphism<K>& f = *h.from;
  const CFMorphism<K>& g = *h.to;
  if (f.source != g.source || f.target != g.target) {
    rep.fail("morphisms have different source or target");
    return rep;
  }
  const CFModule<K>& X = *f.source;
  const CFModule<K>& Y = *f.target;
  detail::check_tuple_blocks(rep, "component", h.components, 1, X.carrier, Y.carrier, false);
  if (!rep.ok()) return rep;
  WordEnv<K> env;
  env.modules = {&X, &Y};
  env.families['f'] = {&f.components, 0, 1, 0};
  env.families['g'] = {&g.components, 0, 1, 0};
  env.families['h'] = {&h.components, 0, 1, 1};
  std::map<int, FaceSum> rel;
  for (int n = 0; n <= X.truncation(); ++n)
    for (auto& tp : tuples_on_row(n, n)) {
      int k = static_cast<int>(tp.size());
      if (!rel.count(k)) rel[k] = expand_homotopy_relation(k);
      for (auto& b : X.carrier.row(n)) {
        Bideg hb{n - k, b.second + k + 1}, tb{n - k, b.second + k};
        if (!X.carrier.in_window(b) || !Y.carrier.in_window(hb)) {
          ++rep.skipped;
          continue;
        }
        int rows = Y.carrier.dim(tb), cols = X.carrier.dim(b);
        Matrix<K> lhs =
            detail::chain<K>({Y.d.block(hb), detail::find_block(h.components, tp, b)}, rows, cols) +
            detail::chain<K>({detail::find_block(h.components, tp, {n, b.second - 1}), X.d.block(b)}, rows, cols);
        auto rhs = eval_face_sum(rel[k], tp, env, b, 0, rows, cols);
        if (!rhs) {
          ++rep.skipped;
          continue;
        }
        detail::compare(rep, "homotopy relation", tp, b, lhs, *rhs);
      }
    }
  detail::check_cyclic_compat(rep, "homotopy/t relation", h.components, 1, X, Y, false);
  return rep;
}

template <class K>
CFMorphism<K> identity_morphism(std::shared_ptr<const CFModule<K>> X) {
  CFMorphism<K> f;
  f.source = f.target = X;
  auto& c = f.components[{}];
  c.shift = {0, 0};
  for (auto& [b, dim] : X->carrier.dims)
    if (dim > 0) c.set(b, Matrix<K>::identity(dim));
  return f;
}

/// The composite g f.
template <class K>
CFMorphism<K> compose_morphisms(const CFMorphism<K>& f, const CFMorphism<K>& g) {
  if (f.target != g.source && !(f.target->carrier == g.source->carrier))
    throw Error(Errc::shape_mismatch, "composing morphisms with mismatched modules");
  CFMorphism<K> r;
  r.source = f.source;
  r.target = g.target;
  const auto& X = *f.source;
  WordEnv<K> env;
  env.modules = {f.source.get(), f.target.get(), g.target.get()};
  env.families['f'] = {&f.components, 0, 1, 0};
  env.families['g'] = {&g.components, 1, 2, 0};
  std::map<int, FaceSum> rel;
  for (int n = 0; n <= X.truncation(); ++n)
    for (auto& tp : tuples_on_row(n, n)) {
      int k = static_cast<int>(tp.size());
      if (!rel.count(k)) rel[k] = expand_composition(k);
      for (auto& b : X.carrier.row(n)) {
        Bideg tb{n - k, b.second + k};
        if (!r.target->carrier.in_window(tb)) continue;
        auto m = eval_face_sum(rel[k], tp, env, b, 0, r.target->carrier.dim(tb), X.carrier.dim(b));
        if (!m || m->is_zero()) continue;
        auto& comp = r.components[tp];
        comp.shift = {-k, k};
        comp.set(b, *m);
      }
    }
  return r;
}

/// -h, a homotopy from the end of h to its start.
template <class K>
CFHomotopy<K> negate_homotopy(const CFHomotopy<K>& h) {
  CFHomotopy<K> r{h.to, h.from, h.components};
  for (auto& [tp, m] : r.components)
    for (auto& [b, blk] : m.blocks) blk *= K(-1);
  return r;
}

/// h + H for h : f => g and H : g => k.
template <class K>
CFHomotopy<K> add_homotopies(const CFHomotopy<K>& h, const CFHomotopy<K>& H) {
  if (h.to != H.from) throw Error(Errc::shape_mismatch, "homotopies are not composable");
  CFHomotopy<K> r{h.from, H.to, h.components};
  for (auto& [tp, m] : H.components) {
    auto& dst = r.components[tp];
    dst.shift = m.shift;
    for (auto& [b, blk] : m.blocks) dst.add(b, blk);
  }
  return r;
}

}  // namespace cyclic

#endif
