#ifndef CYCLIC_TESTS_SUPPORT_HPP
#define CYCLIC_TESTS_SUPPORT_HPP

#include <random>
#include <string>
#include <vector>

#include "cyclic/ainf.hpp"
#include "cyclic/lambda.hpp"

namespace support {

using cyclic::AInfAlgebra;
using cyclic::AInfMorphism;
using cyclic::GradedSpace;
using cyclic::MultiMap;
using Q = cyclic::Rational;

/// Builds algebras by basis label.
struct AlgebraBuilder {
  AInfAlgebra<Q> A;

  explicit AlgebraBuilder(const std::vector<std::pair<std::string, int>>& basis) { A.space = GradedSpace(basis); }
  int at(const std::string& l) const { return *A.space.index_of(l); }
  AlgebraBuilder& d(const std::string& x, const std::string& y, long c = 1) {
    A.d.add({at(x)}, at(y), Q(c));
    return *this;
  }
  AlgebraBuilder& mul(const std::string& x, const std::string& y, const std::string& z, long c = 1) {
    A.pi_mut(0).add({at(x), at(y)}, at(z), Q(c));
    return *this;
  }
  AlgebraBuilder& unit(const std::string& u) {
    for (int i = 0; i < A.space.size(); ++i) {
      A.pi_mut(0).add({at(u), i}, i, Q(1));
      if (i != at(u)) A.pi_mut(0).add({i, at(u)}, i, Q(1));
    }
    return *this;
  }
  std::shared_ptr<const AInfAlgebra<Q>> build() const { return std::make_shared<const AInfAlgebra<Q>>(A); }
};

inline std::shared_ptr<const AInfAlgebra<Q>> ground_field() { return AlgebraBuilder({{"1", 0}}).unit("1").build(); }

// ---- dense helpers, kept apart from the library's sparse elimination ----

using Dense = std::vector<std::vector<Q>>;

inline int dense_rank(Dense m) {
  int rows = static_cast<int>(m.size()), cols = rows ? static_cast<int>(m[0].size()) : 0, r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (!m[i][c].is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[r], m[piv]);
    for (int i = r + 1; i < rows; ++i) {
      if (m[i][c].is_zero()) continue;
      Q f = m[i][c] / m[r][c];
      for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

inline Dense dense_inverse(Dense m) {
  int n = static_cast<int>(m.size());
  Dense inv(n, std::vector<Q>(n));
  for (int i = 0; i < n; ++i) inv[i][i] = Q(1);
  for (int c = 0; c < n; ++c) {
    int piv = c;
    while (m[piv][c].is_zero()) ++piv;
    std::swap(m[c], m[piv]);
    std::swap(inv[c], inv[piv]);
    Q s = Q(1) / m[c][c];
    for (int j = 0; j < n; ++j) {
      m[c][j] *= s;
      inv[c][j] *= s;
    }
    for (int i = 0; i < n; ++i) {
      if (i == c || m[i][c].is_zero()) continue;
      Q f = m[i][c];
      for (int j = 0; j < n; ++j) {
        m[i][j] -= f * m[c][j];
        inv[i][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

/**
 * Classical cyclic bicomplex of an ungraded algebra with structure constants mu[a][b][c] (a*b = sum_c mu c):
 * C_n = A^{(x)(n+1)}, b and b' the usual alternating sums, T = (-1)^n t, columns alternating b, -b'.
 */
struct ClassicalOracle {
  int dim;
  std::vector<std::vector<std::vector<Q>>> mu;

  int words(int n) const {
    int w = 1;
    for (int i = 0; i <= n; ++i) w *= dim;
    return w;
  }
  std::vector<int> decode(int x, int n) const {
    std::vector<int> w(n + 1);
    for (int i = n; i >= 0; --i) {
      w[i] = x % dim;
      x /= dim;
    }
    return w;
  }
  int encode(const std::vector<int>& w) const {
    int x = 0;
    for (int a : w) x = x * dim + a;
    return x;
  }
  /// b (full = true) or b' on C_n -> C_{n-1}, as a dense matrix
  Dense boundary(int n, bool full) const {
    Dense m(words(n - 1), std::vector<Q>(words(n)));
    for (int x = 0; x < words(n); ++x) {
      auto w = decode(x, n);
      for (int i = 0; i < n; ++i)
        for (int c = 0; c < dim; ++c) {
          Q v = mu[w[i]][w[i + 1]][c];
          if (v.is_zero()) continue;
          std::vector<int> r(w.begin(), w.begin() + i);
          r.push_back(c);
          r.insert(r.end(), w.begin() + i + 2, w.end());
          m[encode(r)][x] += i % 2 ? -v : v;
        }
      if (full)
        for (int c = 0; c < dim; ++c) {
          Q v = mu[w[n]][w[0]][c];
          if (v.is_zero()) continue;
          std::vector<int> r{c};
          r.insert(r.end(), w.begin() + 1, w.begin() + n);
          m[encode(r)][x] += n % 2 ? -v : v;
        }
    }
    return m;
  }
  Dense cyclic_T(int n) const {
    Dense m(words(n), std::vector<Q>(words(n)));
    for (int x = 0; x < words(n); ++x) {
      auto w = decode(x, n);
      std::vector<int> r{w[n]};
      r.insert(r.end(), w.begin(), w.begin() + n);
      m[encode(r)][x] += n % 2 ? Q(-1) : Q(1);
    }
    return m;
  }
  Dense norm(int n) const {
    Dense T = cyclic_T(n), p(words(n), std::vector<Q>(words(n))), N = p;
    for (int i = 0; i < words(n); ++i) p[i][i] = N[i][i] = Q(1);
    for (int j = 1; j <= n; ++j) {
      Dense q(words(n), std::vector<Q>(words(n)));
      for (int i = 0; i < words(n); ++i)
        for (int k = 0; k < words(n); ++k)
          if (!T[i][k].is_zero())
            for (int l = 0; l < words(n); ++l) q[i][l] += T[i][k] * p[k][l];
      p = q;
      for (int i = 0; i < words(n); ++i)
        for (int l = 0; l < words(n); ++l) N[i][l] += p[i][l];
    }
    return N;
  }
  /// Total differential Tot_k -> Tot_{k-1}; column c holds C_{k-c}.
  Dense total(int k) const {
    auto offs = [&](int deg) {
      std::vector<int> o{0};
      for (int c = 0; c <= deg; ++c) o.push_back(o.back() + words(deg - c));
      return o;
    };
    auto so = offs(k), to = offs(k - 1);
    Dense D(to.back(), std::vector<Q>(so.back()));
    auto put = [&](const Dense& blk, int r0, int c0, bool neg) {
      for (size_t i = 0; i < blk.size(); ++i)
        for (size_t j = 0; j < blk[i].size(); ++j)
          if (!blk[i][j].is_zero()) D[r0 + i][c0 + j] += neg ? -blk[i][j] : blk[i][j];
    };
    for (int c = 0; c <= k; ++c) {
      int n = k - c;
      if (n >= 1) put(boundary(n, c % 2 == 0), to[c], so[c], c % 2 == 1);
      if (c >= 1) {
        if (c % 2) {
          Dense T = cyclic_T(n);
          for (int i = 0; i < words(n); ++i)
            for (int j = 0; j < words(n); ++j) T[i][j] = (i == j ? Q(1) : Q(0)) - T[i][j];
          put(T, to[c - 1], so[c], false);
        } else {
          put(norm(n), to[c - 1], so[c], false);
        }
      }
    }
    return D;
  }
  std::vector<int> hc(int count) const {
    std::vector<int> rk(count + 1), dims;
    for (int k = 1; k <= count; ++k) rk[k] = dense_rank(total(k));
    for (int k = 0; k < count; ++k) {
      int dimk = 0;
      for (int c = 0; c <= k; ++c) dimk += words(k - c);
      dims.push_back(dimk - rk[k] - rk[k + 1]);
    }
    return dims;
  }
};

inline ClassicalOracle oracle_of(const AInfAlgebra<Q>& A) {
  ClassicalOracle o;
  o.dim = A.space.size();
  o.mu.assign(o.dim, std::vector<std::vector<Q>>(o.dim, std::vector<Q>(o.dim)));
  if (auto p = A.pi_at(0))
    for (auto& [in, v] : p->table)
      for (auto& [c, x] : v) o.mu[in[0]][in[1]][c] = x;
  return o;
}

// ---- random differential graded algebras ----

/// Applies the degree-preserving basis change e'_j = sum_i P_ij e_i to every structure map.
inline MultiMap<Q> change_basis(const MultiMap<Q>& m, const Dense& P, const Dense& Pinv, const GradedSpace& S) {
  MultiMap<Q> out{m.arity, m.degree, {}};
  cyclic::for_each_tuple(S, m.arity, 0, 1 << 20, [&](const std::vector<int>& in) {
    // expand P e_{in_1} (x) ... into old basis tuples
    std::map<std::vector<int>, Q> expanded{{{}, Q(1)}};
    for (int a : in) {
      std::map<std::vector<int>, Q> next;
      for (auto& [w, c] : expanded)
        for (int i = 0; i < S.size(); ++i)
          if (!P[i][a].is_zero()) {
            auto w2 = w;
            w2.push_back(i);
            next[w2] += c * P[i][a];
          }
      expanded = std::move(next);
    }
    cyclic::SparseVec<Q> acc;
    for (auto& [w, c] : expanded)
      if (auto v = m.at(w)) acc = cyclic::axpy(acc, c, *v);
    cyclic::SparseVec<Q> res;
    std::map<int, Q> dense;
    for (auto& [j, c] : acc)
      for (int r = 0; r < S.size(); ++r)
        if (!Pinv[r][j].is_zero()) dense[r] += Pinv[r][j] * c;
    for (auto& [r, c] : dense)
      if (!c.is_zero()) res.emplace_back(r, c);
    if (!res.empty()) out.table[in] = res;
  });
  return out;
}

/// Random invertible degree-preserving change of basis with small integer entries.
inline Dense random_basis_change(const GradedSpace& S, std::mt19937& rng) {
  int n = S.size();
  Dense P(n, std::vector<Q>(n));
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int i = 0; i < n; ++i) P[i][i] = Q(1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && S.degree(i) == S.degree(j) && (i < j)) P[i][j] = Q(coef(rng));
  // a random lower part keeps it generic while staying invertible: P = U L
  Dense L(n, std::vector<Q>(n));
  for (int i = 0; i < n; ++i) L[i][i] = Q(1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (S.degree(i) == S.degree(j)) L[i][j] = Q(coef(rng));
  Dense R(n, std::vector<Q>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) R[i][j] += P[i][k] * L[k][j];
  return R;
}

inline AInfAlgebra<Q> transformed(const AInfAlgebra<Q>& A, std::mt19937& rng) {
  Dense P = random_basis_change(A.space, rng), Pinv = dense_inverse(P);
  AInfAlgebra<Q> B;
  B.space = A.space;
  B.d = change_basis(A.d, P, Pinv, A.space);
  for (auto& p : A.pi) B.pi.push_back(change_basis(p, P, Pinv, A.space));
  return B;
}

/**
 * Augmented degree-0 algebra R plus a graded module M with r.m = eps(r) m = m.r, M.M = 0, d(R) = 0, d(M) in M.
 * kind: 0 = K, 1 = K x K, 2 = K[x]/x^2, 3 = K[x]/x^3 (M = 0 then).
 */
struct DGSample {
  AInfAlgebra<Q> A;
  bool unital = true;
  int module_start = 0;  // flat indices >= this belong to M (before any basis change)
  std::string name;
};

inline DGSample random_dg_algebra(std::mt19937& rng, int max_dim = 3) {
  std::uniform_int_distribution<int> pick(0, 5);
  int kind = pick(rng);
  std::vector<std::pair<std::string, int>> basis;
  std::vector<std::vector<std::vector<Q>>> mu;
  int rdim = 0;
  DGSample s;
  switch (kind) {
    case 0: case 4: rdim = 1; break;  // K
    case 1: rdim = 2; break;          // K x K, augmented by the first factor
    case 2: rdim = 2; break;          // K[x]/x^2
    case 3: rdim = 3; break;          // K[x]/x^3
    default: rdim = 0; break;         // non-unital: M alone
  }
  s.unital = rdim > 0;
  std::uniform_int_distribution<int> mdist(rdim == 3 ? 0 : 1, max_dim - rdim);
  int mdim = max_dim - rdim <= 0 ? 0 : mdist(rng);
  if (rdim == 0) mdim = std::max(mdim, 2);
  std::uniform_int_distribution<int> deg(0, 2);
  for (int i = 0; i < rdim; ++i) basis.push_back({"r" + std::to_string(i), 0});
  std::vector<int> mdeg;
  for (int i = 0; i < mdim; ++i) mdeg.push_back(deg(rng));
  std::sort(mdeg.begin(), mdeg.end());
  for (int i = 0; i < mdim; ++i) basis.push_back({"m" + std::to_string(i), mdeg[i]});
  AlgebraBuilder b(basis);
  auto r = [](int i) { return "r" + std::to_string(i); };
  auto m = [](int i) { return "m" + std::to_string(i); };
  // R
  if (rdim >= 1) {
    if (kind == 1) {
      b.mul(r(0), r(0), r(0)).mul(r(1), r(1), r(1));
    } else {
      b.unit(r(0));
      if (rdim == 3) b.mul(r(1), r(1), r(2));
    }
  }
  // eps: for K x K the first idempotent acts as 1 on M, otherwise the unit already does
  for (int j = 0; j < mdim; ++j)
    if (kind == 1) b.mul(r(0), m(j), m(j)).mul(m(j), r(0), m(j));
  // random d on M with d^2 = 0: pick d from degree-1 part to degree-0 part, and degree 2 to degree 1 with d d = 0
  std::uniform_int_distribution<int> coef(-2, 2);
  std::vector<int> d0, d1, d2;
  for (int j = 0; j < mdim; ++j) (mdeg[j] == 0 ? d0 : mdeg[j] == 1 ? d1 : d2).push_back(j);
  std::bernoulli_distribution coin(0.5);
  bool low = coin(rng) || d2.empty();
  if (low && !d1.empty() && !d0.empty()) {
    for (int x : d1)
      for (int y : d0) {
        int c = coef(rng);
        if (c) b.d(m(x), m(y), c);
      }
  } else if (!d2.empty() && !d1.empty()) {
    for (int x : d2)
      for (int y : d1) {
        int c = coef(rng);
        if (c) b.d(m(x), m(y), c);
      }
  }
  s.A = b.A;
  s.module_start = rdim;
  s.name = "kind" + std::to_string(kind) + "_dim" + std::to_string(rdim + mdim);
  return s;
}

/// Random homotopy components K_0 .. K_top : A^{(x) n+1} -> B of degree n+1, with K_0 = 0 unless asked.
inline std::vector<MultiMap<Q>> random_homotopy_components(const GradedSpace& A, const GradedSpace& B,
                                                           std::mt19937& rng, bool with_k0 = false) {
  std::uniform_int_distribution<int> coin(0, 2), val(-2, 2);
  int top = B.size() ? B.max_degree() + 1 : 0;
  std::vector<MultiMap<Q>> out;
  for (int n = 0; n <= top; ++n) {
    MultiMap<Q> m{n + 1, n + 1, {}};
    if (n > 0 || with_k0)
      for_each_tuple(A, n + 1, 0, B.size() ? B.max_degree() - n - 1 : -1, [&](const std::vector<int>& in) {
        int deg = n + 1;
        for (int x : in) deg += A.degree(x);
        for (int y = 0; y < B.size(); ++y)
          if (B.degree(y) == deg && coin(rng) == 0) {
            int c = val(rng);
            if (c) m.add(in, y, Q(c));
          }
      });
    out.push_back(std::move(m));
  }
  return out;
}

/// Componentwise equality, treating absent and empty components alike.
template <class K>
bool same_components(const cyclic::Components<K>& a, const cyclic::Components<K>& b) {
  auto nonzero = [](const cyclic::Components<K>& c) {
    std::map<cyclic::IndexTuple, std::map<cyclic::Bideg, cyclic::Matrix<K>>> out;
    for (auto& [tp, m] : c)
      for (auto& [bd, blk] : m.blocks)
        if (!blk.is_zero()) out[tp][bd] = blk;
    return out;
  };
  return nonzero(a) == nonzero(b);
}

// ---- fixture DG algebras with nonzero differential ----

/// {1, x1, y2}: dy = x, x x = 0; unital.
inline AInfAlgebra<Q> fixture_xy() { return AlgebraBuilder({{"1", 0}, {"x", 1}, {"y", 2}}).unit("1").d("y", "x").A; }

/// {1, z0, x1}: dx = z, square-zero augmentation ideal.
inline AInfAlgebra<Q> fixture_zx() { return AlgebraBuilder({{"1", 0}, {"z", 0}, {"x", 1}}).unit("1").d("x", "z").A; }

/// {a0, c0, u1, w1}: aa = c, ua = w, du = c, dw = 0; non-unital with a Massey-type transferred ternary product.
inline AInfAlgebra<Q> fixture_massey() {
  return AlgebraBuilder({{"a", 0}, {"c", 0}, {"u", 1}, {"w", 1}}).mul("a", "a", "c").mul("u", "a", "w").d("u", "c").A;
}

}  // namespace support

#endif
