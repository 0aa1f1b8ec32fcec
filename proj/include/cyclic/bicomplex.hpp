#ifndef CYCLIC_BICOMPLEX_HPP
#define CYCLIC_BICOMPLEX_HPP

#include <future>
#include <string>
#include <vector>

#include "cf_module.hpp"

namespace cyclic {

/** \brief D-module on a bigraded carrier: d[k] has bidegree (-k, k-1). */
template <class K>
struct DModule {
  BigradedSpace carrier;
  std::map<int, BigradedMap<K>> d;
};

namespace detail {

/// sum over 0 <= i_1 < ... < i_k <= n - q of (-1)^{i_1+...+i_k} comps_t, on row n
template <class K>
Matrix<K> signed_row_sum(const Components<K>& comps, int k, int q, const Bideg& b, int rows, int cols) {
  Matrix<K> out(rows, cols);
  int top = b.first - q;
  if (top < 0 && k > 0) return out;
  for (auto& [tp, m] : comps) {
    if (static_cast<int>(tp.size()) != k) continue;
    if (k > 0 && tp.back() > top) continue;
    const Matrix<K>* blk = m.block(b);
    if (!blk) continue;
    int s = 0;
    for (int x : tp) s += x;
    out.add_scaled(*blk, sign_of<K>(s));
  }
  return out;
}

}  // namespace detail

/// The D-module d_q^0 = d, d_q^k = sum of signed faces with i_k <= n - q.
template <class K>
DModule<K> face_d_module(const CFModule<K>& X, int q) {
  DModule<K> D;
  D.carrier = X.carrier;
  D.d[0] = X.d;
  for (int k = 1; k <= X.truncation(); ++k) {
    auto& dk = D.d[k];
    dk.shift = {-k, k - 1};
    for (auto& [b, dim] : X.carrier.dims) {
      if (b.first < k || dim == 0) continue;
      Bideg tb = dk.target_of(b);
      dk.set(b, detail::signed_row_sum(X.faces, k, q, b, X.carrier.dim(tb), dim));
    }
  }
  return D;
}

template <class K>
ValidationReport validate_d_module(const DModule<K>& D) {
  ValidationReport rep;
  rep.subject = "D-module";
  const auto& S = D.carrier;
  int top = static_cast<int>(D.d.size()) - 1;
  for (auto& [b, dim] : S.dims) {
    if (dim == 0) continue;
    for (int k = 0; k <= top + 1; ++k) {
      Bideg tb{b.first - k, b.second + k - 2};
      if (tb.first < 0) break;
      int rows = S.dim(tb);
      Matrix<K> sum(rows, dim);
      for (int i = 0; i <= k; ++i) {
        int j = k - i;
        if (!D.d.count(i) || !D.d.count(j)) continue;
        auto& dj = D.d.at(j);
        Bideg mid = dj.target_of(b);
        sum += detail::chain<K>({D.d.at(i).block(mid), dj.block(b)}, rows, dim);
      }
      detail::compare(rep, "sum d^i d^j = 0 for k=" + std::to_string(k), {}, b, sum, Matrix<K>(rows, dim));
    }
  }
  return rep;
}

/** \brief Chain complex with diff[n] : C_n -> C_{n-1}. */
template <class K>
struct ChainComplex {
  std::vector<int> dims;
  std::vector<Matrix<K>> diff;
  int top() const { return static_cast<int>(dims.size()) - 1; }
};

/** \brief Layout of the collapsed spaces Xbar_n = sum_k X_{k,n-k}, blocks by ascending k. */
struct Collapse {
  std::vector<std::vector<int>> offset;  // offset[n][k]
  std::vector<int> dims;

  explicit Collapse(const BigradedSpace& S, int top) {
    offset.resize(top + 1);
    dims.resize(top + 1);
    for (int n = 0; n <= top; ++n) {
      int o = 0;
      for (int k = 0; k <= n; ++k) {
        offset[n].push_back(o);
        o += S.dim({k, n - k});
      }
      dims[n] = o;
    }
  }
};

namespace detail {

template <class K>
void place(Matrix<K>& dst, const Matrix<K>& blk, int row0, int col0) {
  for (int i = 0; i < blk.rows(); ++i)
    for (auto& [j, v] : blk.row(i)) dst.add_entry(row0 + i, col0 + j, v);
}

}  // namespace detail

/// Total differential sum_k d^k on the collapsed spaces, degrees 0..top.
template <class K>
ChainComplex<K> collapse(const DModule<K>& D, int top = -1) {
  const auto& S = D.carrier;
  if (top < 0) top = S.truncation;
  Collapse L(S, top);
  ChainComplex<K> C;
  C.dims = L.dims;
  for (int n = 0; n <= top; ++n) {
    Matrix<K> m(n ? L.dims[n - 1] : 0, L.dims[n]);
    for (int r = 0; n > 0 && r <= n; ++r) {
      Bideg b{r, n - r};
      for (auto& [k, dk] : D.d) {
        if (k > r) continue;
        const Matrix<K>* blk = dk.block(b);
        if (!blk) continue;
        detail::place(m, *blk, L.offset[n - 1][r - k], L.offset[n][r]);
      }
    }
    C.diff.push_back(std::move(m));
  }
  return C;
}

/** \brief Cyclic operators T = (-1)^n t and N = 1 + T + ... + T^n, blockwise on each Xbar_n. */
template <class K>
struct CyclicOperators {
  std::vector<Matrix<K>> T, N;
};

template <class K>
CyclicOperators<K> cyclic_operators(const CFModule<K>& X, int top = -1) {
  const auto& S = X.carrier;
  if (top < 0) top = S.truncation;
  Collapse L(S, top);
  CyclicOperators<K> ops;
  for (int n = 0; n <= top; ++n) {
    Matrix<K> T(L.dims[n], L.dims[n]), N(L.dims[n], L.dims[n]);
    for (int k = 0; k <= n; ++k) {
      Bideg b{k, n - k};
      int dim = S.dim(b);
      if (!dim) continue;
      const Matrix<K>* t = X.t.block(b);
      Matrix<K> Tk = t ? *t * sign_of<K>(k) : Matrix<K>(dim, dim);
      Matrix<K> Nk = Matrix<K>::identity(dim), p = Matrix<K>::identity(dim);
      for (int j = 1; j <= k; ++j) {
        p = Tk * p;
        Nk += p;
      }
      detail::place(T, Tk, L.offset[n][k], L.offset[n][k]);
      detail::place(N, Nk, L.offset[n][k], L.offset[n][k]);
    }
    ops.T.push_back(std::move(T));
    ops.N.push_back(std::move(N));
  }
  return ops;
}

/** \brief The cyclic bicomplex: column m is Xbar, vertical b / -b' and horizontal 1-T / N. */
template <class K>
struct CyclicBicomplex {
  ChainComplex<K> b, bprime;
  CyclicOperators<K> ops;
  int top = 0;
};

template <class K>
CyclicBicomplex<K> build_cyclic_bicomplex(const CFModule<K>& X, int top = -1) {
  if (top < 0) top = X.truncation();
  if (top > X.truncation()) throw Error(Errc::truncation, "bicomplex beyond the carrier truncation");
  CyclicBicomplex<K> B;
  B.top = top;
  B.b = collapse(face_d_module(X, 0), top);
  B.bprime = collapse(face_d_module(X, 1), top);
  B.ops = cyclic_operators(X, top);
  return B;
}

/// Offsets of the columns inside Tot_k (column m holds Xbar_{k-m}), m ascending.
inline std::vector<int> tot_offsets(const std::vector<int>& xdims, int k) {
  std::vector<int> off;
  int o = 0;
  for (int m = 0; m <= k; ++m) {
    off.push_back(o);
    o += xdims[k - m];
  }
  off.push_back(o);
  return off;
}

template <class K>
ChainComplex<K> total_complex(const CyclicBicomplex<K>& B, int top = -1) {
  if (top < 0) top = B.top;
  const auto& xd = B.b.dims;
  ChainComplex<K> C;
  for (int k = 0; k <= top; ++k) {
    auto off = tot_offsets(xd, k);
    C.dims.push_back(off.back());
    Matrix<K> D(k ? tot_offsets(xd, k - 1).back() : 0, off.back());
    if (k > 0) {
      auto offm = tot_offsets(xd, k - 1);
      for (int m = 0; m <= k; ++m) {
        int n = k - m;
        if (m >= 1) {
          Matrix<K> h = m % 2 ? Matrix<K>::identity(xd[n]) - B.ops.T[n] : B.ops.N[n];
          detail::place(D, h, offm[m - 1], off[m]);
        }
        if (n >= 1) {
          Matrix<K> v = m % 2 ? -B.bprime.diff[n] : B.b.diff[n];
          detail::place(D, v, offm[m], off[m]);
        }
      }
    }
    C.diff.push_back(std::move(D));
  }
  return C;
}

template <class K>
struct HomologyReport {
  std::vector<int> dims;
  std::vector<HomologyData<K>> data;  // filled when representatives are requested

  std::string tsv() const {
    std::string s = "degree\tdim\n";
    for (size_t i = 0; i < dims.size(); ++i) s += std::to_string(i) + "\t" + std::to_string(dims[i]) + "\n";
    return s;
  }
};

/// Homology of a chain complex in degrees 0..count-1 (needs degree count present).
template <class K>
HomologyReport<K> chain_homology(const ChainComplex<K>& C, int count, bool reps, int jobs = 1) {
  if (count > C.top()) throw Error(Errc::truncation, "homology in degree " + std::to_string(count - 1) +
                                                         " needs the complex up to degree " + std::to_string(count));
  HomologyReport<K> R;
  R.dims.resize(count);
  if (!reps) {
    std::vector<int> rk(count + 1);
    auto work = [&](int k) { rk[k] = rank(C.diff[k]); };
    if (jobs <= 1) {
      for (int k = 0; k <= count; ++k) work(k);
    } else {
      std::vector<std::future<void>> fs;
      for (int k = 0; k <= count; ++k) {
        fs.push_back(std::async(std::launch::async, work, k));
        if (static_cast<int>(fs.size()) >= jobs) {
          for (auto& f : fs) f.get();
          fs.clear();
        }
      }
      for (auto& f : fs) f.get();
    }
    for (int k = 0; k < count; ++k) R.dims[k] = C.dims[k] - rk[k] - rk[k + 1];
    return R;
  }
  R.data.resize(count);
  auto work = [&](int k) { R.data[k] = homology_at(C.diff[k], C.diff[k + 1]); };
  if (jobs <= 1) {
    for (int k = 0; k < count; ++k) work(k);
  } else {
    std::vector<std::future<void>> fs;
    for (int k = 0; k < count; ++k) fs.push_back(std::async(std::launch::async, work, k));
    for (auto& f : fs) f.get();
  }
  for (int k = 0; k < count; ++k) R.dims[k] = R.data[k].dim;
  return R;
}

/// HC_0 .. HC_{N-1}; the carrier must be truncated at total degree >= N.
template <class K>
HomologyReport<K> cyclic_homology(const CFModule<K>& X, int N, bool reps = false, int jobs = 1) {
  if (N > X.truncation())
    throw Error(Errc::truncation, "cyclic homology below degree " + std::to_string(N) +
                                      " needs truncation >= " + std::to_string(N) + ", have " +
                                      std::to_string(X.truncation()));
  auto B = build_cyclic_bicomplex(X, N);
  return chain_homology(total_complex(B, N), N, reps, jobs);
}

// ---- maps ----

/// fbar_q = sum_k f_q^k : Xbar_n -> Ybar_n (extra = 1 gives Ybar_{n+1} for homotopies).
template <class K>
std::vector<Matrix<K>> component_row_maps(const Components<K>& comps, const BigradedSpace& S, const BigradedSpace& T,
                                          int q, int extra, int top) {
  Collapse LS(S, top), LT(T, top + extra);
  std::vector<Matrix<K>> out;
  for (int n = 0; n <= top; ++n) {
    Matrix<K> m(LT.dims[n + extra], LS.dims[n]);
    for (int r = 0; r <= n; ++r) {
      Bideg b{r, n - r};
      int dim = S.dim(b);
      if (!dim) continue;
      for (int k = 0; k <= r; ++k) {
        Bideg tb{r - k, n - r + k + extra};
        int rows = T.dim(tb);
        if (!rows) continue;
        Matrix<K> blk = detail::signed_row_sum(comps, k, q, b, rows, dim);
        if (!blk.is_zero()) detail::place(m, blk, LT.offset[n + extra][r - k], LS.offset[n][r]);
      }
    }
    out.push_back(std::move(m));
  }
  return out;
}

template <class K>
std::vector<Matrix<K>> morphism_row_maps(const CFMorphism<K>& f, int q, int top = -1) {
  if (top < 0) top = f.source->truncation();
  return component_row_maps(f.components, f.source->carrier, f.target->carrier, q, 0, top);
}

/// Map of total complexes in degrees 0..top: fbar_0 on even columns and fbar_1 on odd ones.
template <class K>
std::vector<Matrix<K>> tot_map_from_rows(const std::vector<Matrix<K>>& r0, const std::vector<Matrix<K>>& r1,
                                         const std::vector<int>& sd, const std::vector<int>& td, int top, int extra,
                                         const K& odd_sign) {
  std::vector<Matrix<K>> out;
  for (int k = 0; k <= top; ++k) {
    auto so = tot_offsets(sd, k), to = tot_offsets(td, k + extra);
    Matrix<K> M(to.back(), so.back());
    for (int m = 0; m <= k; ++m) {
      const Matrix<K>& blk = m % 2 ? r1[k - m] : r0[k - m];
      detail::place(M, m % 2 ? blk * odd_sign : blk, to[m], so[m]);
    }
    out.push_back(std::move(M));
  }
  return out;
}

template <class K>
std::vector<Matrix<K>> induced_bicomplex_map(const CFMorphism<K>& f, int N) {
  int top = N;
  if (top > f.source->truncation() || top > f.target->truncation())
    throw Error(Errc::truncation, "map of total complexes up to degree " + std::to_string(N));
  auto r0 = morphism_row_maps(f, 0, top), r1 = morphism_row_maps(f, 1, top);
  auto SX = total_complex(build_cyclic_bicomplex(*f.source, top)), SY = total_complex(build_cyclic_bicomplex(*f.target, top));
  auto M = tot_map_from_rows(r0, r1, Collapse(f.source->carrier, top).dims, Collapse(f.target->carrier, top).dims, top, 0,
                             K(1));
  for (int k = 1; k <= top; ++k)
    if (!(SY.diff[k] * M[k] == M[k - 1] * SX.diff[k]))
      throw Error(Errc::chain_mismatch, "induced map does not commute with the differential in degree " +
                                            std::to_string(k) + ": " +
                                            first_difference(SY.diff[k] * M[k], M[k - 1] * SX.diff[k]));
  return M;
}

/// HC_k(f) for k < N, columns and rows indexed by the chosen homology bases.
template <class K>
std::vector<Matrix<K>> induced_homology_map(const CFMorphism<K>& f, int N, int jobs = 1) {
  auto M = induced_bicomplex_map(f, N);
  auto hs = cyclic_homology(*f.source, N, true, jobs), ht = cyclic_homology(*f.target, N, true, jobs);
  std::vector<Matrix<K>> out;
  for (int k = 0; k < N; ++k) out.push_back(induced_on_homology(M[k], hs.data[k], ht.data[k]));
  return out;
}

/// C(h): Tot_k -> Tot_{k+1} for k < N; hbar_0 on even columns, -hbar_1 on odd ones.
template <class K>
std::vector<Matrix<K>> induced_bicomplex_homotopy(const CFHomotopy<K>& h, int N) {
  const auto& f = *h.from;
  const auto& g = *h.to;
  const auto& S = f.source->carrier;
  const auto& T = f.target->carrier;
  if (N > S.truncation || N > T.truncation)
    throw Error(Errc::truncation, "homotopy of total complexes up to degree " + std::to_string(N));
  int top = N - 1;
  auto r0 = component_row_maps(h.components, S, T, 0, 1, top), r1 = component_row_maps(h.components, S, T, 1, 1, top);
  auto H = tot_map_from_rows(r0, r1, Collapse(S, N).dims, Collapse(T, N).dims, top, 1, K(-1));
  auto F = induced_bicomplex_map(f, N), G = induced_bicomplex_map(g, N);
  auto SX = total_complex(build_cyclic_bicomplex(*f.source, N)), SY = total_complex(build_cyclic_bicomplex(*f.target, N));
  for (int k = 0; k <= top; ++k) {
    Matrix<K> lhs = F[k] - G[k];
    Matrix<K> rhs = SY.diff[k + 1] * H[k];
    if (k > 0) rhs += H[k - 1] * SX.diff[k];
    if (!(lhs == rhs))
      throw Error(Errc::homotopy_identity_failed,
                  "C(f) - C(g) != D C(h) + C(h) D in degree " + std::to_string(k) + ": " + first_difference(lhs, rhs));
  }
  return H;
}

// ---- relation checks between the D-modules and the cyclic operators ----

/// (1-T)N = N(1-T) = 0 and the compatibilities d_0^i (1-T) = (1-T) d_1^i, d_1^i N = N d_0^i, per row.
template <class K>
ValidationReport check_cyclic_relations(const CFModule<K>& X) {
  ValidationReport rep;
  rep.subject = "cyclic relations";
  const auto& S = X.carrier;
  auto D0 = face_d_module(X, 0), D1 = face_d_module(X, 1);
  auto Tn = [&](const Bideg& b) {
    const Matrix<K>* t = X.t.block(b);
    int dim = S.dim(b);
    return t ? *t * sign_of<K>(b.first) : Matrix<K>(dim, dim);
  };
  auto Nn = [&](const Bideg& b) {
    int dim = S.dim(b);
    Matrix<K> T = Tn(b), p = Matrix<K>::identity(dim), N = p;
    for (int j = 1; j <= b.first; ++j) {
      p = T * p;
      N += p;
    }
    return N;
  };
  for (auto& [b, dim] : S.dims) {
    if (!dim) continue;
    Matrix<K> one = Matrix<K>::identity(dim), omt = one - Tn(b), N = Nn(b);
    detail::compare(rep, "(1-T)N=0", {}, b, omt * N, Matrix<K>(dim, dim));
    detail::compare(rep, "N(1-T)=0", {}, b, N * omt, Matrix<K>(dim, dim));
    for (int i = 0; i <= b.first; ++i) {
      Bideg tb{b.first - i, b.second + i - 1};
      if (!S.in_window(tb) || !D0.d.count(i)) continue;
      int rows = S.dim(tb);
      Matrix<K> lhs = detail::chain<K>({D0.d[i].block(b)}, rows, dim) * omt;
      Matrix<K> omt2 = Matrix<K>::identity(rows) - Tn(tb);
      Matrix<K> rhs = omt2 * detail::chain<K>({D1.d[i].block(b)}, rows, dim);
      detail::compare(rep, "d0^i(1-T)=(1-T)d1^i, i=" + std::to_string(i), {}, b, lhs, rhs);
      detail::compare(rep, "d1^i N=N d0^i, i=" + std::to_string(i), {}, b,
                      detail::chain<K>({D1.d[i].block(b)}, rows, dim) * N,
                      Nn(tb) * detail::chain<K>({D0.d[i].block(b)}, rows, dim));
    }
  }
  auto B = build_cyclic_bicomplex(X);
  for (int n = 1; n <= B.top; ++n) {
    int dim = B.b.dims[n], rows = B.b.dims[n - 1];
    Matrix<K> omt = Matrix<K>::identity(dim) - B.ops.T[n], omt1 = Matrix<K>::identity(rows) - B.ops.T[n - 1];
    detail::compare(rep, "b(1-T)=(1-T)b'", {}, {n, 0}, B.b.diff[n] * omt, omt1 * B.bprime.diff[n]);
    detail::compare(rep, "b'N=Nb", {}, {n, 0}, B.bprime.diff[n] * B.ops.N[n], B.ops.N[n - 1] * B.b.diff[n]);
    detail::compare(rep, "b^2=0", {}, {n, 0}, n > 1 ? B.b.diff[n - 1] * B.b.diff[n] : Matrix<K>(0, dim),
                    n > 1 ? Matrix<K>(B.b.dims[n - 2], dim) : Matrix<K>(0, dim));
    detail::compare(rep, "b'^2=0", {}, {n, 0}, n > 1 ? B.bprime.diff[n - 1] * B.bprime.diff[n] : Matrix<K>(0, dim),
                    n > 1 ? Matrix<K>(B.b.dims[n - 2], dim) : Matrix<K>(0, dim));
  }
  auto Tot = total_complex(B);
  for (int k = 2; k <= Tot.top(); ++k)
    detail::compare(rep, "D^2=0", {}, {k, 0}, Tot.diff[k - 1] * Tot.diff[k], Matrix<K>(Tot.dims[k - 2], Tot.dims[k]));
  return rep;
}

/// Per-k compatibilities of f with the D-modules and the cyclic operators, plus their collapsed forms.
template <class K>
ValidationReport check_morphism_relations(const CFMorphism<K>& f) {
  ValidationReport rep;
  rep.subject = "morphism relations";
  const CFModule<K>& X = *f.source;
  const CFModule<K>& Y = *f.target;
  int top = std::min(X.truncation(), Y.truncation());
  for (int q = 0; q <= 1; ++q) {
    auto DX = face_d_module(X, q), DY = face_d_module(Y, q);
    for (auto& [b, dim] : X.carrier.dims) {
      if (!dim) continue;
      for (int k = 0; k <= b.first; ++k) {
        Bideg tb{b.first - k, b.second + k - 1};
        if (!Y.carrier.in_window({tb.first, tb.second + 1})) continue;
        int rows = Y.carrier.dim(tb);
        Matrix<K> lhs(rows, dim), rhs(rows, dim);
        for (int i = 0; i <= k; ++i) {
          int j = k - i;
          // d_q^i f_q^j
          Bideg mid{b.first - j, b.second + j};
          Matrix<K> fj = detail::signed_row_sum(f.components, j, q, b, Y.carrier.dim(mid), dim);
          lhs += detail::chain<K>({DY.d[i].block(mid)}, rows, Y.carrier.dim(mid)) * fj;
          // f_q^i d_q^j
          Bideg mid2{b.first - j, b.second + j - 1};
          Matrix<K> fi = detail::signed_row_sum(f.components, i, q, mid2, rows, X.carrier.dim(mid2));
          rhs += fi * detail::chain<K>({DX.d[j].block(b)}, X.carrier.dim(mid2), dim);
        }
        detail::compare(rep, "sum d_q^i f_q^j = sum f_q^i d_q^j, q=" + std::to_string(q) + ", k=" + std::to_string(k),
                        {}, b, lhs, rhs);
      }
    }
  }
  // per-k compatibilities with 1-T and N
  for (auto& [b, dim] : X.carrier.dims) {
    if (!dim) continue;
    auto Tn = [&](const CFModule<K>& M, const Bideg& c) {
      const Matrix<K>* t = M.t.block(c);
      int d = M.carrier.dim(c);
      return t ? *t * sign_of<K>(c.first) : Matrix<K>(d, d);
    };
    auto Nn = [&](const CFModule<K>& M, const Bideg& c) {
      int d = M.carrier.dim(c);
      Matrix<K> T = Tn(M, c), p = Matrix<K>::identity(d), N = p;
      for (int j = 1; j <= c.first; ++j) {
        p = T * p;
        N += p;
      }
      return N;
    };
    for (int k = 0; k <= b.first; ++k) {
      Bideg tb{b.first - k, b.second + k};
      if (!Y.carrier.in_window(tb)) continue;
      int rows = Y.carrier.dim(tb);
      Matrix<K> f0 = detail::signed_row_sum(f.components, k, 0, b, rows, dim);
      Matrix<K> f1 = detail::signed_row_sum(f.components, k, 1, b, rows, dim);
      Matrix<K> omtX = Matrix<K>::identity(dim) - Tn(X, b), omtY = Matrix<K>::identity(rows) - Tn(Y, tb);
      detail::compare(rep, "f_0^k(1-T)=(1-T)f_1^k, k=" + std::to_string(k), {}, b, f0 * omtX, omtY * f1);
      detail::compare(rep, "f_1^k N=N f_0^k, k=" + std::to_string(k), {}, b, f1 * Nn(X, b), Nn(Y, tb) * f0);
    }
  }
  auto BX = build_cyclic_bicomplex(X, top), BY = build_cyclic_bicomplex(Y, top);
  auto r0 = morphism_row_maps(f, 0, top), r1 = morphism_row_maps(f, 1, top);
  for (int n = 0; n <= top; ++n) {
    int sd = BX.b.dims[n], td = BY.b.dims[n];
    Matrix<K> omtX = Matrix<K>::identity(sd) - BX.ops.T[n], omtY = Matrix<K>::identity(td) - BY.ops.T[n];
    detail::compare(rep, "fbar_0(1-T)=(1-T)fbar_1", {}, {n, 0}, r0[n] * omtX, omtY * r1[n]);
    detail::compare(rep, "fbar_1 N=N fbar_0", {}, {n, 0}, r1[n] * BX.ops.N[n], BY.ops.N[n] * r0[n]);
    if (n > 0) {
      detail::compare(rep, "b fbar_0 = fbar_0 b", {}, {n, 0}, BY.b.diff[n] * r0[n], r0[n - 1] * BX.b.diff[n]);
      detail::compare(rep, "b' fbar_1 = fbar_1 b'", {}, {n, 0}, BY.bprime.diff[n] * r1[n], r1[n - 1] * BX.bprime.diff[n]);
    }
  }
  return rep;
}

}  // namespace cyclic

#endif
