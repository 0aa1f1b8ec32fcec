#ifndef CYCLIC_TRANSFER_HPP
#define CYCLIC_TRANSFER_HPP

#include <memory>
#include <string>
#include <vector>

#include "ainf.hpp"

namespace cyclic {

/**
 * \brief Strong deformation retract of (A, d) onto (H, 0):
 * p i = 1, d h + h d = 1 - i p, and the side conditions h i = 0, p h = 0, h h = 0.
 */
template <class K>
struct RetractData {
  GradedSpace homology;
  MultiMap<K> incl{1, 0, {}};  // H -> A
  MultiMap<K> proj{1, 0, {}};  // A -> H
  MultiMap<K> htp{1, 1, {}};   // A -> A
};

namespace detail {

/// L o X for a linear map L.
template <class K>
MultiMap<K> after(const MultiMap<K>& L, const MultiMap<K>& X) {
  MultiMap<K> out{X.arity, X.degree + L.degree, {}};
  for (auto& [in, v] : X.table)
    for (auto& [j, c] : v)
      if (auto w = L.at({j})) out.add(in, *w, c);
  return out;
}

template <class K>
Matrix<K> matrix_of(const MultiMap<K>& f, int rows, int cols) {
  Matrix<K> m(rows, cols);
  for (auto& [in, v] : f.table)
    for (auto& [j, c] : v) m.add_entry(j, in[0], c);
  return m;
}

/// X o H_T, with the tensor-trick homotopy H_T = sum_j 1^{(x) j} (x) h (x) (ip)^{(x)(r-j-1)} on A^{(x) r}.
template <class K>
MultiMap<K> after_tensor_homotopy(const MultiMap<K>& X, const MultiMap<K>& h, const MultiMap<K>& ip,
                                  const GradedSpace& A, const GradedSpace& tgt) {
  int r = X.arity;
  MultiMap<K> out{r, X.degree + 1, {}};
  Factor<K> one{nullptr, 1, 0, true}, fh{&h, 1, 1, false}, fip{&ip, 1, 0, false};
  for_each_tuple(A, r, tgt.min_degree() - X.degree - 1, tgt.max_degree() - X.degree - 1, [&](const std::vector<int>& in) {
    TensorVec<K> mid;
    for (int j = 0; j < r; ++j) {
      std::vector<Factor<K>> fs(r, one);
      fs[j] = fh;
      for (int a = j + 1; a < r; ++a) fs[a] = fip;
      apply_factors(fs, in, A, K(1), mid);
    }
    SparseVec<K> acc;
    for (auto& [y, c] : mid)
      if (auto v = X.at(y)) acc = axpy(acc, c, *v);
    if (!acc.empty()) out.table[in] = std::move(acc);
  });
  return out;
}

/// X o i^{(x) r}.
template <class K>
MultiMap<K> after_inclusions(const MultiMap<K>& X, const MultiMap<K>& i, const GradedSpace& H) {
  MultiMap<K> out{X.arity, X.degree, {}};
  std::vector<Factor<K>> fs(X.arity, Factor<K>{&i, 1, 0, false});
  for_each_tuple(H, X.arity, 0, std::numeric_limits<int>::max() / 2, [&](const std::vector<int>& in) {
    TensorVec<K> mid;
    apply_factors(fs, in, H, K(1), mid);
    SparseVec<K> acc;
    for (auto& [y, c] : mid)
      if (auto v = X.at(y)) acc = axpy(acc, c, *v);
    if (!acc.empty()) out.table[in] = std::move(acc);
  });
  return out;
}

}  // namespace detail

/// Checks the retract identities; throws RetractInvalid naming the first one that fails.
template <class K>
void check_retract(const AInfAlgebra<K>& A, const RetractData<K>& R) {
  const auto& S = A.space;
  const auto& H = R.homology;
  int a = S.size(), hn = H.size();
  auto bad = [](const std::string& w) { throw Error(Errc::retract_invalid, w); };
  ValidationReport shape;
  detail::check_multimap_shape(shape, "inclusion", R.incl, 1, 0, H, S);
  detail::check_multimap_shape(shape, "projection", R.proj, 1, 0, S, H);
  detail::check_multimap_shape(shape, "homotopy", R.htp, 1, 1, S, S);
  if (!shape.ok()) bad(shape.failures.front());
  Matrix<K> i = detail::matrix_of(R.incl, a, hn), p = detail::matrix_of(R.proj, hn, a), h = detail::matrix_of(R.htp, a, a),
            d = detail::matrix_of(A.d, a, a);
  if (!(p * i == Matrix<K>::identity(hn))) bad("p i != 1");
  if (!(d * h + h * d == Matrix<K>::identity(a) - i * p)) bad("d h + h d != 1 - i p");
  if (!(d * i).is_zero()) bad("d i != 0: H must carry the zero differential");
  if (!(p * d).is_zero()) bad("p d != 0: H must carry the zero differential");
  if (!(h * i).is_zero()) bad("side condition h i = 0 fails");
  if (!(p * h).is_zero()) bad("side condition p h = 0 fails");
  if (!(h * h).is_zero()) bad("side condition h h = 0 fails");
}

/**
 * Retract computed from (A, d): per degree A = B + H + C with B = im d, H spanned by cycles
 * completing B, C a coordinate complement of the cycles, and h inverting d from B to C.
 */
template <class K>
RetractData<K> auto_retract(const AInfAlgebra<K>& A) {
  const auto& S = A.space;
  int a = S.size();
  Matrix<K> d = detail::matrix_of(A.d, a, a);
  std::map<int, std::vector<SparseVec<K>>> C, B, Hs;
  // C: coordinate vectors independent modulo the cycles, degree by degree
  auto cycles = kernel_basis(d);
  for (auto& [deg, cnt] : S.dims()) {
    (void)cnt;
    Echelon<K> e(a);
    for (auto& z : cycles)
      if (!z.empty() && S.degree(z.front().first) == deg) e.insert(z);
    for (int x : S.in_degree(deg)) {
      SparseVec<K> v{{x, K(1)}};
      if (e.insert(v)) C[deg].push_back(v);
    }
  }
  for (auto& [deg, cs] : C)
    for (auto& c : cs) B[deg - 1].push_back(d.apply(c));
  std::vector<std::pair<std::string, int>> hb;
  for (auto& [deg, cnt] : S.dims()) {
    (void)cnt;
    Echelon<K> e(a);
    for (auto& b : B[deg]) e.insert(b);
    int j = 0;
    for (auto& z : cycles)
      if (!z.empty() && S.degree(z.front().first) == deg && e.insert(z)) {
        Hs[deg].push_back(z);
        hb.push_back({"H" + std::to_string(deg) + "_" + std::to_string(j++), deg});
      }
  }
  RetractData<K> R;
  R.homology = GradedSpace(hb);
  // basis change M = [B | H | C] per degree, in flat coordinates
  std::vector<SparseVec<K>> cols;
  std::vector<int> role, hidx;  // 0 = B, 1 = H, 2 = C; hidx = position in H or in C
  std::map<int, int> hstart;
  int hcount = 0;
  for (auto& [deg, cnt] : S.dims()) {
    (void)cnt;
    hstart[deg] = hcount;
    for (auto& v : B[deg]) cols.push_back(v), role.push_back(0), hidx.push_back(-1);
    for (size_t j = 0; j < Hs[deg].size(); ++j) cols.push_back(Hs[deg][j]), role.push_back(1), hidx.push_back(hcount++);
    for (size_t j = 0; j < C[deg].size(); ++j) cols.push_back(C[deg][j]), role.push_back(2), hidx.push_back(-1);
  }
  if (static_cast<int>(cols.size()) != a) throw Error(Errc::retract_invalid, "decomposition does not span A");
  // coordinates through an echelon with tags
  Echelon<K> e(a, a, true);
  for (int c = 0; c < a; ++c) {
    std::vector<K> tag(a);
    tag[c] = K(1);
    if (!e.insert(cols[c], tag)) throw Error(Errc::retract_invalid, "decomposition is not a basis");
  }
  // b-columns pair with their c-columns: B[deg-1][j] = d C[deg][j]
  std::map<int, std::vector<int>> bpos;
  for (int c = 0; c < a; ++c)
    if (role[c] == 0) bpos[S.degree(cols[c].front().first)].push_back(c);
  for (int x = 0; x < a; ++x) {
    auto r = e.reduce({{x, K(1)}});
    // x = sum_c tag_c cols[c]
    for (int c = 0; c < a; ++c) {
      const K& coef = r.tag[c];
      if (coef.is_zero()) continue;
      int deg = S.degree(x);
      if (role[c] == 1) {
        R.proj.add({x}, hidx[c], coef);
      } else if (role[c] == 0) {
        auto& bp = bpos[deg];
        int j = static_cast<int>(std::find(bp.begin(), bp.end(), c) - bp.begin());
        R.htp.add({x}, C[deg + 1][j], coef);
      }
    }
  }
  for (auto& [deg, hs] : Hs)
    for (size_t j = 0; j < hs.size(); ++j) R.incl.add({hstart[deg] + static_cast<int>(j)}, hs[j]);
  return R;
}

template <class K>
struct TransferResult {
  std::shared_ptr<const AInfAlgebra<K>> source, homology;
  std::shared_ptr<const AInfMorphism<K>> incl, proj, roundtrip;  // roundtrip = incl o proj
  std::shared_ptr<const AInfMorphism<K>> identity;
  std::shared_ptr<const AInfHomotopy<K>> htp;                    // identity => incl o proj
};

/**
 * Transferred structure on H and the maps of the retract, built level by level:
 * pi^H_n = -p U_n, i_{n+1} = h U_n where U_n is the morphism relation with pi^H_n removed;
 * p_{n+1} = (-1)^n V_n H_T; the homotopy K_0 = h, K_{n+1} = h W_n - (-1)^n i p W_n H_T.
 */
template <class K>
TransferResult<K> transfer_oracle(std::shared_ptr<const AInfAlgebra<K>> Ap, const RetractData<K>& R) {
  check_retract(*Ap, R);
  const auto& A = *Ap;
  const auto& S = A.space;
  const auto& Hs = R.homology;
  int top = detail::default_cutoff(S);
  auto H = std::make_shared<AInfAlgebra<K>>();
  H->space = Hs;
  H->d = MultiMap<K>{1, -1, {}};
  auto I = std::make_shared<AInfMorphism<K>>();
  I->source = H;
  I->target = Ap;
  I->mut(0) = R.incl;
  MultiMap<K> ip = detail::after(R.incl, R.proj);
  // inclusion and transferred products
  for (int n = 0; n < top; ++n) {
    int hidden = n;  // pi^H_n is not yet known
    Resolver<K> res = [&](const TensorGen& g, bool outer) -> Factor<K> {
      if (g.kind == '1') return {nullptr, 1, 0, true};
      if (g.kind == 'p') {
        if (outer) return {A.pi_at(g.n), g.n + 2, g.n, false};
        if (g.n == hidden) return {nullptr, g.n + 2, g.n, false};
        return {H->pi_at(g.n), g.n + 2, g.n, false};
      }
      return {I->at(g.n), g.n + 1, g.n, false};
    };
    MultiMap<K> U = eval_tensor_sum(expand_ainf_morphism_relation(n), n + 2, n, res, Hs, S);
    MultiMap<K> piH = detail::after(R.proj, U);
    for (auto& [in, v] : piH.table)
      for (auto& [j, c] : v) c = -c;
    piH.degree = n;
    H->pi_mut(n) = piH;
    MultiMap<K> f = detail::after(R.htp, U);
    if (!f.is_zero()) I->mut(n + 1) = f;
  }
  // projection
  auto P = std::make_shared<AInfMorphism<K>>();
  P->source = Ap;
  P->target = H;
  P->mut(0) = R.proj;
  for (int n = 0; n < top; ++n) {
    int hidden = n + 1;
    Resolver<K> res = [&](const TensorGen& g, bool outer) -> Factor<K> {
      if (g.kind == '1') return {nullptr, 1, 0, true};
      if (g.kind == 'p') return {outer ? H->pi_at(g.n) : A.pi_at(g.n), g.n + 2, g.n, false};
      if (g.n == hidden) return {nullptr, g.n + 1, g.n, false};
      return {P->at(g.n), g.n + 1, g.n, false};
    };
    MultiMap<K> V = eval_tensor_sum(expand_ainf_morphism_relation(n), n + 2, n, res, S, Hs);
    if (!detail::after_inclusions(V, R.incl, Hs).is_zero())
      throw Error(Errc::retract_invalid, "projection obstruction at level " + std::to_string(n + 1) + " does not vanish");
    MultiMap<K> p = detail::after_tensor_homotopy(V, R.htp, ip, S, Hs);
    if (n % 2)
      for (auto& [in, v] : p.table)
        for (auto& [j, c] : v) c = -c;
    if (!p.is_zero()) P->mut(n + 1) = p;
  }
  auto G = std::make_shared<AInfMorphism<K>>(compose_ainf(*P, *I));
  auto F = std::make_shared<AInfMorphism<K>>(identity_ainf<K>(Ap));
  auto Kh = std::make_shared<AInfHomotopy<K>>();
  Kh->from = F;
  Kh->to = G;
  Kh->mut(0) = R.htp;
  for (int n = 0; n < top; ++n) {
    int hidden = n + 1;
    Resolver<K> res = [&](const TensorGen& g, bool outer) -> Factor<K> {
      switch (g.kind) {
        case '1': return {nullptr, 1, 0, true};
        case 'p': return {A.pi_at(g.n), g.n + 2, g.n, false};
        case 'f': return {F->at(g.n), g.n + 1, g.n, false};
        case 'g': return {G->at(g.n), g.n + 1, g.n, false};
        default:
          if (g.n == hidden) return {nullptr, g.n + 1, g.n + 1, false};
          return {Kh->at(g.n), g.n + 1, g.n + 1, false};
      }
      (void)outer;
    };
    MultiMap<K> W = eval_tensor_sum(expand_ainf_homotopy_relation(n), n + 2, n + 1, res, S, S);
    if (!detail::after_inclusions(detail::after(R.proj, W), R.incl, Hs).is_zero())
      throw Error(Errc::retract_invalid, "homotopy obstruction at level " + std::to_string(n + 1) + " does not vanish");
    MultiMap<K> k1 = detail::after(R.htp, W);
    MultiMap<K> k2 = detail::after_tensor_homotopy(detail::after(ip, W), R.htp, ip, S, S);
    MultiMap<K> k{n + 2, n + 2, {}};
    for (auto& [in, v] : k1.table) k.add(in, v);
    for (auto& [in, v] : k2.table) k.add(in, v, n % 2 ? K(1) : K(-1));
    if (!k.is_zero()) Kh->mut(n + 1) = k;
  }
  TransferResult<K> out;
  out.source = Ap;
  out.homology = H;
  out.incl = I;
  out.proj = P;
  out.roundtrip = G;
  out.identity = F;
  out.htp = Kh;
  return out;
}

template <class K>
TransferResult<K> transfer_oracle(std::shared_ptr<const AInfAlgebra<K>> A) {
  return transfer_oracle(A, auto_retract(*A));
}

/**
 * The morphism g reached from f along prescribed homotopy components: g_0 = f_0 - d(K_0) and
 * g_{n+1} = (homotopy relation with g_{n+1} removed) - d(K_{n+1}), so that K is a homotopy f => g.
 */
template <class K>
AInfMorphism<K> gauge_transform(const AInfMorphism<K>& f, const std::vector<MultiMap<K>>& Kc) {
  const auto& A = *f.source;
  const auto& B = *f.target;
  AInfHomotopy<K> Kh;
  Kh.comps = Kc;
  AInfMorphism<K> g;
  g.source = f.source;
  g.target = f.target;
  int top = detail::default_cutoff(B.space);
  for (int n = -1; n < top; ++n) {
    int hidden = n + 1;
    Resolver<K> res = [&](const TensorGen& gen, bool outer) -> Factor<K> {
      switch (gen.kind) {
        case '1': return {nullptr, 1, 0, true};
        case 'p': return {outer ? B.pi_at(gen.n) : A.pi_at(gen.n), gen.n + 2, gen.n, false};
        case 'f': return {f.at(gen.n), gen.n + 1, gen.n, false};
        case 'g':
          if (gen.n == hidden) return {nullptr, gen.n + 1, gen.n, false};
          return {g.at(gen.n), gen.n + 1, gen.n, false};
        default: return {Kh.at(gen.n), gen.n + 1, gen.n + 1, false};
      }
    };
    MultiMap<K> rhs = eval_tensor_sum(expand_ainf_homotopy_relation(n), n + 2, n + 1, res, A.space, B.space);
    MultiMap<K> dk = boundary(Kh.at(n + 1), n + 2, n + 2, A.d, A.space, B.d, B.space);
    for (auto& [in, v] : dk.table) rhs.add(in, v, K(-1));
    rhs.degree = n + 1;
    if (!rhs.is_zero()) g.mut(n + 1) = rhs;
  }
  return g;
}

}  // namespace cyclic

#endif
