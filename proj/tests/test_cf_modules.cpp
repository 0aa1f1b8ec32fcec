#include <gtest/gtest.h>

#include "cyclic/bicomplex.hpp"
#include "cyclic/lambda.hpp"
#include "cyclic/transfer.hpp"
#include "support.hpp"

using namespace cyclic;
using support::Q;

namespace {

using ModPtr = std::shared_ptr<const CFModule<Q>>;
using MorPtr = std::shared_ptr<const AInfMorphism<Q>>;

/// Cyclic bar construction of an ungraded algebra, built directly from structure constants.
SimplicialModule<Q> cyclic_bar(const support::ClassicalOracle& o, int T) {
  SimplicialModule<Q> s;
  s.carrier.truncation = T;
  for (int n = 0; n <= T; ++n) s.carrier.dims[{n, 0}] = o.words(n);
  for (int n = 0; n <= T; ++n) {
    int w = o.words(n);
    Matrix<Q> t(w, w);
    for (int x = 0; x < w; ++x) {
      auto a = o.decode(x, n);
      std::vector<int> r{a[n]};
      r.insert(r.end(), a.begin(), a.begin() + n);
      t.add_entry(o.encode(r), x, Q(1));
    }
    s.t[{n, 0}] = t;
    if (n == 0) continue;
    for (int i = 0; i <= n; ++i) {
      Matrix<Q> f(o.words(n - 1), w);
      for (int x = 0; x < w; ++x) {
        auto a = o.decode(x, n);
        for (int c = 0; c < o.dim; ++c) {
          std::vector<int> r;
          Q v;
          if (i < n) {
            v = o.mu[a[i]][a[i + 1]][c];
            r.assign(a.begin(), a.begin() + i);
            r.push_back(c);
            r.insert(r.end(), a.begin() + i + 2, a.end());
          } else {
            v = o.mu[a[n]][a[0]][c];
            r.push_back(c);
            r.insert(r.end(), a.begin() + 1, a.begin() + n);
          }
          if (!v.is_zero()) f.add_entry(o.encode(r), x, v);
        }
      }
      s.faces[{i, {n, 0}}] = f;
    }
  }
  return s;
}

std::vector<support::AlgebraBuilder> ungraded() {
  std::vector<support::AlgebraBuilder> v;
  v.push_back(support::AlgebraBuilder({{"1", 0}, {"x", 0}}).unit("1"));
  v.push_back(support::AlgebraBuilder({{"e", 0}, {"f", 0}}).mul("e", "e", "e").mul("f", "f", "f"));
  v.push_back(support::AlgebraBuilder({{"1", 0}, {"x", 0}}).unit("1").mul("x", "x", "x"));
  v.push_back(support::AlgebraBuilder({{"a", 0}, {"b", 0}}).mul("a", "a", "b"));
  return v;
}

MorPtr gauge(const MorPtr& f, std::mt19937& rng) {
  auto K = support::random_homotopy_components(f->source->space, f->target->space, rng);
  return std::make_shared<const AInfMorphism<Q>>(gauge_transform(*f, K));
}

}  // namespace

TEST(FromSimplicial, CyclicBarMatchesTensorModule) {
  for (auto& b : ungraded()) {
    auto o = support::oracle_of(b.A);
    auto X = from_simplicial(cyclic_bar(o, 5));
    auto rep = validate_cf_module(X);
    EXPECT_TRUE(rep.ok()) << rep.summary();
    EXPECT_EQ(cyclic_homology(X, 5).dims, o.hc(5));
    EXPECT_EQ(cyclic_homology(X, 5).dims, hc_of_ainf(b.A, 5).dims);
  }
}

TEST(FromSimplicial, RejectsBrokenIdentities) {
  auto o = support::oracle_of(ungraded()[2].A);
  auto s = cyclic_bar(o, 3);
  auto& f = s.faces[{1, {2, 0}}];
  f.add_entry(0, 0, Q(1));
  try {
    from_simplicial(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::simplicial_relation_violated);
  }
  auto s2 = cyclic_bar(o, 3);
  s2.t[{2, 0}] = Matrix<Q>::identity(o.words(2));
  EXPECT_THROW(from_simplicial(s2), Error);
}

TEST(Validators, CatchPerturbedFaceAndT) {
  auto A = support::fixture_zx();
  auto X = build_lambda(A, 4);
  ASSERT_TRUE(validate_cf_module(X).ok());
  auto Y = X;
  auto& blk = Y.faces.at({0}).blocks.begin()->second;
  blk.add_entry(0, 0, Q(1));
  EXPECT_FALSE(validate_cf_module(Y).ok());
  auto Z = X;
  auto& tb = Z.t.blocks.at({1, 1});
  tb = tb * Q(-1);
  EXPECT_FALSE(validate_cf_module(Z).ok());
}

TEST(Validators, CatchPerturbedMorphism) {
  std::mt19937 rng(9);
  auto A = std::make_shared<const AInfAlgebra<Q>>(support::fixture_massey());
  auto t = transfer_oracle(A);
  auto LA = std::make_shared<const CFModule<Q>>(build_lambda(*A, 4));
  auto LH = std::make_shared<const CFModule<Q>>(build_lambda(*t.homology, 4));
  auto Lp = induce_cf_morphism(*t.proj, LA, LH);
  ASSERT_TRUE(validate_cf_morphism(Lp).ok());
  int perturbed = 0;
  for (auto& [tp, m] : Lp.components) {
    if (tp.size() != 1 || m.blocks.empty()) continue;
    auto bad = Lp;
    auto& blk = bad.components.at(tp).blocks.begin()->second;
    blk.add_entry(0, 0, Q(1));
    EXPECT_FALSE(validate_cf_morphism(bad).ok()) << tuple_string(tp);
    ++perturbed;
  }
  EXPECT_GT(perturbed, 0);
}

TEST(Composition, StrictCarriersClosedAndAssociative) {
  std::mt19937 rng(17);
  int pairs = 0, triples = 0;
  while (pairs < 50) {
    auto s = support::random_dg_algebra(rng);
    auto A = std::make_shared<const AInfAlgebra<Q>>(support::transformed(s.A, rng));
    ASSERT_TRUE(validate_ainf(*A).ok()) << s.name;
    auto LA = std::make_shared<const CFModule<Q>>(build_lambda(*A, 5));
    // the tensor module of a dg algebra has only single faces
    for (auto& [tp, m] : LA->faces) ASSERT_TRUE(tp.size() == 1 || m.is_zero()) << tuple_string(tp);
    auto id = std::make_shared<const AInfMorphism<Q>>(identity_ainf(A));
    std::vector<CFMorphism<Q>> maps;
    for (int j = 0; j < 4; ++j) {
      auto Lf = induce_cf_morphism(*gauge(id, rng), LA, LA);
      ASSERT_TRUE(validate_cf_morphism(Lf).ok()) << s.name;
      maps.push_back(std::move(Lf));
    }
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4 && pairs < 50; ++j) {
        auto gf = compose_morphisms(maps[i], maps[j]);
        auto rep = validate_cf_morphism(gf);
        EXPECT_TRUE(rep.ok()) << s.name << "\n" << rep.summary();
        ++pairs;
      }
    auto left = compose_morphisms(compose_morphisms(maps[0], maps[1]), maps[2]);
    auto right = compose_morphisms(maps[0], compose_morphisms(maps[1], maps[2]));
    EXPECT_TRUE(support::same_components(left.components, right.components)) << s.name;
    ++triples;
    auto idm = identity_morphism(LA);
    EXPECT_TRUE(support::same_components(compose_morphisms(idm, maps[0]).components, maps[0].components));
    EXPECT_TRUE(support::same_components(compose_morphisms(maps[0], idm).components, maps[0].components));
  }
  EXPECT_GE(triples, 5);
}

TEST(Homotopies, NegateAndAdd) {
  std::mt19937 rng(23);
  int checked = 0;
  for (int trial = 0; trial < 200 && checked < 4; ++trial) {
    auto s = support::random_dg_algebra(rng);
    auto A = std::make_shared<const AInfAlgebra<Q>>(support::transformed(s.A, rng));
    auto LA = std::make_shared<const CFModule<Q>>(build_lambda(*A, 4));
    auto f = std::make_shared<const AInfMorphism<Q>>(identity_ainf(A));
    auto K1 = support::random_homotopy_components(A->space, A->space, rng);
    auto g = std::make_shared<const AInfMorphism<Q>>(gauge_transform(*f, K1));
    auto K2 = support::random_homotopy_components(A->space, A->space, rng);
    auto e = std::make_shared<const AInfMorphism<Q>>(gauge_transform(*g, K2));
    auto Lf = std::make_shared<const CFMorphism<Q>>(induce_cf_morphism(*f, LA, LA));
    auto Lg = std::make_shared<const CFMorphism<Q>>(induce_cf_morphism(*g, LA, LA));
    auto Le = std::make_shared<const CFMorphism<Q>>(induce_cf_morphism(*e, LA, LA));
    if (support::same_components(Lf->components, Lg->components) ||
        support::same_components(Lg->components, Le->components))
      continue;
    auto h1 = induce_cf_homotopy(AInfHomotopy<Q>{f, g, K1}, Lf, Lg);
    auto h2 = induce_cf_homotopy(AInfHomotopy<Q>{g, e, K2}, Lg, Le);
    if (!validate_cf_homotopy(h1).ok() || !validate_cf_homotopy(h2).ok()) continue;
    auto r = validate_cf_homotopy(negate_homotopy(h1));
    EXPECT_TRUE(r.ok()) << r.summary();
    auto sum = add_homotopies(h1, h2);
    EXPECT_EQ(sum.from, Lf);
    EXPECT_EQ(sum.to, Le);
    r = validate_cf_homotopy(sum);
    EXPECT_TRUE(r.ok()) << r.summary();
    CFHomotopy<Q> zero{Lf, Lf, {}};
    EXPECT_TRUE(validate_cf_homotopy(zero).ok());
    CFHomotopy<Q> wrong{Lf, Le, h1.components};
    EXPECT_FALSE(validate_cf_homotopy(wrong).ok());
    ++checked;
  }
  EXPECT_GE(checked, 4);
}
