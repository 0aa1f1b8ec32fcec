#include <gtest/gtest.h>

#include <random>

#include "cyclic/linalg.hpp"

using namespace cyclic;
using Q = Rational;

namespace {

// rank as the size of the largest nonvanishing minor
Q det(std::vector<std::vector<Q>> a) {
  int n = static_cast<int>(a.size());
  if (n == 0) return Q(1);
  Q s(0);
  for (int c = 0; c < n; ++c) {
    if (a[0][c].is_zero()) continue;
    std::vector<std::vector<Q>> minor;
    for (int r = 1; r < n; ++r) {
      std::vector<Q> row;
      for (int j = 0; j < n; ++j)
        if (j != c) row.push_back(a[r][j]);
      minor.push_back(row);
    }
    Q term = a[0][c] * det(minor);
    s += (c % 2 == 0) ? term : -term;
  }
  return s;
}

int minor_rank(const std::vector<std::vector<Q>>& a) {
  int R = static_cast<int>(a.size()), C = static_cast<int>(a[0].size());
  int best = 0;
  for (int rmask = 1; rmask < (1 << R); ++rmask)
    for (int cmask = 1; cmask < (1 << C); ++cmask) {
      int r = __builtin_popcount(rmask), c = __builtin_popcount(cmask);
      if (r != c || r <= best) continue;
      std::vector<std::vector<Q>> m;
      for (int i = 0; i < R; ++i) {
        if (!(rmask >> i & 1)) continue;
        std::vector<Q> row;
        for (int j = 0; j < C; ++j)
          if (cmask >> j & 1) row.push_back(a[i][j]);
        m.push_back(row);
      }
      if (!det(m).is_zero()) best = r;
    }
  return best;
}

std::vector<std::vector<Q>> random_dense(std::mt19937& rng, int r, int c) {
  std::uniform_int_distribution<int> v(-2, 2), z(0, 2);
  std::vector<std::vector<Q>> a(r, std::vector<Q>(c));
  for (auto& row : a)
    for (auto& x : row) x = z(rng) == 0 ? Q(0) : Q(v(rng));
  return a;
}

}  // namespace

TEST(Field, RationalParsing) {
  EXPECT_EQ(Q::parse("3/6"), Q(1) / Q(2));
  EXPECT_EQ(Q::parse("-4"), Q(-4));
  EXPECT_EQ(Q::parse("-1/3").to_string(), "-1/3");
  EXPECT_THROW(Q::parse("1/0"), Error);
  EXPECT_THROW(Q::parse("x"), Error);
  EXPECT_THROW(Q::parse(""), Error);
}

TEST(Field, PrimeFieldArithmetic) {
  Zp::set_modulus(7);
  EXPECT_EQ(Zp(3) * Zp(5), Zp(1));
  EXPECT_EQ(Zp(3).inverse(), Zp(5));
  EXPECT_EQ(Zp(-1), Zp(6));
  EXPECT_EQ(Zp::parse("1/2"), Zp(4));
  EXPECT_THROW(Zp::parse("1/7"), Error);
  EXPECT_THROW(Zp::set_modulus(9), Error);
  EXPECT_EQ(FieldSpec::parse("Fp:7").p, 7u);
  EXPECT_THROW(FieldSpec::parse("R"), Error);
}

TEST(Linalg, RankMatchesMinors) {
  std::mt19937 rng(11);
  for (int it = 0; it < 60; ++it) {
    int r = 1 + it % 4, c = 1 + (it / 4) % 5;
    auto a = random_dense(rng, r, c);
    EXPECT_EQ(rank(Matrix<Q>::from_dense(a)), minor_rank(a));
  }
}

TEST(Linalg, KernelIsKernel) {
  std::mt19937 rng(5);
  for (int it = 0; it < 40; ++it) {
    auto a = random_dense(rng, 1 + it % 5, 2 + it % 6);
    auto m = Matrix<Q>::from_dense(a);
    auto k = kernel_basis(m);
    EXPECT_EQ(static_cast<int>(k.size()), m.cols() - minor_rank(a));
    Echelon<Q> e(m.cols());
    for (auto& x : k) {
      EXPECT_TRUE(m.apply(x).empty());
      EXPECT_TRUE(e.insert(x));
    }
  }
}

TEST(Linalg, ProductAndTranspose) {
  std::mt19937 rng(3);
  auto a = random_dense(rng, 3, 4), b = random_dense(rng, 4, 2);
  auto A = Matrix<Q>::from_dense(a), B = Matrix<Q>::from_dense(b);
  auto C = A * B;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 2; ++j) {
      Q s(0);
      for (int k = 0; k < 4; ++k) s += a[i][k] * b[k][j];
      EXPECT_EQ(C.at(i, j), s);
    }
  EXPECT_EQ((A * B).transpose(), B.transpose() * A.transpose());
  EXPECT_THROW(A * A, Error);
}

TEST(Linalg, CircleHomology) {
  // simplicial circle: vertices v0 v1 v2, edges [01] [12] [02]
  Matrix<Q> d1 = Matrix<Q>::from_dense({{-1, 0, -1}, {1, -1, 0}, {0, 1, 1}});
  Matrix<Q> d0(0, 3), d2(3, 0);
  auto h0 = homology_at(d0, d1);
  auto h1 = homology_at(d1, d2);
  EXPECT_EQ(h0.dim, 1);
  EXPECT_EQ(h1.dim, 1);
  // the rotation v_i -> v_{i+1}
  Matrix<Q> rot0 = Matrix<Q>::from_dense({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}});
  Matrix<Q> rot1 = Matrix<Q>::from_dense({{0, 0, -1}, {1, 0, 0}, {0, -1, 0}});
  EXPECT_EQ(d1 * rot1, rot0 * d1);
  EXPECT_EQ(induced_on_homology(rot0, h0, h0), Matrix<Q>::identity(1));
  EXPECT_EQ(induced_on_homology(rot1, h1, h1), Matrix<Q>::identity(1));
}

TEST(Linalg, HomologyErrors) {
  Matrix<Q> a = Matrix<Q>::from_dense({{1}}), b = Matrix<Q>::from_dense({{1}});
  EXPECT_THROW(homology_at(a, b), Error);
  try {
    homology_at(a, b);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::composition_nonzero);
  }
  // x -> y with d(y)=0 but f sends the cycle y to a non-cycle
  Matrix<Q> dz(1, 1), din(1, 0);
  auto hs = homology_at(dz, din);
  Matrix<Q> dt = Matrix<Q>::from_dense({{1}}), din2(1, 0);
  auto ht = homology_at(dt, din2);
  try {
    induced_on_homology(Matrix<Q>::identity(1), hs, ht);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::not_chain_map);
  }
}

TEST(Linalg, GradedMapFlattens) {
  GradedSpace s({{"b", 1}, {"a", 0}, {"c", 1}});
  EXPECT_EQ(s.labels[0], "a");
  EXPECT_EQ(s.dims().at(1), 2);
  GradedMap<Q> d{s, s, -1, {}};
  d.blocks[1] = Matrix<Q>::from_dense({{1, 2}});
  auto f = d.flat();
  EXPECT_EQ(f.at(0, 1), Q(1));
  EXPECT_EQ(f.at(0, 2), Q(2));
}
