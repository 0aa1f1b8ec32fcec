#include <gtest/gtest.h>

#include <set>

#include "cyclic/builtin_fixtures.hpp"
#include "cyclic/golden.hpp"

using namespace cyclic;

TEST(Splits, CountsAreBinomialSums) {
  for (int k = 0; k <= 8; ++k) {
    EXPECT_EQ(static_cast<int>(admissible_splits(k, true).size()), 1 << k);
    if (k >= 1) {
      EXPECT_EQ(static_cast<int>(admissible_splits(k, false).size()), (1 << k) - 2);
    }
  }
}

TEST(Splits, AgreeWithSubsetEnumeration) {
  for (int k = 1; k <= 8; ++k) {
    std::set<std::pair<std::vector<int>, int>> brute, subsets;
    for (auto& s : admissible_splits(k, true)) brute.insert({s.sigma, s.sign});
    for (int mask = 0; mask < (1 << k); ++mask) {
      std::vector<int> l, r;
      for (int i = 0; i < k; ++i) (mask >> i & 1 ? l : r).push_back(i);
      int inv = 0;
      for (int a : l)
        for (int b : r)
          if (a > b) ++inv;
      l.insert(l.end(), r.begin(), r.end());
      subsets.insert({l, inv % 2});
    }
    EXPECT_EQ(brute, subsets);
  }
}

TEST(Splits, HatKeepsPartsIncreasing) {
  IndexTuple t{0, 2, 3, 7, 9};
  for (auto& s : admissible_splits(5, false)) {
    auto [l, r] = split_tuple(s, t);
    EXPECT_TRUE(is_index_tuple(l));
    EXPECT_TRUE(is_index_tuple(r));
    // the right part is a subsequence of t
    for (int x : r) EXPECT_NE(std::find(t.begin(), t.end(), x), t.end());
  }
  EXPECT_EQ(hat_tuple({2, 0, 1}, {1, 4, 6}), (IndexTuple{4, 1, 4}));
}

TEST(Splits, SymbolicAgreesWithConcrete) {
  IndexTuple t{1, 3, 4, 8};
  for (auto& s : admissible_splits(4, true)) {
    auto [l, r] = split_tuple(s, t);
    auto [sl, sr] = split_symbolic(s, symbolic_tuple(4));
    EXPECT_EQ(substitute(sl, t), l);
    EXPECT_EQ(substitute(sr, t), r);
  }
}

TEST(Splits, PermutationSign) {
  EXPECT_EQ(permutation_sign({0, 1, 2}), 1);
  EXPECT_EQ(permutation_sign({1, 0, 2}), -1);
  EXPECT_EQ(permutation_sign({2, 0, 1}), 1);
}

TEST(FormalSums, TextRoundTrip) {
  for (int k = 0; k <= 4; ++k) {
    for (auto s : {expand_face_relation(k), expand_morphism_relation(k), expand_composition(k),
                   expand_homotopy_relation(k)})
      EXPECT_EQ(parse_face_sum(to_string(s)), s);
  }
  for (int n = -1; n <= 3; ++n)
    for (auto s : {expand_ainf_relation(n), expand_ainf_morphism_relation(n), expand_ainf_composition(n),
                   expand_ainf_homotopy_relation(n)})
      EXPECT_EQ(parse_tensor_sum(to_string(s)), s);
  EXPECT_THROW(parse_face_sum("D(i1)"), Error);
  EXPECT_THROW(parse_tensor_sum("+q0(p1)"), Error);
}

TEST(FormalSums, TermCounts) {
  EXPECT_EQ(expand_face_relation(3).size(), 6u);
  EXPECT_EQ(expand_morphism_relation(3).size(), 14u);
  EXPECT_EQ(expand_composition(3).size(), 8u);
  EXPECT_EQ(expand_ainf_homotopy_relation(1).size(), 12u);
  EXPECT_EQ(expand_ainf_relation(1).size(), 5u);
}

TEST(FormalSums, CompositionsAndEpsilon) {
  EXPECT_EQ(compositions(2, 3).size(), 6u);
  EXPECT_EQ(compositions(0, 0).size(), 1u);
  EXPECT_EQ(epsilon_sign_exponent({0, 1}), 1);
  EXPECT_EQ(epsilon_sign_exponent({1, 0}), 0);
}

TEST(Golden, BuiltinFixturesMatchExceptDocumentedTypos) {
  auto fixtures = parse_golden_fixtures(builtin_golden_fixtures());
  int deviations = 0;
  for (auto& f : fixtures) {
    auto r = check_golden(f);
    EXPECT_NE(r.status, GoldenStatus::mismatch) << f.family << " " << f.arity << "\n" << r.diff;
    if (r.status == GoldenStatus::expected_deviation) ++deviations;
  }
  EXPECT_EQ(deviations, 2);
}

TEST(Golden, DeviationsAreTheKnownSubstitutions) {
  auto fixtures = parse_golden_fixtures(builtin_golden_fixtures());
  for (auto& f : fixtures) {
    if (!f.expected_deviation) continue;
    auto r = check_golden(f);
    ASSERT_EQ(r.only_fixture.size(), r.only_generated.size());
    // each printed term differs from a generated one by a single letter
    for (size_t i = 0; i < r.only_fixture.size(); ++i) {
      bool found = false;
      for (auto& g : r.only_generated) {
        if (g.size() != r.only_fixture[i].size()) continue;
        int diff = 0;
        for (size_t c = 0; c < g.size(); ++c) diff += g[c] != r.only_fixture[i][c];
        found |= diff == 1;
      }
      EXPECT_TRUE(found) << r.only_fixture[i];
    }
  }
}

TEST(Golden, CorruptedFixtureIsReported) {
  GoldenFixture f{"face_relation", 2, false, "+D(i2-1)D(i1) +D(i1)D(i2)", 1};
  auto r = check_golden(f);
  EXPECT_EQ(r.status, GoldenStatus::mismatch);
  EXPECT_NE(r.diff.find("-+D(i1)D(i2)"), std::string::npos);
  EXPECT_NE(r.diff.find("+-D(i1)D(i2)"), std::string::npos);
}
