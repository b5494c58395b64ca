#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "njk/combinatorics.hpp"
#include "njk/random.hpp"
#include "njk/rational.hpp"
#include "njk/sparse_matrix.hpp"
#include "oracles.hpp"

using namespace njk;

TEST(Rational, ParsesAndCanonicalizes) {
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(parse_rational("-2/6"), Rational(-1, 3));
  EXPECT_EQ(parse_rational(" 7 "), Rational(7));
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/-2"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
  EXPECT_EQ(to_string(parse_rational("4/2")), "2");
  EXPECT_EQ(to_string(parse_rational("-3/9")), "-1/3");
}

TEST(Rational, ArbitraryPrecision) {
  Rational big = parse_rational("123456789012345678901234567890/7");
  Rational sq = big * big;
  EXPECT_EQ(sq / big, big);
}

TEST(KoszulSign, SpecExamples) {
  EXPECT_EQ(koszul_sign(Permutation::identity(3), {1, 2, 3}), 1);
  EXPECT_EQ(koszul_sign(Permutation{{2, 1}}, {1, 1}), -1);
  EXPECT_EQ(koszul_sign(Permutation{{2, 1}}, {1, 2}), 1);
  EXPECT_THROW(koszul_sign(Permutation{{2, 1}}, {1}), std::invalid_argument);
  EXPECT_THROW(koszul_sign(Permutation{{1, 1}}, {1, 1}), std::invalid_argument);
}

TEST(ChiSign, SpecExamples) {
  EXPECT_EQ(chi_sign(Permutation::identity(4), {1, 0, 3, 2}), 1);
  EXPECT_EQ(chi_sign(Permutation{{2, 1}}, {0, 0}), -1);
  EXPECT_EQ(chi_sign(Permutation{{2, 1}}, {1, 1}), 1);
}

namespace {

std::vector<Permutation> all_perms(int n) {
  Permutation p = Permutation::identity(n);
  std::vector<Permutation> out;
  do out.push_back(p);
  while (std::next_permutation(p.images.begin(), p.images.end()));
  return out;
}

}  // namespace

TEST(KoszulSign, CompositionLaw) {
  // eps(sigma tau; x) = eps(tau; x_sigma) eps(sigma; x) where x_sigma is
  // the sequence x_sigma(1), ..., x_sigma(n).
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = random_int(rng, 1, 6);
    auto perms = all_perms(n);
    const Permutation& s = perms[static_cast<std::size_t>(random_int(rng, 0, static_cast<int>(perms.size()) - 1))];
    const Permutation& t = perms[static_cast<std::size_t>(random_int(rng, 0, static_cast<int>(perms.size()) - 1))];
    std::vector<int> degs(static_cast<std::size_t>(n));
    for (auto& d : degs) d = random_int(rng, -2, 3);
    std::vector<int> permuted(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) permuted[static_cast<std::size_t>(i - 1)] = degs[static_cast<std::size_t>(s(i) - 1)];
    EXPECT_EQ(koszul_sign(s * t, degs), koszul_sign(t, permuted) * koszul_sign(s, degs));
  }
}

TEST(ChiSign, EqualsSignOnEvenDegrees) {
  for (int n = 1; n <= 6; ++n)
    for (const auto& p : all_perms(n)) {
      std::vector<int> zeros(static_cast<std::size_t>(n), 0);
      ASSERT_EQ(chi_sign(p, zeros), oracle::perm_sign_by_cycles(p.images));
    }
}

TEST(KoszulSign, AllOddIsSign) {
  for (const auto& p : all_perms(5)) EXPECT_EQ(koszul_sign(p, {1, 1, 1, 1, 1}), oracle::perm_sign_by_cycles(p.images));
}

TEST(Shuffles, SpecCounts) {
  auto s11 = enumerate_shuffles({1, 1});
  ASSERT_EQ(s11.size(), 2u);
  EXPECT_EQ(s11[0], Permutation::identity(2));
  EXPECT_EQ(s11[1], (Permutation{{2, 1}}));
  EXPECT_EQ(enumerate_shuffles({2, 1}).size(), 3u);
  EXPECT_EQ(enumerate_shuffles({2, 2}).size(), 6u);
}

TEST(Shuffles, LexOrderAndBlockMonotone) {
  auto s = enumerate_shuffles({2, 1, 2});
  for (std::size_t i = 1; i < s.size(); ++i) EXPECT_LT(s[i - 1].images, s[i].images);
  for (const auto& p : s) {
    EXPECT_TRUE(p.valid());
    EXPECT_LT(p(1), p(2));
    EXPECT_LT(p(4), p(5));
  }
}

TEST(Shuffles, MultinomialCounts) {
  // every composition of total <= 8 into 1..4 positive parts
  std::function<void(std::vector<int>&, int)> rec = [&](std::vector<int>& parts, int left) {
    if (!parts.empty()) {
      std::uint64_t expected = 1;
      int total = 0;
      for (int p : parts) {
        // independent count: n! / prod(p!)
        total += p;
      }
      std::uint64_t fact = 1;
      for (int i = 2; i <= total; ++i) fact *= static_cast<std::uint64_t>(i);
      expected = fact;
      for (int p : parts)
        for (int i = 2; i <= p; ++i) expected /= static_cast<std::uint64_t>(i);
      ASSERT_EQ(enumerate_shuffles(parts).size(), expected);
    }
    if (parts.size() == 4) return;
    for (int p = 1; p <= left; ++p) {
      parts.push_back(p);
      rec(parts, left - p);
      parts.pop_back();
    }
  };
  std::vector<int> parts;
  rec(parts, 8);
}

TEST(LocalShuffles, SpecExamples) {
  auto l11 = enumerate_local_shuffles({1, 1});
  ASSERT_EQ(l11.size(), 1u);
  EXPECT_EQ(l11[0], Permutation::identity(2));
  auto l22 = enumerate_local_shuffles({2, 2});
  EXPECT_EQ(l22.size(), 3u);
  for (const auto& p : l22) EXPECT_LT(p(1), p(3));
  auto single = enumerate_local_shuffles({5});
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0], Permutation::identity(5));
}

TEST(LocalShuffles, SubsetOfShuffles) {
  for (std::vector<int> blocks : {std::vector<int>{1, 2, 1}, {2, 2, 2}, {1, 1, 1, 1}, {3, 1, 2}}) {
    auto all = enumerate_shuffles(blocks);
    std::set<std::vector<int>> pool;
    for (const auto& p : all) pool.insert(p.images);
    for (const auto& p : enumerate_local_shuffles(blocks)) EXPECT_TRUE(pool.count(p.images));
  }
  // (1,...,1) local shuffles: only the identity
  EXPECT_EQ(enumerate_local_shuffles({1, 1, 1, 1}).size(), 1u);
}

TEST(Combinations, IndexRoundTrip) {
  for (int n = 0; n <= 7; ++n)
    for (int k = 0; k <= n; ++k) {
      auto c = combinations(n, k);
      ASSERT_EQ(c.size(), binomial(n, k));
      for (std::size_t i = 0; i < c.size(); ++i) EXPECT_EQ(combination_index(c[i], n), i);
    }
}

TEST(Rank, SpecExamples) {
  EXPECT_EQ(rank(SparseMatrix::from_dense({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 3)), 3u);
  EXPECT_EQ(rank(SparseMatrix(4, 5)), 0u);
  EXPECT_EQ(rank(SparseMatrix::from_dense({{1, 2}, {2, 4}}, 2)), 1u);
}

TEST(Rank, AgreesWithNaiveGauss) {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = static_cast<std::size_t>(random_int(rng, 1, 12));
    const std::size_t c = static_cast<std::size_t>(random_int(rng, 1, 12));
    Matrix m = zero_matrix(r, c);
    // sparse, with forced low rank half of the time
    for (auto& row : m)
      for (auto& x : row)
        if (random_int(rng, 0, 2) == 0) x = random_rational(rng, 5, 4);
    if (trial % 2 && r > 2) {
      m[r - 1] = m[0] + scaled(m[1], Rational(3, 7));
    }
    ASSERT_EQ(rank(SparseMatrix::from_dense(m, c)), oracle::naive_rank(m)) << "trial " << trial;
  }
}

TEST(Rank, LargeIntermediates) {
  // Hilbert matrices are invertible but ill-conditioned
  for (std::size_t n = 1; n <= 10; ++n) {
    Matrix h = zero_matrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) h[i][j] = Rational(1, static_cast<unsigned long>(i + j + 1));
    EXPECT_EQ(rank(SparseMatrix::from_dense(h, n)), n);
  }
}

TEST(Kernel, BasisIsKernelAndComplete) {
  Rng rng(9);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t r = static_cast<std::size_t>(random_int(rng, 1, 7));
    const std::size_t c = static_cast<std::size_t>(random_int(rng, 1, 8));
    Matrix m = random_matrix(rng, r, c, 2);
    if (r > 1) m[0] = m[r - 1];
    SparseMatrix s = SparseMatrix::from_dense(m, c);
    auto k = kernel_basis(s);
    EXPECT_EQ(k.size() + rank(s), c);
    for (const auto& v : k) EXPECT_TRUE(is_zero(s.apply(v)));
    if (!k.empty()) EXPECT_EQ(rank(SparseMatrix::from_columns(c, k)), k.size());
  }
}
