#include <gtest/gtest.h>

#include "boolsketch/errors.hpp"
#include "boolsketch/fourier.hpp"
#include "boolsketch/generators.hpp"
#include "boolsketch/rng.hpp"
#include "oracles.hpp"

using namespace boolsketch;

namespace {

InputPoint pt(std::vector<int> x) { return InputPoint(std::span<const int>(x)); }

SparsePolynomial poly(std::size_t n, std::vector<std::pair<std::vector<std::size_t>, double>> terms) {
  SparsePolynomial f(n);
  for (auto& [idx, c] : terms) f.add(ParitySet::from_indices(n, idx), c);
  return f;
}

SparsePolynomial random_poly(std::size_t n, std::size_t s, Rng& rng) {
  SparsePolynomial f(n);
  while (f.sparsity() < s) {
    gf2::BitVector b(n);
    for (std::size_t i = 0; i < n; ++i) b.set(i, rng.next_bool());
    f.set(ParitySet(b), rng.uniform(-2.0, 2.0));
  }
  return f;
}

}  // namespace

TEST(InputPoint, RejectsNonSigns) {
  std::vector<int> bad{1, 0, -1};
  EXPECT_THROW(InputPoint(std::span<const int>(bad)), InvalidArgument);
  const auto x = pt({-1, 1, -1});
  EXPECT_EQ(x.coords(), (std::vector<int>{-1, 1, -1}));
}

TEST(EvalParity, Examples) {
  const auto x = pt({-1, +1, -1});
  EXPECT_EQ(eval_parity(ParitySet::empty(3), x), 1.0);
  EXPECT_EQ(eval_parity(ParitySet::of(3, {0, 2}), x), 1.0);
  EXPECT_EQ(eval_parity(ParitySet::of(3, {1}), x), 1.0);
  EXPECT_EQ(eval_parity(ParitySet::of(3, {0}), x), -1.0);
  EXPECT_THROW(eval_parity(ParitySet::of(4, {0}), x), DimensionMismatch);
}

TEST(EvalParity, CharacterProperty) {
  Rng rng(1);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng.below(100);
    const auto s = random_parity(n, rng);
    const auto u = random_parity(n, rng);
    const auto x = uniform_point(n, rng);
    EXPECT_EQ(eval_parity(s, x) * eval_parity(u, x), eval_parity(s ^ u, x));
  }
}

TEST(EvalPoly, Examples) {
  const auto f = poly(2, {{{0}, 2.0}, {{1}, 1.0}});
  EXPECT_EQ(eval_poly(f, pt({1, 1})), 3.0);
  EXPECT_EQ(eval_poly(f, pt({-1, 1})), -1.0);
  const auto c = poly(2, {{{}, 5.0}});
  EXPECT_EQ(eval_poly(c, pt({-1, -1})), 5.0);
}

TEST(EvalPoly, MatchesDirectProduct) {
  Rng rng(2);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 3 + rng.below(68);
    const auto f = random_poly(n, 1 + rng.below(6), rng);
    const auto x = uniform_point(n, rng);
    EXPECT_NEAR(eval_poly(f, x), oracle::evaluate(f, x.coords()), 1e-12);
  }
}

TEST(SparsePolynomial, StoresNoZeros) {
  SparsePolynomial f(3);
  f.add(ParitySet::of(3, {0}), 1.5);
  f.add(ParitySet::of(3, {0}), -1.5);
  EXPECT_EQ(f.sparsity(), 0u);
  f.set(ParitySet::of(3, {1}), 0.0);
  EXPECT_EQ(f.sparsity(), 0u);
  EXPECT_THROW(f.set(ParitySet::of(4, {1}), 1.0), DimensionMismatch);
}

TEST(ParitySet, CanonicalOrder) {
  const auto e = ParitySet::empty(4);
  const auto a = ParitySet::of(4, {0, 1});
  const auto b = ParitySet::of(4, {0, 1, 2});
  const auto c = ParitySet::of(4, {0, 2});
  const auto d = ParitySet::of(4, {1});
  EXPECT_LT(e, a);
  EXPECT_LT(a, b);
  EXPECT_LT(b, c);
  EXPECT_LT(c, d);
}

TEST(QMap, Examples) {
  SignMatrix x{1, 2, {1, -1}};
  const auto y = q_map(x);
  EXPECT_FALSE(y.get(0, 0));
  EXPECT_TRUE(y.get(0, 1));
  const auto back = q_inv(gf2::BitMatrix(1, 2));
  EXPECT_EQ(back.entries, (std::vector<int>{1, 1}));
  SignMatrix bad{1, 2, {1, 2}};
  EXPECT_THROW(q_map(bad), InvalidArgument);
}

TEST(QMap, InverseRoundTrip) {
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    SignMatrix x{1 + rng.below(5), 1 + rng.below(90), {}};
    for (std::size_t i = 0; i < x.rows * x.cols; ++i) x.entries.push_back(rng.next_bool() ? 1 : -1);
    const auto back = q_inv(q_map(x));
    EXPECT_EQ(back.entries, x.entries);
  }
}

TEST(BruteForceWht, Examples) {
  const auto chi = brute_force_wht(std::vector<double>{1.0, -1.0});
  EXPECT_EQ(chi, poly(1, {{{0}, 1.0}}));
  const auto seven = brute_force_wht(std::vector<double>(8, 7.0));
  EXPECT_EQ(seven, poly(3, {{{}, 7.0}}));
  // 0.5 + 0.5 x1 x2
  std::vector<double> table(4);
  for (std::uint64_t i = 0; i < 4; ++i) {
    const auto x = oracle::point_of(i, 2);
    table[i] = 0.5 + 0.5 * x[0] * x[1];
  }
  EXPECT_EQ(brute_force_wht(table), poly(2, {{{}, 0.5}, {{0, 1}, 0.5}}));
  EXPECT_THROW(brute_force_wht(std::vector<double>(3, 0.0)), InvalidArgument);
}

TEST(BruteForceWht, MatchesDirectSumAndReconstructsTable) {
  Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 1 + rng.below(8);
    std::vector<double> table(std::size_t{1} << n);
    for (auto& v : table) v = rng.uniform(-3.0, 3.0);
    const auto f = brute_force_wht(table);
    const auto ref = oracle::direct_wht(table, n);
    EXPECT_EQ(f.sparsity(), ref.size());
    for (const auto& [s, c] : f.terms()) {
      EXPECT_NEAR(c, ref.at(oracle::to_int(s.bits())), 1e-12);
    }
    for (std::uint64_t i = 0; i < table.size(); ++i) {
      EXPECT_NEAR(oracle::evaluate(f, oracle::point_of(i, n)), table[i], 1e-9);
    }
  }
}

TEST(EvaluationTable, LayoutMatchesPointEncoding) {
  Rng rng(5);
  const auto f = random_poly(6, 5, rng);
  const auto table = evaluation_table(f);
  for (std::uint64_t i = 0; i < table.size(); ++i) {
    EXPECT_NEAR(table[i], oracle::evaluate(f, oracle::point_of(i, 6)), 1e-12);
  }
}

TEST(GeneralPosition, Examples) {
  const std::vector<double> a{1, 2}, b{1, 1}, c{1, 2, 3};
  EXPECT_TRUE(is_general_position(a));
  EXPECT_FALSE(is_general_position(b));
  EXPECT_FALSE(is_general_position(c));
  EXPECT_DOUBLE_EQ(oracle::min_combination(a), 1.0);
}

TEST(MuSeparated, Examples) {
  const std::vector<double> a{10, 1}, b{1, 1}, c{4};
  EXPECT_TRUE(is_mu_separated(a, 0.5));
  EXPECT_FALSE(is_mu_separated(b, 0.5));
  EXPECT_TRUE(is_mu_separated(c, 3));
  EXPECT_THROW(is_general_position(std::vector<double>(21, 1.0)), InvalidArgument);
}

TEST(MinCombination, MatchesEnumeration) {
  Rng rng(6);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> c(1 + rng.below(9));
    for (auto& v : c) v = static_cast<double>(rng.below(9)) - 4.0 + (rng.next_bool() ? 0.5 : 0.0);
    EXPECT_NEAR(min_signed_combination(c), oracle::min_combination(c), 1e-12);
    const double mu = rng.uniform(0.0, 2.0);
    // general position implies separation at the same threshold; separation is monotone in mu
    if (is_general_position(c, mu)) EXPECT_TRUE(is_mu_separated(c, mu));
    if (is_mu_separated(c, mu)) EXPECT_TRUE(is_mu_separated(c, mu / 2));
  }
}

TEST(UniqueSign, Examples) {
  EXPECT_TRUE(has_unique_sign_property(poly(2, {{{0}, 2.0}, {{1}, 3.0}})));
  const auto dependent = poly(2, {{{0}, 1.0}, {{1}, 1.0}, {{0, 1}, -1.0}});
  EXPECT_FALSE(has_unique_sign_property(dependent));
  const auto report = analyze_sign_patterns(dependent);
  EXPECT_EQ(report.rank, 2u);
  EXPECT_EQ(report.patterns, 4u);
  EXPECT_DOUBLE_EQ(report.max_value, 1.0);
  EXPECT_EQ(report.maximizers, 3u);
}

TEST(UniqueSign, MatchesCubeEnumeration) {
  Rng rng(7);
  for (int t = 0; t < 150; ++t) {
    const std::size_t n = 1 + rng.below(7);
    SparsePolynomial f(n);
    const std::size_t s = 1 + rng.below(std::min<std::size_t>(5, (1u << n) - 1));
    while (f.sparsity() < s) {
      // small integer coefficients make ties common
      f.set(random_parity(n, rng), static_cast<double>(rng.below(5)) - 2.0);
    }
    const auto [best, patterns] = oracle::max_patterns(f);
    const auto report = analyze_sign_patterns(f);
    EXPECT_NEAR(report.max_value, best, 1e-9);
    EXPECT_EQ(report.maximizers, patterns.size());
    if (report.unique()) EXPECT_EQ(*patterns.begin(), report.argmax);
  }
}

TEST(UniqueSign, HoldsUnderEachCondition) {
  Rng rng(8);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 2 + rng.below(8);
    const std::size_t s = 1 + rng.below(std::min<std::size_t>(n, 6));
    for (auto cond : {Condition::kPerturbed, Condition::kIndependent, Condition::kPositive}) {
      const auto f = plant_polynomial(n, s, cond, rng);
      const auto coeffs = f.coefficients();
      if (cond == Condition::kPerturbed && !is_general_position(coeffs)) continue;
      EXPECT_TRUE(has_unique_sign_property(f)) << to_string(cond);
    }
  }
}

TEST(SignPattern, AlignedWithSupport) {
  const auto f = poly(3, {{{0}, 1.0}, {{1, 2}, 1.0}});
  const auto x = pt({-1, -1, 1});
  EXPECT_EQ(sign_pattern(f, x), (std::vector<int>{-1, -1}));
}
