#include <gtest/gtest.h>

#include <cmath>

#include "boolsketch/errors.hpp"
#include "boolsketch/generators.hpp"
#include "boolsketch/learners.hpp"
#include "oracles.hpp"

using namespace boolsketch;

namespace {

SparsePolynomial two_terms(std::size_t n) {
  SparsePolynomial f(n);
  f.set(ParitySet::of(n, {0}), 2.0);
  f.set(ParitySet::of(n, {1}), 3.0);
  return f;
}

bool same(const SparsePolynomial& a, const SparsePolynomial& b, double tol) {
  if (a.sparsity() != b.sparsity()) return false;
  for (const auto& [s, c] : a.terms()) {
    if (std::abs(b.coefficient(s) - c) > tol) return false;
  }
  return true;
}

}  // namespace

TEST(LearnConfig, DefaultsAndValidation) {
  LearnConfig c;
  c.s = 3;
  EXPECT_EQ(c.m1_for(30), 2u * 30 * 8);
  EXPECT_EQ(c.m_for(30), 4096u * 30 * 9);
  EXPECT_EQ(c.cap_value(), 32u);
  c.s = 0;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c.s = 1;
  c.m1 = 0;
  EXPECT_THROW(c.validate(), InvalidArgument);
}

TEST(CandidateSupport, ContainsPlantedSetsAndSolvesBothSystems) {
  const auto f = two_terms(3);
  PolynomialOracle oracle(f);
  const auto w = collect_max_rows(draw_batch(oracle, 200, 3));
  const auto s = candidate_support(w, 16);
  EXPECT_TRUE(s.contains(ParitySet::of(3, {0})));
  EXPECT_TRUE(s.contains(ParitySet::of(3, {1})));
  EXPECT_TRUE(s.contains(ParitySet::empty(3)));
  EXPECT_LE(s.size(), 8u);
  gf2::BitVector ones(w.n_max());
  for (std::size_t i = 0; i < w.n_max(); ++i) ones.set(i);
  auto expected = oracle::solve_all(w.rows, ones);
  const auto zeros = oracle::solve_all(w.rows, gf2::BitVector(w.n_max()));
  expected.insert(expected.end(), zeros.begin(), zeros.end());
  std::sort(expected.begin(), expected.end());
  expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
  std::vector<std::uint64_t> got;
  for (const auto& p : s) got.push_back(oracle::to_int(p.bits()));
  std::sort(got.begin(), got.end());
  EXPECT_EQ(got, expected);
}

TEST(CandidateSupport, FullRankKernelIsTrivial) {
  MaxWindow w;
  w.rows = gf2::BitMatrix(4, 4);
  for (std::size_t i = 0; i < 4; ++i) w.rows.set(i, i);
  w.values.assign(4, 1.0);
  const auto s = candidate_support(w, 4);
  // p = 0 from the homogeneous system, all-ones from the other
  EXPECT_EQ(s.size(), 2u);
  EXPECT_TRUE(s.contains(ParitySet::empty(4)));
}

TEST(CandidateSupport, SingleRowExceedsCap) {
  const std::size_t n = 8;
  MaxWindow w;
  w.rows = gf2::BitMatrix(1, n);
  w.rows.set(0, 0);
  w.values = {1.0};
  EXPECT_THROW(candidate_support(w, std::uint64_t{1} << 3), SolutionCountExceeded);
}

TEST(LearnBool, TwoTermsWithDefaultSampleSizes) {
  int ok = 0;
  for (int seed = 0; seed < 20; ++seed) {
    const auto f = two_terms(10);
    PolynomialOracle oracle(f);
    LearnConfig cfg;
    cfg.s = 2;
    Rng rng(static_cast<std::uint64_t>(seed));
    try {
      const auto out = learn_bool(oracle, cfg, rng);
      ok += same(out.v_opt, f, 1e-6);
      for (const auto& [s, c] : out.v_opt.terms()) EXPECT_TRUE(out.candidates.contains(s));
      EXPECT_TRUE(out.candidates.contains(ParitySet::empty(10)));
    } catch (const LearnFailed&) {
    }
  }
  EXPECT_GE(ok, 19);
}

TEST(LearnBool, Constant) {
  SparsePolynomial f(6);
  f.set(ParitySet::empty(6), 5.0);
  PolynomialOracle oracle(f);
  LearnConfig cfg;
  cfg.m = 200;
  Rng rng(1);
  const auto out = learn_bool(oracle, cfg, rng);
  EXPECT_TRUE(same(out.v_opt, f, 1e-9));
}

TEST(LearnBool, NoUniqueSignIsOutsideGuarantee) {
  SparsePolynomial f(4);
  f.set(ParitySet::of(4, {0}), 1.0);
  f.set(ParitySet::of(4, {1}), 1.0);
  f.set(ParitySet::of(4, {0, 1}), -1.0);
  ASSERT_FALSE(has_unique_sign_property(f));
  PolynomialOracle oracle(f);
  LearnConfig cfg;
  cfg.s = 3;
  cfg.m = 500;
  Rng rng(2);
  try {
    (void)learn_bool(oracle, cfg, rng);
  } catch (const LearnFailed& e) {
    EXPECT_FALSE(e.stage().empty());
  }
}

TEST(LearnBool, UnderstatedSparsityFailsAtCandidateStage) {
  Rng plant(3);
  const auto f = plant_polynomial(30, 4, Condition::kIndependent, plant);
  PolynomialOracle oracle(f);
  LearnConfig cfg;
  cfg.s = 1;
  cfg.m1 = 40;
  Rng rng(4);
  try {
    (void)learn_bool(oracle, cfg, rng);
    FAIL() << "expected LearnFailed";
  } catch (const LearnFailed& e) {
    EXPECT_EQ(e.stage(), "candidate_support");
  }
}

TEST(LearnBool, PlantedFamiliesRecoverExactly) {
  for (auto cond : {Condition::kPerturbed, Condition::kIndependent, Condition::kPositive}) {
    int ok = 0;
    for (int t = 0; t < 20; ++t) {
      Rng rng(100 + t);
      const auto f = plant_polynomial(30, 3, cond, rng);
      PolynomialOracle oracle(f);
      LearnConfig cfg;
      cfg.s = 3;
      cfg.m = 16 * 30 * 3;
      try {
        const auto out = learn_bool(oracle, cfg, rng);
        ok += same(out.v_opt, f, 1e-6);
      } catch (const LearnFailed&) {
      }
    }
    EXPECT_GE(ok, 18) << to_string(cond);
  }
}

TEST(LearnBoolNoisy, ZeroNoiseMatchesNoiseless) {
  const auto f = two_terms(12);
  PolynomialOracle oracle(f);
  LearnConfig cfg;
  cfg.s = 2;
  cfg.m = 1000;
  Rng a(5), b(5);
  const auto x = learn_bool(oracle, cfg, a);
  const auto y = learn_bool_noisy(oracle, cfg, b);
  EXPECT_EQ(x.v_opt, y.v_opt);
  EXPECT_EQ(x.beta, y.beta);
}

TEST(LearnBoolNoisy, ErrorWithinBound) {
  const std::size_t n = 12;
  SparsePolynomial f1(n);
  f1.set(ParitySet::of(n, {0}), 10.0);
  f1.set(ParitySet::of(n, {1}), 20.0);
  SparsePolynomial tail(n);
  tail.set(ParitySet::of(n, {4, 5}), 0.03);
  tail.set(ParitySet::of(n, {7}), -0.015);
  const double eps = 0.05, nu = 0.05;
  NoisyPolynomialOracle oracle(f1, NoiseSpec{eps, nu, tail});
  LearnConfig cfg;
  cfg.s = 2;
  cfg.epsilon = eps;
  cfg.nu = nu;
  cfg.m = 4000;
  int ok = 0;
  for (int t = 0; t < 10; ++t) {
    Rng rng(200 + t);
    const auto out = learn_bool_noisy(oracle, cfg, rng);
    double err = 0.0;
    for (const auto& [s, c] : f1.terms()) err += std::pow(c - out.v_opt.coefficient(s), 2);
    for (const auto& [s, c] : out.v_opt.terms()) {
      if (f1.coefficient(s) == 0.0) err += c * c;
    }
    ok += std::sqrt(err) <= 13 * eps + 13 * nu;
  }
  EXPECT_GE(ok, 9);
}
