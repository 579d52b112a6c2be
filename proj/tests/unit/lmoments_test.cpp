#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "lmnpt/errors.hpp"
#include "lmnpt/lmoments.hpp"
#include "lmnpt/normal.hpp"
#include "lmnpt/sample_set.hpp"

using namespace lmnpt;

namespace {

double rel_diff(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

// Independent oracle for l2: half the mean absolute pairwise difference.
double half_gini_mean_difference(const std::vector<double>& x) {
  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      sum += std::abs(x[i] - x[j]);
      ++pairs;
    }
  }
  return 0.5 * sum / static_cast<double>(pairs);
}

}  // namespace

TEST(SampleSet, RejectsEmptyNonPositiveAndNonFinite) {
  EXPECT_THROW(SampleSet({}), InsufficientSampleError);
  EXPECT_THROW(SampleSet({1.0, 0.0}), DomainError);
  EXPECT_THROW(SampleSet({1.0, -2.0}), DomainError);
  EXPECT_THROW(SampleSet({1.0, std::nan("")}), DomainError);
  EXPECT_THROW(SampleSet({1.0, INFINITY}), DomainError);
}

TEST(SampleSet, KeepsOriginalOrderAndSortedView) {
  const SampleSet s({3.0, 1.0, 2.0});
  EXPECT_EQ(std::vector<double>(s.values().begin(), s.values().end()),
            (std::vector<double>{3.0, 1.0, 2.0}));
  EXPECT_EQ(std::vector<double>(s.sorted().begin(), s.sorted().end()),
            (std::vector<double>{1.0, 2.0, 3.0}));
  EXPECT_EQ(s.min(), 1.0);
  EXPECT_EQ(s.max(), 3.0);
  const SampleSet t = s.with_appended(0.5);
  EXPECT_EQ(t.size(), 4u);
  EXPECT_EQ(t.min(), 0.5);
  EXPECT_EQ(s.size(), 3u);
}

TEST(SamplePwm, MeanOfTwoPoints) {
  const std::vector<double> x{0.0, 1.0};
  EXPECT_DOUBLE_EQ(sample_pwm(x, 0), 0.5);
}

TEST(SamplePwm, HandEvaluatedFirstOrder) {
  // b1 = (1/3) [0 * 1 + (1/2) * 2 + (2/2) * 3] = 4/3
  const std::vector<double> x{1.0, 2.0, 3.0};
  EXPECT_NEAR(sample_pwm(x, 1), 4.0 / 3.0, 1e-15);
}

TEST(SamplePwm, ConstantSampleGivesConstantOverQPlusOne) {
  // b_q estimates beta_q = E[X F^q] = c / (q + 1) for a constant sample.
  for (std::size_t n : {4u, 7u, 20u}) {
    const std::vector<double> x(n, 5.0);
    for (int q = 0; q <= 3; ++q) {
      EXPECT_NEAR(sample_pwm(x, q), 5.0 / (q + 1), 1e-13) << "n=" << n << " q=" << q;
    }
  }
}

TEST(SamplePwm, OrderIndependent) {
  const std::vector<double> a{4.0, 1.0, 3.0, 2.0, 9.0};
  const std::vector<double> b{1.0, 2.0, 3.0, 4.0, 9.0};
  for (int q = 0; q <= 3; ++q) EXPECT_DOUBLE_EQ(sample_pwm(a, q), sample_pwm(b, q));
}

TEST(SamplePwm, Errors) {
  const std::vector<double> x{1.0, 2.0};
  EXPECT_THROW(sample_pwm(x, 2), InsufficientSampleError);
  EXPECT_THROW(sample_pwm(x, -1), DomainError);
  EXPECT_THROW(sample_pwm(x, 4), DomainError);
  try {
    sample_pwm(x, 3);
    FAIL();
  } catch (const InsufficientSampleError& e) {
    EXPECT_EQ(e.required(), 4u);
    EXPECT_EQ(e.actual(), 2u);
  }
}

TEST(SamplePwm, PlottingPositionVariant) {
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
  double expect = 0.0;
  for (int i = 1; i <= 4; ++i) expect += (i - 0.35) / 4.0 * i;
  expect /= 4.0;
  EXPECT_NEAR(sample_pwm(x, 1, PwmEstimator::PlottingPosition), expect, 1e-15);
  EXPECT_DOUBLE_EQ(sample_pwm(x, 0, PwmEstimator::PlottingPosition), 2.5);
}

TEST(SampleLmoments, SymmetricSample) {
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
  const auto lm = sample_lmoments(x);
  EXPECT_DOUBLE_EQ(lm.l1, 2.5);
  ASSERT_TRUE(lm.ratios_defined());
  EXPECT_NEAR(*lm.tau3, 0.0, 1e-15);
  EXPECT_NEAR(lm.l2, 5.0 / 6.0, 1e-15);
  EXPECT_NEAR(lm.l2, half_gini_mean_difference(x), 1e-15);
}

TEST(SampleLmoments, ConstantSampleHasUndefinedRatios) {
  const std::vector<double> x(6, 3.0);
  const auto lm = sample_lmoments(x);
  EXPECT_DOUBLE_EQ(lm.l1, 3.0);
  EXPECT_EQ(lm.l2, 0.0);
  EXPECT_EQ(lm.l3, 0.0);
  EXPECT_EQ(lm.l4, 0.0);
  EXPECT_FALSE(lm.tau3.has_value());
  EXPECT_FALSE(lm.tau4.has_value());
}

TEST(SampleLmoments, NeedsFourPoints) {
  const std::vector<double> x{1.0, 2.0, 3.0};
  EXPECT_THROW(sample_lmoments(x), InsufficientSampleError);
}

TEST(SampleLmoments, SampleSetOverloadMatchesSpan) {
  const std::vector<double> x{5.0, 1.0, 7.0, 2.0, 2.5};
  const auto a = sample_lmoments(x);
  const auto b = sample_lmoments(SampleSet(x));
  EXPECT_EQ(a.l1, b.l1);
  EXPECT_EQ(a.l2, b.l2);
  EXPECT_EQ(a.l3, b.l3);
  EXPECT_EQ(a.l4, b.l4);
}

TEST(BruteForce, SmallExamples) {
  EXPECT_DOUBLE_EQ(brute_force_lmoment(std::vector<double>{0.0, 1.0}, 2), 0.5);
  EXPECT_NEAR(brute_force_lmoment(std::vector<double>{1.0, 2.0, 3.0}, 2), 2.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(brute_force_lmoment(std::vector<double>{1.0, 2.0, 3.0, 4.0}, 1), 2.5);
}

TEST(BruteForce, Guards) {
  const std::vector<double> big(21, 1.0);
  EXPECT_THROW(brute_force_lmoment(big, 2), DomainError);
  EXPECT_THROW(brute_force_lmoment(std::vector<double>{1.0, 2.0}, 3), InsufficientSampleError);
  EXPECT_THROW(brute_force_lmoment(std::vector<double>{1.0, 2.0}, 0), DomainError);
  EXPECT_THROW(brute_force_lmoment(std::vector<double>{1.0, 2.0}, 5), DomainError);
  EXPECT_NO_THROW(brute_force_lmoment(std::vector<double>(20, 1.0), 4));
}

TEST(Property, OracleEquivalenceRandomSamples) {
  std::mt19937_64 gen(17);
  std::uniform_int_distribution<int> size(4, 12);
  std::lognormal_distribution<double> value(4.0, 0.6);
  for (int rep = 0; rep < 300; ++rep) {
    std::vector<double> x(static_cast<std::size_t>(size(gen)));
    for (auto& v : x) v = value(gen);
    const auto lm = sample_lmoments(x);
    const double l[4] = {lm.l1, lm.l2, lm.l3, lm.l4};
    for (int r = 1; r <= 4; ++r) {
      const double bf = brute_force_lmoment(x, r);
      // Relative to the sample scale so near-zero l3/l4 are judged fairly.
      EXPECT_LE(std::abs(l[r - 1] - bf), 1e-12 * std::max(std::abs(bf), lm.l2))
          << "rep=" << rep << " r=" << r;
    }
  }
}

TEST(Property, ShiftScaleEquivariance) {
  std::mt19937_64 gen(5);
  std::gamma_distribution<double> value(3.0, 2.0);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> x(30);
    for (auto& v : x) v = value(gen);
    const double alpha = 0.5 + rep * 0.1;
    const double gamma = 3.0 * rep - 20.0;
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = alpha * x[i] + gamma;
    const auto a = sample_lmoments(x);
    const auto b = sample_lmoments(y);
    EXPECT_LT(rel_diff(b.l1, alpha * a.l1 + gamma), 1e-12);
    EXPECT_LT(rel_diff(b.l2, alpha * a.l2), 1e-12);
    EXPECT_NEAR(b.l3, alpha * a.l3, 1e-12 * b.l2);
    EXPECT_NEAR(b.l4, alpha * a.l4, 1e-12 * b.l2);
    EXPECT_NEAR(*b.tau3, *a.tau3, 1e-12);
    EXPECT_NEAR(*b.tau4, *a.tau4, 1e-12);
  }
}

TEST(Property, UnbiasedL2OnUniform) {
  std::mt19937_64 gen(2718);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  constexpr int kReps = 20000;
  double sum = 0.0;
  double sum_sq = 0.0;
  std::vector<double> x(10);
  for (int rep = 0; rep < kReps; ++rep) {
    for (auto& v : x) v = u(gen);
    const double l2 = sample_lmoments(x).l2;
    sum += l2;
    sum_sq += l2 * l2;
  }
  const double mean = sum / kReps;
  const double sd = std::sqrt((sum_sq - kReps * mean * mean) / (kReps - 1));
  EXPECT_LT(std::abs(mean - 1.0 / 6.0), 3.0 * sd / std::sqrt(double{kReps}));
}

TEST(PopulationLmoments, StandardNormal) {
  const auto lm = population_lmoments([](double p) { return inverse_normal_cdf(p); });
  EXPECT_NEAR(lm.l1, 0.0, 1e-12);
  EXPECT_NEAR(*lm.tau3, 0.0, 1e-12);
  EXPECT_NEAR(lm.l2, 1.0 / std::sqrt(std::numbers::pi), 1e-9);
  // 30 arctan(sqrt 2) / pi - 9
  EXPECT_NEAR(*lm.tau4, 30.0 * std::atan(std::sqrt(2.0)) / std::numbers::pi - 9.0, 1e-9);
}

TEST(PopulationLmoments, GumbelAgreesAcrossNodeCounts) {
  const auto q = [](double p) { return -std::log(-std::log(p)); };
  const auto a = population_lmoments(q, {512, 32});
  const auto b = population_lmoments(q, {2048, 32});
  EXPECT_NEAR(*a.tau3, *b.tau3, 1e-8);
  EXPECT_NEAR(*a.tau4, *b.tau4, 1e-8);
  // tau3 = 2 log 3 / log 2 - 3, l2 = log 2 for the standard Gumbel.
  EXPECT_NEAR(*a.tau3, 2.0 * std::log(3.0) / std::log(2.0) - 3.0, 1e-9);
  EXPECT_NEAR(a.l2, std::log(2.0), 1e-9);
  EXPECT_NEAR(*a.tau4, 0.150374993, 1e-8);
}

TEST(PopulationLmoments, ConsistentWithLargeGridSample) {
  const auto q = [](double p) { return std::exp(5.0 + 0.3 * inverse_normal_cdf(p)); };
  const auto pop = population_lmoments(q);
  constexpr std::size_t n = 1'000'000;
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = q((static_cast<double>(i) + 0.5) / n);
  const auto smp = sample_lmoments(x);
  EXPECT_LT(rel_diff(pop.l1, smp.l1), 1e-3);
  EXPECT_LT(rel_diff(pop.l2, smp.l2), 1e-3);
  EXPECT_LT(rel_diff(pop.l3, smp.l3), 1e-3);
  EXPECT_LT(rel_diff(pop.l4, smp.l4), 1e-3);
}

TEST(PopulationLmoments, NonFiniteIntegrandNamesP) {
  try {
    population_lmoments([](double p) { return p > 0.7 ? std::nan("") : p; });
    FAIL();
  } catch (const EvaluationError& e) {
    EXPECT_GT(e.at(), 0.7);
    EXPECT_LT(e.at(), 1.0);
  }
}
