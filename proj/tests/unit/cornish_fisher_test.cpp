#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "lmnpt/cornish_fisher.hpp"
#include "lmnpt/errors.hpp"
#include "lmnpt/normal.hpp"

using namespace lmnpt;

TEST(CentralMoments, SymmetricSample) {
  const std::vector<double> x{1, 2, 3, 4, 5};
  const auto cm = sample_central_moments(x);
  EXPECT_DOUBLE_EQ(cm.mean, 3.0);
  EXPECT_NEAR(cm.skewness, 0.0, 1e-15);
  EXPECT_NEAR(cm.sd, std::sqrt(2.5), 1e-15);
  // G2 for 1..5: g2 = 1.7 - 3 = -1.3, G2 = 4/(3*2) * (6 * -1.3 + 6) = -1.2
  EXPECT_NEAR(cm.excess_kurtosis, -1.2, 1e-13);
}

TEST(CentralMoments, AdjustedSkewnessHandExample) {
  const std::vector<double> x{0, 0, 0, 1};
  EXPECT_NEAR(sample_central_moments(x).skewness, 2.0, 1e-13);
}

TEST(CentralMoments, ScaleEquivariance) {
  std::mt19937_64 gen(3);
  std::gamma_distribution<double> g(2.0, 5.0);
  std::vector<double> x(50);
  for (auto& v : x) v = g(gen);
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = 3.5 * x[i] + 10.0;
  const auto a = sample_central_moments(x);
  const auto b = sample_central_moments(y);
  EXPECT_NEAR(b.sd, 3.5 * a.sd, 1e-12 * b.sd);
  EXPECT_NEAR(b.skewness, a.skewness, 1e-12);
  EXPECT_NEAR(b.excess_kurtosis, a.excess_kurtosis, 1e-11);
}

TEST(CentralMoments, Errors) {
  EXPECT_THROW(sample_central_moments(std::vector<double>{1, 2, 3}), InsufficientSampleError);
  EXPECT_THROW(sample_central_moments(std::vector<double>(5, 2.0)), DegenerateError);
}

TEST(CfQuantile, NormalCaseCollapses) {
  const CentralMomentSummary cm{100.0, 10.0, 0.0, 0.0};
  for (double p : {0.01, 0.2, 0.5, 0.9, 0.99}) {
    EXPECT_NEAR(cf_quantile(cm, p), 100.0 + 10.0 * inverse_normal_cdf(p), 1e-12);
  }
}

TEST(CfQuantile, SeriesArithmeticAtMedian) {
  EXPECT_NEAR(cf_quantile({100.0, 10.0, 0.6, 0.0}, 0.5), 100.0 - 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(cf_quantile({50.0, 2.0, 0.0, 3.7}, 0.5), 50.0);
}

TEST(CfQuantile, Errors) {
  EXPECT_THROW(cf_quantile({1.0, 0.0, 0.0, 0.0}, 0.5), DegenerateError);
  EXPECT_THROW(cf_quantile({1.0, 1.0, 0.0, 0.0}, 0.0), DomainError);
}

TEST(CfQuantile, LocationScaleEquivariance) {
  const CentralMomentSummary cm{20.0, 3.0, 0.4, 0.9};
  for (double p : {0.05, 0.5, 0.95}) {
    const double base = cf_quantile(cm, p);
    const CentralMomentSummary moved{2.0 * cm.mean - 5.0, 2.0 * cm.sd, cm.skewness, cm.excess_kurtosis};
    EXPECT_NEAR(cf_quantile(moved, p), 2.0 * base - 5.0, 1e-12);
  }
}

TEST(CfQuantile, NormalPopulationMatchesTruth) {
  const CentralMomentSummary cm{167.0, 11.69, 0.0, 0.0};
  for (double p : default_grid()) {
    EXPECT_LE(std::abs(cf_quantile(cm, p) - (167.0 + 11.69 * inverse_normal_cdf(p))), 0.002 * 11.69);
  }
}

TEST(CfValidity, Examples) {
  EXPECT_EQ(cf_validity(0.0, 0.0).kind, ValidityKind::Valid);
  const auto heavy = cf_validity(0.0, 4.0);
  EXPECT_EQ(heavy.kind, ValidityKind::Valid);
  EXPECT_NEAR(heavy.h_value, -1.0, 1e-15);
  EXPECT_EQ(cf_validity(2.0, 0.0).kind, ValidityKind::InvalidLeadingCoefficient);
  EXPECT_EQ(cf_validity(0.0, 10.0).kind, ValidityKind::InvalidDiscriminant);
  EXPECT_EQ(cf_validity(std::nan(""), 0.0).kind, ValidityKind::UndefinedRatios);
}

TEST(CfValidity, ValidMeansMonotoneEverywhere) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> s(-2.0, 2.0);
  std::uniform_real_distribution<double> k(-1.0, 8.0);
  for (int i = 0; i < 2000; ++i) {
    const double sv = s(gen);
    const double kv = k(gen);
    const auto slope = CfSlope::from_shape(sv, kv);
    if (cf_validity(sv, kv).valid()) {
      EXPECT_TRUE(slope.nonnegative_on(-50.0, 50.0)) << sv << " " << kv;
    } else {
      EXPECT_FALSE(slope.nonnegative_on(-1e6, 1e6)) << sv << " " << kv;
    }
  }
}

TEST(CfSlope, MatchesFiniteDifference) {
  const double s = 0.7;
  const double k = 1.3;
  const auto slope = CfSlope::from_shape(s, k);
  const auto w = [&](double z) {
    return z + (z * z - 1) * s / 6 + (z * z * z - 3 * z) * k / 24 - (2 * z * z * z - 5 * z) * s * s / 36;
  };
  for (double z : {-2.0, -0.5, 0.0, 1.0, 2.5}) {
    const double h = 1e-5;
    const double fd = (w(z + h) - w(z - h)) / (2 * h);
    EXPECT_NEAR(slope.a * z * z + slope.b * z + slope.c, fd, 1e-8);
  }
}
