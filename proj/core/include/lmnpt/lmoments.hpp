#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>

#include "lmnpt/quadrature.hpp"
#include "lmnpt/sample_set.hpp"

namespace lmnpt {

/// First four L-moments and the L-ratios.
///
/// tau3 = l3 / l2 and tau4 = l4 / l2 are empty when l2 == 0 (a constant
/// sample); they are never NaN.
struct LMomentSummary {
  double l1 = 0.0;
  double l2 = 0.0;
  double l3 = 0.0;
  double l4 = 0.0;
  std::optional<double> tau3;
  std::optional<double> tau4;

  bool ratios_defined() const noexcept { return tau3.has_value() && tau4.has_value(); }

  /// Builds a summary, deriving the ratios when l2 > 0.
  static LMomentSummary from_moments(double l1, double l2, double l3, double l4);
};

/// How b_q is estimated from order statistics.
enum class PwmEstimator {
  /// b_q = n^-1 sum_i [(i-1)...(i-q)] / [(n-1)...(n-q)] x_(i); unbiased for beta_q.
  Unbiased,
  /// b_q = n^-1 sum_i p_i^q x_(i) with p_i = (i - 0.35) / n. Biased, kept for
  /// sensitivity comparisons.
  PlottingPosition,
};

/// Probability-weighted moment b_q, q in 0..3, of arbitrary finite data.
/// Throws InsufficientSampleError when data.size() <= q and DomainError for q
/// outside 0..3.
double sample_pwm(std::span<const double> data, int q,
                  PwmEstimator estimator = PwmEstimator::Unbiased);

/// b_0..b_3 from data that is already sorted ascending.
std::array<double, 4> sample_pwms_sorted(std::span<const double> sorted,
                                         PwmEstimator estimator = PwmEstimator::Unbiased);

/// Sample L-moments l1..l4 through the PWM identities. Needs n >= 4.
LMomentSummary sample_lmoments(std::span<const double> data,
                               PwmEstimator estimator = PwmEstimator::Unbiased);
LMomentSummary sample_lmoments(const SampleSet& sample,
                               PwmEstimator estimator = PwmEstimator::Unbiased);

/// Sample L-moment of order r (1..4) straight from the order-statistics
/// definition: the average over every size-r subsample of
/// r^-1 sum_k (-1)^k C(r-1, k) x_(r-k):r. Combinatorial; refuses n > 20.
double brute_force_lmoment(std::span<const double> data, int r);

inline constexpr std::size_t kBruteForceMaxSize = 20;

/// Population L-moments of the distribution with the given quantile function,
/// l_r = integral over (0,1) of Q(p) P*_{r-1}(p) dp with the shifted Legendre
/// polynomials 1, 2p-1, 6p^2-6p+1, 20p^3-30p^2+12p-1.
/// Throws EvaluationError naming p if Q is not finite at a node.
LMomentSummary population_lmoments(const std::function<double(double)>& quantile,
                                   const QuadratureConfig& quadrature = {});

}  // namespace lmnpt
