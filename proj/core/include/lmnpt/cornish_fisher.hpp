#pragma once

#include <span>

#include "lmnpt/npt.hpp"
#include "lmnpt/percentile_curve.hpp"
#include "lmnpt/sample_set.hpp"

namespace lmnpt {

/// Mean, standard deviation and shape from conventional (product) moments.
struct CentralMomentSummary {
  double mean = 0.0;
  double sd = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
};

/// Bias-adjusted moments: sd with n - 1, skewness G1 = g1 sqrt(n(n-1)) / (n-2),
/// excess kurtosis G2 = (n-1) / ((n-2)(n-3)) * ((n+1) g2 + 6).
/// Throws InsufficientSampleError for n < 4 and DegenerateError for zero variance.
CentralMomentSummary sample_central_moments(std::span<const double> data);
CentralMomentSummary sample_central_moments(const SampleSet& sample);

/// Fourth-order Cornish-Fisher quantile:
///   w = z + (z^2-1) s/6 + (z^3-3z) k/24 - (2z^3-5z) s^2/36,  Q = mean + sd w.
/// Throws DegenerateError if sd <= 0 and DomainError unless 0 < p < 1.
double cf_quantile(const CentralMomentSummary& cm, double p);

PercentileCurve cf_curve(const CentralMomentSummary& cm, std::span<const double> grid);

/// dw/dz = A z^2 + B z + C with A = k/8 - s^2/6, B = s/3, C = 1 - k/8 + 5 s^2/36.
struct CfSlope {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  static CfSlope from_shape(double skewness, double excess_kurtosis) noexcept;
  bool nonnegative_on(double z_lo, double z_hi) const noexcept;
};

/// Valid iff dw/dz >= 0 for all real z: (A > 0 and B^2 - 4AC <= 0) or
/// (A = 0, B = 0, C >= 0). The status stores s in tau3, k in tau4 and the
/// discriminant in h_value.
ValidityStatus cf_validity(double skewness, double excess_kurtosis);

}  // namespace lmnpt
