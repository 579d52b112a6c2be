#include "lmnpt/cornish_fisher.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "lmnpt/errors.hpp"
#include "lmnpt/normal.hpp"

namespace lmnpt {

CentralMomentSummary sample_central_moments(std::span<const double> data) {
  const std::size_t n = data.size();
  if (n < 4) throw InsufficientSampleError("central moments", 4, n);
  const auto nd = static_cast<double>(n);

  double mean = 0.0;
  for (double x : data) mean += x;
  mean /= nd;

  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;
  for (double x : data) {
    const double d = x - mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= nd;
  m3 /= nd;
  m4 /= nd;
  if (!(m2 > 0.0)) throw DegenerateError("central moments of a zero-variance sample");

  const double g1 = m3 / std::pow(m2, 1.5);
  const double g2 = m4 / (m2 * m2) - 3.0;

  CentralMomentSummary cm;
  cm.mean = mean;
  cm.sd = std::sqrt(m2 * nd / (nd - 1.0));
  cm.skewness = g1 * std::sqrt(nd * (nd - 1.0)) / (nd - 2.0);
  cm.excess_kurtosis = (nd - 1.0) / ((nd - 2.0) * (nd - 3.0)) * ((nd + 1.0) * g2 + 6.0);
  return cm;
}

CentralMomentSummary sample_central_moments(const SampleSet& sample) {
  return sample_central_moments(sample.values());
}

double cf_quantile(const CentralMomentSummary& cm, double p) {
  if (!(cm.sd > 0.0)) throw DegenerateError("Cornish-Fisher needs sd > 0");
  const double z = inverse_normal_cdf(p);
  const double s = cm.skewness;
  const double k = cm.excess_kurtosis;
  const double z2 = z * z;
  const double z3 = z2 * z;
  const double w = z + (z2 - 1.0) * s / 6.0 + (z3 - 3.0 * z) * k / 24.0 -
                   (2.0 * z3 - 5.0 * z) * s * s / 36.0;
  return cm.mean + cm.sd * w;
}

PercentileCurve cf_curve(const CentralMomentSummary& cm, std::span<const double> grid) {
  validate_grid(grid);
  std::vector<double> values;
  values.reserve(grid.size());
  for (double p : grid) values.push_back(cf_quantile(cm, p));
  return PercentileCurve({grid.begin(), grid.end()}, std::move(values));
}

CfSlope CfSlope::from_shape(double s, double k) noexcept {
  return {k / 8.0 - s * s / 6.0, s / 3.0, 1.0 - k / 8.0 + 5.0 * s * s / 36.0};
}

bool CfSlope::nonnegative_on(double z_lo, double z_hi) const noexcept {
  return detail::quadratic_nonnegative_on(c, b, a, z_lo, z_hi);
}

ValidityStatus cf_validity(double skewness, double excess_kurtosis) {
  ValidityStatus status{ValidityKind::UndefinedRatios, skewness, excess_kurtosis, 0.0};
  if (!std::isfinite(skewness) || !std::isfinite(excess_kurtosis)) return status;
  const CfSlope slope = CfSlope::from_shape(skewness, excess_kurtosis);
  status.h_value = slope.b * slope.b - 4.0 * slope.a * slope.c;
  if (slope.a > 0.0) {
    status.kind = status.h_value <= 0.0 ? ValidityKind::Valid : ValidityKind::InvalidDiscriminant;
  } else if (slope.a == 0.0 && slope.b == 0.0 && slope.c >= 0.0) {
    status.kind = ValidityKind::Valid;
  } else {
    status.kind = ValidityKind::InvalidLeadingCoefficient;
  }
  return status;
}

}  // namespace lmnpt
