#include "lmnpt/lmoments.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "lmnpt/errors.hpp"

namespace lmnpt {
namespace {

std::vector<double> sorted_copy(std::span<const double> data) {
  std::vector<double> out(data.begin(), data.end());
  for (double v : out) {
    if (!std::isfinite(v)) throw DomainError("L-moment input contains a non-finite value");
  }
  std::sort(out.begin(), out.end());
  return out;
}

double pwm_from_sorted(std::span<const double> sorted, int q, PwmEstimator estimator) {
  const std::size_t n = sorted.size();
  const auto nd = static_cast<double>(n);
  double sum = 0.0;
  if (estimator == PwmEstimator::PlottingPosition) {
    for (std::size_t i = 0; i < n; ++i) {
      const double p = (static_cast<double>(i + 1) - 0.35) / nd;
      sum += std::pow(p, q) * sorted[i];
    }
    return sum / nd;
  }
  // The q lowest order statistics carry zero weight.
  for (std::size_t i = static_cast<std::size_t>(q); i < n; ++i) {
    double weight = 1.0;
    for (int j = 1; j <= q; ++j) {
      weight *= static_cast<double>(i + 1 - static_cast<std::size_t>(j)) / (nd - j);
    }
    sum += weight * sorted[i];
  }
  return sum / nd;
}

double binomial(int n, int k) {
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

}  // namespace

LMomentSummary LMomentSummary::from_moments(double l1, double l2, double l3, double l4) {
  LMomentSummary s{l1, l2, l3, l4, std::nullopt, std::nullopt};
  if (l2 > 0.0) {
    s.tau3 = l3 / l2;
    s.tau4 = l4 / l2;
  }
  return s;
}

double sample_pwm(std::span<const double> data, int q, PwmEstimator estimator) {
  if (q < 0 || q > 3) throw DomainError("PWM order must be in 0..3, got " + std::to_string(q));
  if (data.size() <= static_cast<std::size_t>(q)) {
    throw InsufficientSampleError("PWM b_" + std::to_string(q), static_cast<std::size_t>(q) + 1,
                                  data.size());
  }
  const auto sorted = sorted_copy(data);
  return pwm_from_sorted(sorted, q, estimator);
}

std::array<double, 4> sample_pwms_sorted(std::span<const double> sorted, PwmEstimator estimator) {
  if (sorted.size() < 4) throw InsufficientSampleError("PWMs b_0..b_3", 4, sorted.size());
  return {pwm_from_sorted(sorted, 0, estimator), pwm_from_sorted(sorted, 1, estimator),
          pwm_from_sorted(sorted, 2, estimator), pwm_from_sorted(sorted, 3, estimator)};
}

namespace {

LMomentSummary lmoments_from_sorted(std::span<const double> sorted, PwmEstimator estimator) {
  if (sorted.size() < 4) throw InsufficientSampleError("sample L-moments", 4, sorted.size());
  const auto b = sample_pwms_sorted(sorted, estimator);
  const double l1 = b[0];
  double l2 = 2.0 * b[1] - b[0];
  const double l3 = 6.0 * b[2] - 6.0 * b[1] + b[0];
  const double l4 = 20.0 * b[3] - 30.0 * b[2] + 12.0 * b[1] - b[0];
  if (sorted.front() == sorted.back()) {
    // Constant sample: rounding may leave a residue of either sign.
    return LMomentSummary::from_moments(l1, 0.0, 0.0, 0.0);
  }
  l2 = std::max(l2, 0.0);
  return LMomentSummary::from_moments(l1, l2, l3, l4);
}

}  // namespace

LMomentSummary sample_lmoments(std::span<const double> data, PwmEstimator estimator) {
  if (data.size() < 4) throw InsufficientSampleError("sample L-moments", 4, data.size());
  const auto sorted = sorted_copy(data);
  return lmoments_from_sorted(sorted, estimator);
}

LMomentSummary sample_lmoments(const SampleSet& sample, PwmEstimator estimator) {
  return lmoments_from_sorted(sample.sorted(), estimator);
}

double brute_force_lmoment(std::span<const double> data, int r) {
  if (r < 1 || r > 4) throw DomainError("L-moment order must be in 1..4, got " + std::to_string(r));
  const std::size_t n = data.size();
  if (n > kBruteForceMaxSize) {
    throw DomainError("brute-force L-moment oracle limited to n <= " +
                      std::to_string(kBruteForceMaxSize) + ", got " + std::to_string(n));
  }
  if (n < static_cast<std::size_t>(r)) {
    throw InsufficientSampleError("brute-force L-moment", static_cast<std::size_t>(r), n);
  }
  const auto sorted = sorted_copy(data);

  // coeff[j] multiplies the j-th smallest (0-based) member of a subsample:
  // x_(r-k) pairs with (-1)^k C(r-1, k), i.e. j = r-1-k.
  std::array<double, 4> coeff{};
  for (int k = 0; k < r; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    coeff[static_cast<std::size_t>(r - 1 - k)] = sign * binomial(r - 1, k) / r;
  }

  // Lexicographic enumeration of index combinations; sorted input makes every
  // subsample already ordered.
  std::vector<std::size_t> idx(static_cast<std::size_t>(r));
  for (std::size_t j = 0; j < idx.size(); ++j) idx[j] = j;
  double total = 0.0;
  std::size_t count = 0;
  while (true) {
    double term = 0.0;
    for (std::size_t j = 0; j < idx.size(); ++j) term += coeff[j] * sorted[idx[j]];
    total += term;
    ++count;

    std::size_t pos = idx.size();
    while (pos > 0 && idx[pos - 1] == n - idx.size() + pos - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t j = pos; j < idx.size(); ++j) idx[j] = idx[j - 1] + 1;
  }
  return total / static_cast<double>(count);
}

LMomentSummary population_lmoments(const std::function<double(double)>& quantile,
                                   const QuadratureConfig& quadrature) {
  const UnitIntervalRule rule(quadrature);
  std::array<double, 4> l{};
  const auto nodes = rule.nodes();
  const auto weights = rule.weights();
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double p = nodes[i];
    const double x = quantile(p);
    if (!std::isfinite(x)) throw EvaluationError("quantile function is not finite", p);
    const double w = weights[i] * x;
    l[0] += w;
    l[1] += w * (2.0 * p - 1.0);
    l[2] += w * ((6.0 * p - 6.0) * p + 1.0);
    l[3] += w * (((20.0 * p - 30.0) * p + 12.0) * p - 1.0);
  }
  return LMomentSummary::from_moments(l[0], l[1], l[2], l[3]);
}

}  // namespace lmnpt
