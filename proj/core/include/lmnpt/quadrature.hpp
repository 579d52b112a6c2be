#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lmnpt {

/// Node layout for integrals over the open unit interval.
///
/// The interval is split into `grading_levels` panels per half whose widths
/// halve toward each endpoint (0, 2^-L, ..., 1/4, 1/2, ..., 1 - 2^-L, 1); each
/// panel carries a Gauss-Legendre rule of order nodes / (2 * grading_levels).
/// The grading resolves the logarithmic endpoint behaviour of quantile
/// integrands such as p^q * z(p)^3 that a single global rule converges on only
/// algebraically. No node ever lands on 0 or 1.
struct QuadratureConfig {
  std::size_t nodes = 512;
  std::size_t grading_levels = 32;
};

/// Gauss-Legendre nodes and weights of the given order on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendre gauss_legendre(std::size_t order);

/// Immutable composite rule on (0, 1).
class UnitIntervalRule {
 public:
  /// Throws DomainError if nodes < 64 or the node budget is smaller than the
  /// number of panels.
  explicit UnitIntervalRule(const QuadratureConfig& config = {});

  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return nodes_.size(); }

  template <class F>
  double integrate(F&& f) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) sum += weights_[i] * f(nodes_[i]);
    return sum;
  }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

}  // namespace lmnpt
