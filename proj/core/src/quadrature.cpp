#include "lmnpt/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lmnpt/errors.hpp"

namespace lmnpt {

GaussLegendre gauss_legendre(std::size_t order) {
  if (order == 0) throw DomainError("Gauss-Legendre order must be positive");
  GaussLegendre gl;
  gl.nodes.resize(order);
  gl.weights.resize(order);
  const auto n = static_cast<double>(order);
  const std::size_t half = (order + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n via the three-term recurrence.
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (std::size_t j = 1; j <= order; ++j) {
        const double p2 = p1;
        p1 = p0;
        const auto jd = static_cast<double>(j);
        p0 = ((2.0 * jd - 1.0) * x * p1 - (jd - 1.0) * p2) / jd;
      }
      dp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    gl.nodes[i] = -x;
    gl.nodes[order - 1 - i] = x;
    gl.weights[i] = w;
    gl.weights[order - 1 - i] = w;
  }
  return gl;
}

UnitIntervalRule::UnitIntervalRule(const QuadratureConfig& config) {
  if (config.nodes < 64) {
    throw DomainError("quadrature needs at least 64 nodes, got " + std::to_string(config.nodes));
  }
  if (config.grading_levels == 0) throw DomainError("quadrature needs at least one grading level");
  const std::size_t panels = 2 * config.grading_levels;
  const std::size_t order = config.nodes / panels;
  if (order == 0) {
    throw DomainError("quadrature node budget " + std::to_string(config.nodes) +
                      " is smaller than its " + std::to_string(panels) + " panels");
  }
  const GaussLegendre gl = gauss_legendre(order);

  // Panel edges on [0, 1/2]: 0, 2^-L, ..., 2^-2, 2^-1.
  std::vector<double> edges{0.0};
  for (std::size_t k = config.grading_levels; k >= 1; --k) {
    edges.push_back(std::ldexp(1.0, -static_cast<int>(k)));
  }

  std::vector<double> lower_nodes;
  std::vector<double> lower_weights;
  for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
    const double a = edges[e];
    const double half_width = 0.5 * (edges[e + 1] - a);
    for (std::size_t j = 0; j < order; ++j) {
      lower_nodes.push_back(a + half_width * (gl.nodes[j] + 1.0));
      lower_weights.push_back(half_width * gl.weights[j]);
    }
  }

  nodes_ = lower_nodes;
  weights_ = lower_weights;
  for (std::size_t i = lower_nodes.size(); i-- > 0;) {
    nodes_.push_back(1.0 - lower_nodes[i]);
    weights_.push_back(lower_weights[i]);
  }
}

}  // namespace lmnpt
