#include "lmnpt/percentile_curve.hpp"

#include <cmath>
#include <string>

#include "lmnpt/errors.hpp"

namespace lmnpt {

void validate_grid(std::span<const double> grid) {
  if (grid.empty()) throw DomainError("probability grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0 && grid[i] < 1.0)) {
      throw DomainError("grid point " + std::to_string(i) + " outside (0, 1): " +
                        std::to_string(grid[i]));
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw DomainError("grid not strictly increasing at index " + std::to_string(i));
    }
  }
}

PercentileCurve::PercentileCurve(std::vector<double> grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  validate_grid(grid_);
  if (grid_.size() != values_.size()) {
    throw DomainError("curve has " + std::to_string(grid_.size()) + " grid points but " +
                      std::to_string(values_.size()) + " values");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw DomainError("curve value at p = " + std::to_string(grid_[i]) + " is not finite");
    }
    if (i > 0 && values_[i] < values_[i - 1]) monotone_ = false;
  }
}

std::vector<double> default_grid() {
  std::vector<double> grid;
  grid.reserve(99);
  for (int i = 1; i <= 99; ++i) grid.push_back(i / 100.0);
  return grid;
}

std::vector<double> make_grid(double start, double stop, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("grid step must be positive");
  if (!(stop >= start)) throw DomainError("grid stop must not precede start");
  std::vector<double> grid;
  for (std::size_t i = 0;; ++i) {
    const double p = start + static_cast<double>(i) * step;
    if (p > stop + 1e-9 * step) break;
    grid.push_back(p);
  }
  validate_grid(grid);
  return grid;
}

}  // namespace lmnpt
