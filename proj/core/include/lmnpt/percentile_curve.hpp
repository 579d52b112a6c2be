#pragma once

#include <span>
#include <vector>

namespace lmnpt {

/// Percentile function sampled on a probability grid.
class PercentileCurve {
 public:
  /// Throws DomainError if the grid is not strictly increasing inside (0, 1),
  /// the lengths differ, or a value is not finite.
  PercentileCurve(std::vector<double> grid, std::vector<double> values);

  std::span<const double> grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return grid_.size(); }

  /// True iff values are nondecreasing along the grid.
  bool monotone() const noexcept { return monotone_; }

 private:
  std::vector<double> grid_;
  std::vector<double> values_;
  bool monotone_ = true;
};

/// Throws DomainError unless the grid is nonempty and strictly increasing in (0, 1).
void validate_grid(std::span<const double> grid);

/// p = 0.01, 0.02, ..., 0.99 (each point computed as i / 100).
std::vector<double> default_grid();

/// start, start + step, ... up to stop inclusive, each
/// point computed as start + i * step. Validated like any grid.
std::vector<double> make_grid(double start, double stop, double step);

}  // namespace lmnpt
