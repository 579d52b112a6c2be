#pragma once

#include <span>
#include <vector>

namespace lmnpt {

/// Positive, finite travel-time observations (seconds).
///
/// Construction validates every value and keeps an ascending copy, so
/// order-statistic consumers never re-sort. Immutable after construction.
class SampleSet {
 public:
  /// Throws DomainError on a non-finite or non-positive value and
  /// InsufficientSampleError on an empty input.
  explicit SampleSet(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }

  /// Observations in their original order.
  std::span<const double> values() const noexcept { return values_; }

  /// Observations in ascending order.
  std::span<const double> sorted() const noexcept { return sorted_; }

  double min() const noexcept { return sorted_.front(); }
  double max() const noexcept { return sorted_.back(); }

  /// Copy with one extra observation appended.
  SampleSet with_appended(double value) const;

 private:
  std::vector<double> values_;
  std::vector<double> sorted_;
};

}  // namespace lmnpt
