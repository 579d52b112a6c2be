#include "lmnpt/sample_set.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lmnpt/errors.hpp"

namespace lmnpt {

SampleSet::SampleSet(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw InsufficientSampleError("empty travel-time sample", 1, 0);
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double v = values_[i];
    if (!std::isfinite(v) || v <= 0.0) {
      throw DomainError("travel time at index " + std::to_string(i) +
                        " must be finite and positive, got " + std::to_string(v));
    }
  }
  sorted_ = values_;
  std::stable_sort(sorted_.begin(), sorted_.end());
}

SampleSet SampleSet::with_appended(double value) const {
  std::vector<double> out(values_);
  out.push_back(value);
  return SampleSet(std::move(out));
}

}  // namespace lmnpt
