#include "lmnpt/errors.hpp"

#include <utility>

namespace lmnpt {

InsufficientSampleError::InsufficientSampleError(std::string what, std::size_t required,
                                                 std::size_t actual)
    : Error(std::move(what) + " (need at least " + std::to_string(required) + ", got " +
            std::to_string(actual) + ")"),
      required_(required),
      actual_(actual) {}

EvaluationError::EvaluationError(std::string what, double at)
    : Error(std::move(what) + " at p = " + std::to_string(at)), at_(at) {}

SolverError::SolverError(std::string what, double residual)
    : Error(std::move(what) + " (residual " + std::to_string(residual) + ")"),
      residual_(residual) {}

}  // namespace lmnpt
