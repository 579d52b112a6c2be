#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lmnpt {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Too few observations for the requested statistic.
class InsufficientSampleError : public Error {
 public:
  InsufficientSampleError(std::string what, std::size_t required, std::size_t actual);

  std::size_t required() const noexcept { return required_; }
  std::size_t actual() const noexcept { return actual_; }

 private:
  std::size_t required_;
  std::size_t actual_;
};

/// Argument outside the mathematical domain of a function (e.g. p not in (0,1)).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Zero-dispersion input where a scale is required.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// Numerical evaluation produced a non-finite value.
class EvaluationError : public Error {
 public:
  EvaluationError(std::string what, double at);
  double at() const noexcept { return at_; }

 private:
  double at_;
};

/// Root finding failed to converge.
class SolverError : public Error {
 public:
  SolverError(std::string what, double residual);
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Requested (family, mean, CoV) combination cannot be represented.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration, missing file or missing column.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace lmnpt
