#pragma once

namespace lmnpt {

/// Standard normal density.
double normal_pdf(double z) noexcept;

/// Standard normal CDF, computed through erfc for tail accuracy.
double normal_cdf(double z) noexcept;

/// Inverse standard normal CDF.
///
/// Rational initial approximation followed by one Halley step against
/// normal_cdf. Absolute error is below 1e-9 on [1e-8, 1 - 1e-8] and the
/// result is exactly antisymmetric: inverse_normal_cdf(1 - p) == -inverse_normal_cdf(p)
/// whenever 1 - p is representable. Throws DomainError unless 0 < p < 1.
double inverse_normal_cdf(double p);

}  // namespace lmnpt
