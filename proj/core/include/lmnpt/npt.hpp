#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "lmnpt/lmoments.hpp"
#include "lmnpt/percentile_curve.hpp"
#include "lmnpt/quadrature.hpp"

namespace lmnpt {

/// S(q, m) = integral over (0,1) of p^q * z(p)^m dp, z = inverse normal CDF;
/// indexed [q][m] for q, m in 0..3.
using SqmTable = std::array<std::array<double, 4>, 4>;

/// Linear map taking (l1, l2, l3, l4) to the cubic coefficients (a, b, c, d),
/// indexed [coefficient][moment].
using CoefficientMap = std::array<std::array<double, 4>, 4>;

/// Dimensionless constants of the L-moment to cubic-coefficient map:
///   a = l1 + a1 l3,  b = b1 l2 + b2 l4,  c = c1 l3,  d = d1 l2 + d2 l4.
struct NptConstants {
  double a1 = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
  double c1 = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;

  /// The published eight-digit values; c1 = -a1.
  static constexpr NptConstants published() noexcept {
    return {-1.81379937, 2.25518617, -3.9374025, 1.81379937, -0.19309293, 1.574961};
  }

  /// Re-derived from a quadrature S table by inverting the PWM relations.
  static NptConstants from_sqm_table(const SqmTable& table);

  /// Lower tau4 bound of the validity domain, -d1 / d2 (~0.122602).
  double tau4_lower() const noexcept { return -d1 / d2; }
  /// Upper tau4 bound of the validity domain, -b1 / b2 (~0.572760).
  double tau4_upper() const noexcept { return -b1 / b2; }
};

/// Quadrature S table. Throws DomainError if fewer than 256 nodes are requested.
SqmTable sqm_table(const QuadratureConfig& quadrature = {});

/// (l1..l4) -> (a, b, c, d) obtained by composing beta_q = sum_m S(q,m) coeff_m
/// with the PWM form of the L-moments and inverting the 4x4 system.
CoefficientMap coefficient_map(const SqmTable& table);

enum class ValidityKind {
  Valid,
  InvalidTau4Low,
  InvalidTau4High,
  InvalidDiscriminant,
  /// Cornish-Fisher only: derivative quadratic opens downward (or is linear).
  InvalidLeadingCoefficient,
  UndefinedRatios,
};

std::string_view to_string(ValidityKind kind) noexcept;

/// Outcome of a monotonicity-domain check. For the cubic transform the shape
/// fields are (tau3, tau4) and h_value is h(tau3); the Cornish-Fisher check
/// stores (skewness, excess kurtosis) and the discriminant of dw/dz.
struct ValidityStatus {
  ValidityKind kind = ValidityKind::UndefinedRatios;
  double tau3 = 0.0;
  double tau4 = 0.0;
  double h_value = 0.0;

  bool valid() const noexcept { return kind == ValidityKind::Valid; }
};

/// Fitted cubic a + b z + c z^2 + d z^3 and the validity under which it was fit.
struct NptCoefficients {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  ValidityStatus validity;

  /// b + 2 c z + 3 d z^2, the derivative of the cubic in z.
  double slope(double z) const noexcept { return b + (2.0 * c + 3.0 * d * z) * z; }

  /// True iff slope(z) >= 0 for every z in [z_lo, z_hi].
  bool nondecreasing_on(double z_lo, double z_hi) const noexcept;
};

/// Membership of (tau3, tau4) in the monotonicity domain
///   -d1/d2 <= tau4 <= -b1/b2  and  h(tau3) = c1^2 tau3^2 - 3 (d1 + d2 tau4)(b1 + b2 tau4) <= 0,
/// plus the constant-slope case tau3 = 0, d1 + d2 tau4 = 0, b1 + b2 tau4 >= 0.
/// Boundaries count as valid. Non-finite input yields UndefinedRatios.
ValidityStatus lmnpt_validity(double tau3, double tau4,
                              const NptConstants& constants = NptConstants::published());

/// Cubic coefficients from L-moments. Coefficients are produced even when the
/// ratios fall outside the validity domain. Throws DegenerateError if l2 <= 0.
NptCoefficients fit_lmnpt(const LMomentSummary& lm,
                          const NptConstants& constants = NptConstants::published());

/// a + b z + c z^2 + d z^3 at z = inverse_normal_cdf(p).
double evaluate_ptt(const NptCoefficients& coeffs, double p);

PercentileCurve evaluate_curve(const NptCoefficients& coeffs, std::span<const double> grid);

struct DomainBoundaryPoint {
  double tau4 = 0.0;
  double tau3_min = 0.0;
  double tau3_max = 0.0;
};

/// Edge of the validity domain: for tau4 from -d1/d2 to -b1/b2 in `step`
/// increments (the upper bound itself always included), the roots
/// tau3 = +/- sqrt(3 (d1 + d2 tau4)(b1 + b2 tau4)) / c1.
std::vector<DomainBoundaryPoint> validity_boundary(
    double step = 1e-3, const NptConstants& constants = NptConstants::published());

namespace detail {

/// True iff c0 + c1 z + c2 z^2 >= 0 on [lo, hi].
bool quadratic_nonnegative_on(double c0, double c1, double c2, double lo, double hi) noexcept;

}  // namespace detail

}  // namespace lmnpt
