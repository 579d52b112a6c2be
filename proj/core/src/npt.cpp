#include "lmnpt/npt.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lmnpt/errors.hpp"
#include "lmnpt/normal.hpp"

namespace lmnpt {

namespace detail {

bool quadratic_nonnegative_on(double c0, double c1, double c2, double lo, double hi) noexcept {
  const auto value = [&](double z) { return c0 + (c1 + c2 * z) * z; };
  if (value(lo) < 0.0 || value(hi) < 0.0) return false;
  if (c2 > 0.0) {
    const double vertex = -c1 / (2.0 * c2);
    if (vertex > lo && vertex < hi && value(vertex) < 0.0) return false;
  }
  return true;
}

}  // namespace detail

SqmTable sqm_table(const QuadratureConfig& quadrature) {
  if (quadrature.nodes < 256) {
    throw DomainError("S table needs at least 256 quadrature nodes, got " +
                      std::to_string(quadrature.nodes));
  }
  const UnitIntervalRule rule(quadrature);
  SqmTable s{};
  const auto nodes = rule.nodes();
  const auto weights = rule.weights();
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double p = nodes[i];
    const double z = inverse_normal_cdf(p);
    double pq = weights[i];
    for (std::size_t q = 0; q < 4; ++q) {
      double zm = 1.0;
      for (std::size_t m = 0; m < 4; ++m) {
        s[q][m] += pq * zm;
        zm *= z;
      }
      pq *= p;
    }
  }
  return s;
}

CoefficientMap coefficient_map(const SqmTable& table) {
  // l = P beta with the PWM form of the first four L-moments.
  Eigen::Matrix4d pwm_to_l;
  pwm_to_l << 1, 0, 0, 0,
              -1, 2, 0, 0,
              1, -6, 6, 0,
              -1, 12, -30, 20;
  Eigen::Matrix4d s;
  for (int q = 0; q < 4; ++q) {
    for (int m = 0; m < 4; ++m) s(q, m) = table[static_cast<std::size_t>(q)][static_cast<std::size_t>(m)];
  }
  const Eigen::Matrix4d forward = pwm_to_l * s;  // (a,b,c,d) -> l
  const Eigen::Matrix4d inverse = forward.fullPivLu().inverse();
  CoefficientMap out{};
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) out[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = inverse(r, c);
  }
  return out;
}

NptConstants NptConstants::from_sqm_table(const SqmTable& table) {
  const CoefficientMap m = coefficient_map(table);
  return {m[0][2], m[1][1], m[1][3], m[2][2], m[3][1], m[3][3]};
}

std::string_view to_string(ValidityKind kind) noexcept {
  switch (kind) {
    case ValidityKind::Valid: return "Valid";
    case ValidityKind::InvalidTau4Low: return "InvalidTau4Low";
    case ValidityKind::InvalidTau4High: return "InvalidTau4High";
    case ValidityKind::InvalidDiscriminant: return "InvalidDiscriminant";
    case ValidityKind::InvalidLeadingCoefficient: return "InvalidLeadingCoefficient";
    case ValidityKind::UndefinedRatios: return "UndefinedRatios";
  }
  return "Unknown";
}

bool NptCoefficients::nondecreasing_on(double z_lo, double z_hi) const noexcept {
  return detail::quadratic_nonnegative_on(b, 2.0 * c, 3.0 * d, z_lo, z_hi);
}

// h is O(1) near the domain edge; a few ulps of slack keeps points computed
// on the boundary itself (e.g. tau4 = -d1/d2 exactly) on the valid side.
constexpr double kBoundaryRounding = 64.0 * std::numeric_limits<double>::epsilon();

ValidityStatus lmnpt_validity(double tau3, double tau4, const NptConstants& k) {
  ValidityStatus status{ValidityKind::UndefinedRatios, tau3, tau4, 0.0};
  if (!std::isfinite(tau3) || !std::isfinite(tau4)) return status;

  const double quad = k.d1 + k.d2 * tau4;
  const double constant = k.b1 + k.b2 * tau4;
  status.h_value = k.c1 * k.c1 * tau3 * tau3 - 3.0 * quad * constant;

  if (tau3 == 0.0 && quad == 0.0 && constant >= 0.0) {
    status.kind = ValidityKind::Valid;
  } else if (tau4 < k.tau4_lower()) {
    status.kind = ValidityKind::InvalidTau4Low;
  } else if (tau4 > k.tau4_upper()) {
    status.kind = ValidityKind::InvalidTau4High;
  } else if (status.h_value > kBoundaryRounding) {
    status.kind = ValidityKind::InvalidDiscriminant;
  } else {
    status.kind = ValidityKind::Valid;
  }
  return status;
}

NptCoefficients fit_lmnpt(const LMomentSummary& lm, const NptConstants& k) {
  if (!(lm.l2 > 0.0)) {
    throw DegenerateError("cubic transform needs l2 > 0, got " + std::to_string(lm.l2));
  }
  NptCoefficients out;
  out.a = lm.l1 + k.a1 * lm.l3;
  out.b = k.b1 * lm.l2 + k.b2 * lm.l4;
  out.c = k.c1 * lm.l3;
  out.d = k.d1 * lm.l2 + k.d2 * lm.l4;
  out.validity = lmnpt_validity(lm.l3 / lm.l2, lm.l4 / lm.l2, k);
  return out;
}

double evaluate_ptt(const NptCoefficients& coeffs, double p) {
  const double z = inverse_normal_cdf(p);
  return coeffs.a + (coeffs.b + (coeffs.c + coeffs.d * z) * z) * z;
}

PercentileCurve evaluate_curve(const NptCoefficients& coeffs, std::span<const double> grid) {
  validate_grid(grid);
  std::vector<double> values;
  values.reserve(grid.size());
  for (double p : grid) values.push_back(evaluate_ptt(coeffs, p));
  return PercentileCurve({grid.begin(), grid.end()}, std::move(values));
}

std::vector<DomainBoundaryPoint> validity_boundary(double step, const NptConstants& k) {
  if (!(step > 0.0)) throw DomainError("boundary step must be positive");
  const double lo = k.tau4_lower();
  const double hi = k.tau4_upper();
  const auto root = [&](double tau4) {
    const double radicand = 3.0 * (k.d1 + k.d2 * tau4) * (k.b1 + k.b2 * tau4);
    return std::sqrt(std::max(radicand, 0.0)) / k.c1;
  };
  std::vector<DomainBoundaryPoint> out;
  for (std::size_t i = 0;; ++i) {
    const double tau4 = lo + static_cast<double>(i) * step;
    if (tau4 >= hi) break;
    const double r = root(tau4);
    out.push_back({tau4, -r, r});
  }
  out.push_back({hi, -root(hi), root(hi)});
  return out;
}

}  // namespace lmnpt
