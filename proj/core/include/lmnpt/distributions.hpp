#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "lmnpt/sample_set.hpp"

namespace lmnpt {

/// Ground-truth travel-time families. ExtremeValue is read as Gumbel (maxima).
enum class Family { Normal, BurrXII, Gumbel, Gamma, Lognormal, Weibull };

inline constexpr std::array<Family, 6> kAllFamilies{Family::Normal,  Family::BurrXII,
                                                    Family::Gumbel,  Family::Gamma,
                                                    Family::Lognormal, Family::Weibull};

std::string_view to_string(Family family) noexcept;

/// Case-insensitive; also accepts "Burr" and "ExtremeValue".
std::optional<Family> parse_family(std::string_view name) noexcept;

/// Names of the family's parameters, in the order they are stored:
///   Normal    (mu, sigma)
///   BurrXII   (c, k, scale)      F = 1 - (1 + (x/scale)^c)^-k
///   Gumbel    (location, scale)
///   Gamma     (shape, scale)
///   Lognormal (log_mean, log_sd)
///   Weibull   (shape, scale)
std::span<const std::string_view> parameter_names(Family family) noexcept;

/// Fixed second Burr XII shape used when solving for (mean, CoV).
inline constexpr double kDefaultBurrK = 10.0;

/// A fully parameterised distribution plus the (mean, CoV) it realises.
struct DistributionSpec {
  Family family = Family::Normal;
  std::array<double, 3> params{};
  double mean = 0.0;
  double cov = 0.0;

  /// Builds a spec from explicit parameters; mean and cov are computed
  /// analytically. Throws DomainError on illegal parameters.
  static DistributionSpec from_params(Family family, std::span<const double> params);
};

/// Parameters matching (mean, cov): closed form for Normal, Gamma, Lognormal
/// and Gumbel; root finding on the shape for Weibull and on the first shape of
/// Burr XII with the second fixed at burr_k. Root finding drives the CoV
/// residual below 1e-10.
/// Throws DomainError unless mean > 0 and 0 < cov < 1, InfeasibleError when
/// the family cannot reach the CoV, SolverError on non-convergence.
DistributionSpec solve_params(Family family, double mean, double cov,
                              double burr_k = kDefaultBurrK);

double analytic_mean(const DistributionSpec& spec);
double analytic_sd(const DistributionSpec& spec);

double cdf(const DistributionSpec& spec, double x);

/// Exact inverse CDF; Gamma inverts its CDF numerically to 1e-10 relative.
/// Throws DomainError unless 0 < p < 1.
double true_quantile(const DistributionSpec& spec, double p);

/// n inverse-transform draws from a generator seeded with `seed`. Draws that
/// would not be strictly positive (a normal far tail) are redrawn from the same
/// stream, so the result is still a deterministic function of (spec, n, seed).
SampleSet draw_sample(const DistributionSpec& spec, std::size_t n, std::uint64_t seed);

}  // namespace lmnpt
