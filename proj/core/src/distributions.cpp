#include "lmnpt/distributions.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/tools/roots.hpp>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "lmnpt/errors.hpp"
#include "lmnpt/normal.hpp"
#include "lmnpt/rng.hpp"

namespace lmnpt {
namespace {

constexpr double kCovTolerance = 1e-10;

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

void require_probability(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("quantile requires 0 < p < 1, got " + std::to_string(p));
  }
}

// Weibull: CoV^2 = Gamma(1+2/k) / Gamma(1+1/k)^2 - 1.
double weibull_cov(double shape) {
  const double lg1 = std::lgamma(1.0 + 1.0 / shape);
  const double lg2 = std::lgamma(1.0 + 2.0 / shape);
  return std::sqrt(std::expm1(lg2 - 2.0 * lg1));
}

// log E[X^r] of Burr XII with unit scale: log(k B(k - r/c, 1 + r/c)).
double burr_log_raw_moment(double c, double k, double r) {
  return std::log(k) + std::lgamma(k - r / c) + std::lgamma(1.0 + r / c) - std::lgamma(k + 1.0);
}

double burr_cov(double c, double k) {
  return std::sqrt(std::expm1(burr_log_raw_moment(c, k, 2.0) - 2.0 * burr_log_raw_moment(c, k, 1.0)));
}

// Solves cov_of(x) = target on [lo, hi] for a function decreasing in x.
template <class F>
double solve_decreasing(F cov_of, double target, double lo, double hi, const char* what) {
  const double f_lo = cov_of(lo) - target;
  const double f_hi = cov_of(hi) - target;
  if (!(f_lo > 0.0 && f_hi < 0.0)) {
    throw InfeasibleError(std::string(what) + " cannot reach CoV " + std::to_string(target));
  }
  std::uintmax_t max_iter = 300;
  const auto root = boost::math::tools::toms748_solve(
      [&](double x) { return cov_of(x) - target; }, lo, hi, f_lo, f_hi,
      boost::math::tools::eps_tolerance<double>(52), max_iter);
  const double x = 0.5 * (root.first + root.second);
  const double residual = std::abs(cov_of(x) - target);
  if (residual > kCovTolerance) {
    throw SolverError(std::string(what) + " shape did not converge", residual);
  }
  return x;
}

void require_positive(std::span<const double> params, std::size_t count, Family family) {
  if (params.size() != count) {
    throw DomainError(std::string(to_string(family)) + " takes " + std::to_string(count) +
                      " parameters, got " + std::to_string(params.size()));
  }
  for (double v : params) {
    if (!std::isfinite(v)) throw DomainError(std::string(to_string(family)) + " parameter not finite");
  }
}

}  // namespace

std::string_view to_string(Family family) noexcept {
  switch (family) {
    case Family::Normal: return "Normal";
    case Family::BurrXII: return "BurrXII";
    case Family::Gumbel: return "Gumbel";
    case Family::Gamma: return "Gamma";
    case Family::Lognormal: return "Lognormal";
    case Family::Weibull: return "Weibull";
  }
  return "Unknown";
}

std::optional<Family> parse_family(std::string_view name) noexcept {
  for (Family f : kAllFamilies) {
    if (iequals(name, to_string(f))) return f;
  }
  if (iequals(name, "Burr")) return Family::BurrXII;
  if (iequals(name, "ExtremeValue")) return Family::Gumbel;
  return std::nullopt;
}

std::span<const std::string_view> parameter_names(Family family) noexcept {
  static constexpr std::array<std::string_view, 2> normal{"mu", "sigma"};
  static constexpr std::array<std::string_view, 3> burr{"c", "k", "scale"};
  static constexpr std::array<std::string_view, 2> gumbel{"location", "scale"};
  static constexpr std::array<std::string_view, 2> gamma{"shape", "scale"};
  static constexpr std::array<std::string_view, 2> lognormal{"log_mean", "log_sd"};
  static constexpr std::array<std::string_view, 2> weibull{"shape", "scale"};
  switch (family) {
    case Family::Normal: return normal;
    case Family::BurrXII: return burr;
    case Family::Gumbel: return gumbel;
    case Family::Gamma: return gamma;
    case Family::Lognormal: return lognormal;
    case Family::Weibull: return weibull;
  }
  return {};
}

DistributionSpec DistributionSpec::from_params(Family family, std::span<const double> params) {
  const std::size_t count = parameter_names(family).size();
  require_positive(params, count, family);
  DistributionSpec spec;
  spec.family = family;
  std::copy(params.begin(), params.end(), spec.params.begin());
  // Every parameter is a positive scale or shape except the location-like
  // first parameter of Normal, Gumbel and Lognormal.
  const bool first_is_location =
      family == Family::Normal || family == Family::Gumbel || family == Family::Lognormal;
  for (std::size_t i = first_is_location ? 1 : 0; i < count; ++i) {
    if (!(params[i] > 0.0)) {
      throw DomainError(std::string(to_string(family)) + " parameter '" +
                        std::string(parameter_names(family)[i]) + "' must be positive");
    }
  }
  if (family == Family::BurrXII && !(params[0] * params[1] > 2.0)) {
    throw DomainError("BurrXII needs c * k > 2 for a finite variance");
  }
  spec.mean = analytic_mean(spec);
  spec.cov = analytic_sd(spec) / spec.mean;
  return spec;
}

DistributionSpec solve_params(Family family, double mean, double cov, double burr_k) {
  if (!(mean > 0.0) || !std::isfinite(mean)) throw DomainError("mean must be positive");
  if (!(cov > 0.0 && cov < 1.0)) throw DomainError("CoV must lie in (0, 1)");
  const double sd = mean * cov;
  std::array<double, 3> p{};
  std::size_t count = 2;
  switch (family) {
    case Family::Normal:
      p = {mean, sd, 0.0};
      break;
    case Family::Gamma:
      p = {1.0 / (cov * cov), mean * cov * cov, 0.0};
      break;
    case Family::Lognormal: {
      const double s2 = std::log1p(cov * cov);
      p = {std::log(mean) - 0.5 * s2, std::sqrt(s2), 0.0};
      break;
    }
    case Family::Gumbel: {
      const double scale = sd * std::sqrt(6.0) / std::numbers::pi;
      p = {mean - std::numbers::egamma * scale, scale, 0.0};
      break;
    }
    case Family::Weibull: {
      const double shape = solve_decreasing(weibull_cov, cov, 0.5, 1e6, "Weibull");
      p = {shape, mean / std::exp(std::lgamma(1.0 + 1.0 / shape)), 0.0};
      break;
    }
    case Family::BurrXII: {
      if (!(burr_k > 0.0)) throw DomainError("BurrXII k must be positive");
      // c * k > 4 keeps the fourth moment finite.
      const double c_min = 4.0 / burr_k * (1.0 + 1e-9);
      const double c = solve_decreasing([&](double x) { return burr_cov(x, burr_k); }, cov,
                                        c_min, 1e6, "BurrXII");
      const double m1 = std::exp(burr_log_raw_moment(c, burr_k, 1.0));
      p = {c, burr_k, mean / m1};
      count = 3;
      break;
    }
  }
  return DistributionSpec::from_params(family, std::span<const double>(p.data(), count));
}

double analytic_mean(const DistributionSpec& spec) {
  const auto& p = spec.params;
  switch (spec.family) {
    case Family::Normal: return p[0];
    case Family::Gamma: return p[0] * p[1];
    case Family::Lognormal: return std::exp(p[0] + 0.5 * p[1] * p[1]);
    case Family::Gumbel: return p[0] + std::numbers::egamma * p[1];
    case Family::Weibull: return p[1] * std::exp(std::lgamma(1.0 + 1.0 / p[0]));
    case Family::BurrXII: return p[2] * std::exp(burr_log_raw_moment(p[0], p[1], 1.0));
  }
  return 0.0;
}

double analytic_sd(const DistributionSpec& spec) {
  const auto& p = spec.params;
  switch (spec.family) {
    case Family::Normal: return p[1];
    case Family::Gamma: return std::sqrt(p[0]) * p[1];
    case Family::Lognormal: return analytic_mean(spec) * std::sqrt(std::expm1(p[1] * p[1]));
    case Family::Gumbel: return std::numbers::pi * p[1] / std::sqrt(6.0);
    case Family::Weibull: return analytic_mean(spec) * weibull_cov(p[0]);
    case Family::BurrXII: return analytic_mean(spec) * burr_cov(p[0], p[1]);
  }
  return 0.0;
}

double cdf(const DistributionSpec& spec, double x) {
  const auto& p = spec.params;
  switch (spec.family) {
    case Family::Normal: return normal_cdf((x - p[0]) / p[1]);
    case Family::Gamma: return x <= 0.0 ? 0.0 : boost::math::gamma_p(p[0], x / p[1]);
    case Family::Lognormal: return x <= 0.0 ? 0.0 : normal_cdf((std::log(x) - p[0]) / p[1]);
    case Family::Gumbel: return std::exp(-std::exp(-(x - p[0]) / p[1]));
    case Family::Weibull: return x <= 0.0 ? 0.0 : -std::expm1(-std::pow(x / p[1], p[0]));
    case Family::BurrXII:
      return x <= 0.0 ? 0.0 : -std::expm1(-p[1] * std::log1p(std::pow(x / p[2], p[0])));
  }
  return 0.0;
}

double true_quantile(const DistributionSpec& spec, double prob) {
  require_probability(prob);
  const auto& p = spec.params;
  switch (spec.family) {
    case Family::Normal: return p[0] + p[1] * inverse_normal_cdf(prob);
    case Family::Lognormal: return std::exp(p[0] + p[1] * inverse_normal_cdf(prob));
    case Family::Gumbel: return p[0] - p[1] * std::log(-std::log(prob));
    case Family::Weibull: return p[1] * std::pow(-std::log1p(-prob), 1.0 / p[0]);
    case Family::BurrXII: {
      // (1-p)^(-1/k) - 1 = expm1(-log1p(-p) / k)
      const double t = std::expm1(-std::log1p(-prob) / p[1]);
      return p[2] * std::pow(t, 1.0 / p[0]);
    }
    case Family::Gamma: {
      const double shape = p[0];
      const double scale = p[1];
      // Bracket around the mean, then a bracketing solve on the monotone CDF.
      double lo = 0.0;
      double hi = shape * scale;
      while (boost::math::gamma_p(shape, hi / scale) < prob) {
        lo = hi;
        hi *= 2.0;
      }
      const auto f = [&](double x) { return boost::math::gamma_p(shape, x / scale) - prob; };
      std::uintmax_t max_iter = 300;
      const auto root = boost::math::tools::toms748_solve(
          f, lo, hi, f(lo), f(hi), boost::math::tools::eps_tolerance<double>(48), max_iter);
      return 0.5 * (root.first + root.second);
    }
  }
  return 0.0;
}

SampleSet draw_sample(const DistributionSpec& spec, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InsufficientSampleError("draw_sample", 1, 0);
  Rng rng(seed);
  std::vector<double> values;
  values.reserve(n);
  constexpr int kMaxRedraws = 1000;
  while (values.size() < n) {
    double x = 0.0;
    int attempts = 0;
    do {
      if (++attempts > kMaxRedraws) {
        throw DomainError(std::string(to_string(spec.family)) +
                          " spec keeps producing non-positive draws");
      }
      x = true_quantile(spec, rng.uniform_open());
    } while (!(x > 0.0) || !std::isfinite(x));
    values.push_back(x);
  }
  return SampleSet(std::move(values));
}

}  // namespace lmnpt
