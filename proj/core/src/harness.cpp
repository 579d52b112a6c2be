#include "lmnpt/harness.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <thread>

#include "lmnpt/errors.hpp"
#include "lmnpt/lmoments.hpp"
#include "lmnpt/normal.hpp"
#include "lmnpt/rng.hpp"

namespace lmnpt {
namespace {

template <class Enum, std::size_t N>
std::optional<Enum> parse_named(std::string_view s,
                                const std::array<std::pair<std::string_view, Enum>, N>& table) {
  for (const auto& [name, value] : table) {
    if (s == name) return value;
  }
  return std::nullopt;
}

PercentileCurve true_curve(const DistributionSpec& spec, std::span<const double> grid) {
  std::vector<double> values;
  values.reserve(grid.size());
  for (double p : grid) values.push_back(true_quantile(spec, p));
  return PercentileCurve({grid.begin(), grid.end()}, std::move(values));
}

TrialMetrics score(const SampleSet& fit_sample, const PercentileCurve& truth, Method method,
                   std::span<const double> grid, ValidityRule rule) {
  const Estimate est = estimate(fit_sample, method, grid);
  TrialMetrics m = curve_metrics(*est.curve, truth);
  m.domain_valid = est.domain.valid();
  m.valid = rule == ValidityRule::FullDomain ? m.domain_valid : est.range_valid;
  return m;
}

std::string describe(const DistributionSpec& spec) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s(mean=%g,cov=%g)", std::string(to_string(spec.family)).c_str(),
                spec.mean, spec.cov);
  return buf;
}

}  // namespace

std::string_view to_string(Method m) noexcept {
  return m == Method::Lmnpt ? "LMNPT" : "CF";
}

std::string_view to_string(OutlierKind k) noexcept {
  switch (k) {
    case OutlierKind::None: return "none";
    case OutlierKind::LowHalfMin: return "low_half_min";
    case OutlierKind::HighHalfMax: return "high_1.5_max";
  }
  return "unknown";
}

std::string_view to_string(ValidityRule r) noexcept {
  return r == ValidityRule::EvaluatedRange ? "evaluated_range" : "full_domain";
}

std::optional<Method> parse_method(std::string_view s) noexcept {
  static constexpr std::array<std::pair<std::string_view, Method>, 5> table{{
      {"LMNPT", Method::Lmnpt},
      {"lmnpt", Method::Lmnpt},
      {"LM", Method::Lmnpt},
      {"CF", Method::CornishFisher},
      {"cf", Method::CornishFisher},
  }};
  return parse_named(s, table);
}

std::optional<OutlierKind> parse_outlier(std::string_view s) noexcept {
  static constexpr std::array<std::pair<std::string_view, OutlierKind>, 7> table{{
      {"none", OutlierKind::None},
      {"low", OutlierKind::LowHalfMin},
      {"low_half_min", OutlierKind::LowHalfMin},
      {"0.5tmin", OutlierKind::LowHalfMin},
      {"high", OutlierKind::HighHalfMax},
      {"high_1.5_max", OutlierKind::HighHalfMax},
      {"1.5tmax", OutlierKind::HighHalfMax},
  }};
  return parse_named(s, table);
}

std::optional<ValidityRule> parse_validity_rule(std::string_view s) noexcept {
  static constexpr std::array<std::pair<std::string_view, ValidityRule>, 4> table{{
      {"evaluated_range", ValidityRule::EvaluatedRange},
      {"range", ValidityRule::EvaluatedRange},
      {"full_domain", ValidityRule::FullDomain},
      {"domain", ValidityRule::FullDomain},
  }};
  return parse_named(s, table);
}

SampleSet inject_outlier(const SampleSet& sample, OutlierKind kind) {
  switch (kind) {
    case OutlierKind::None: return sample;
    case OutlierKind::LowHalfMin: return sample.with_appended(0.5 * sample.min());
    case OutlierKind::HighHalfMax: return sample.with_appended(1.5 * sample.max());
  }
  return sample;
}

TrialMetrics curve_metrics(const PercentileCurve& est, const PercentileCurve& truth) {
  const auto g1 = est.grid();
  const auto g2 = truth.grid();
  if (!std::equal(g1.begin(), g1.end(), g2.begin(), g2.end())) {
    throw DomainError("estimate and truth curves use different grids");
  }
  const auto e = est.values();
  const auto t = truth.values();
  const auto n = static_cast<double>(t.size());

  double t_mean = 0.0;
  for (double v : t) {
    if (!(v > 0.0)) throw DomainError("truth curve must be positive for relative metrics");
    t_mean += v;
  }
  t_mean /= n;

  double chi2 = 0.0;
  double abs_rel = 0.0;
  double sse = 0.0;
  double sst = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double r = e[i] - t[i];
    chi2 += r * r / t[i];
    abs_rel += std::abs(r) / t[i];
    sse += r * r;
    sst += (t[i] - t_mean) * (t[i] - t_mean);
  }

  TrialMetrics m;
  m.valid = est.monotone();
  m.domain_valid = est.monotone();
  m.chi2 = chi2;
  m.mape = abs_rel / n;
  m.rmse = std::sqrt(sse / n);
  // A flat truth leaves R^2 undefined; report 1 for an exact match, else 0.
  m.r2 = sst > 0.0 ? 1.0 - sse / sst : (sse == 0.0 ? 1.0 : 0.0);
  return m;
}

Estimate estimate(const SampleSet& sample, Method method, std::span<const double> grid) {
  validate_grid(grid);
  const double z_lo = inverse_normal_cdf(grid.front());
  const double z_hi = inverse_normal_cdf(grid.back());
  Estimate out;
  out.method = method;
  if (method == Method::Lmnpt) {
    const NptCoefficients coeffs = fit_lmnpt(sample_lmoments(sample));
    out.domain = coeffs.validity;
    out.range_valid = coeffs.nondecreasing_on(z_lo, z_hi);
    out.curve = evaluate_curve(coeffs, grid);
  } else {
    const CentralMomentSummary cm = sample_central_moments(sample);
    out.domain = cf_validity(cm.skewness, cm.excess_kurtosis);
    out.range_valid = CfSlope::from_shape(cm.skewness, cm.excess_kurtosis).nonnegative_on(z_lo, z_hi);
    out.curve = cf_curve(cm, grid);
  }
  return out;
}

void ScenarioConfig::validate() const {
  if (trials < 1) throw DomainError("scenario needs at least one trial");
  if (n < 5) throw DomainError("scenario sample size must be at least 5");
  validate_grid(grid);
}

std::uint64_t trial_seed(std::uint64_t run_seed, std::size_t trial_index) noexcept {
  return derive_seed(run_seed, trial_index);
}

TrialMetrics run_trial(const ScenarioConfig& cfg, std::size_t trial_index) {
  const SampleSet drawn = draw_sample(cfg.spec, cfg.n, trial_seed(cfg.run_seed, trial_index));
  const SampleSet fit_sample = inject_outlier(drawn, cfg.outlier);
  return score(fit_sample, true_curve(cfg.spec, cfg.grid), cfg.method, cfg.grid, cfg.validity_rule);
}

MetricStat summarize(std::span<const double> values) {
  MetricStat s;
  if (values.empty()) return s;
  const auto n = static_cast<double>(values.size());
  for (double v : values) s.mean += v;
  s.mean /= n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(ss / (n - 1.0));
  }
  return s;
}

AggregateReport aggregate(std::span<const std::optional<TrialMetrics>> outcomes,
                          std::span<const TrialFailure> failures) {
  AggregateReport r;
  r.trials = outcomes.size();
  r.failures.assign(failures.begin(), failures.end());

  std::vector<double> valid, domain_valid, chi2, mape, rmse, r2;
  for (const auto& o : outcomes) {
    valid.push_back(o && o->valid ? 1.0 : 0.0);
    domain_valid.push_back(o && o->domain_valid ? 1.0 : 0.0);
    if (!o) continue;
    chi2.push_back(o->chi2);
    mape.push_back(o->mape);
    rmse.push_back(o->rmse);
    r2.push_back(o->r2);
  }
  if (chi2.empty()) {
    throw Error("all " + std::to_string(r.trials) + " trials failed" +
                (failures.empty() ? std::string() : ": " + failures.front().message));
  }
  r.valid_trials = static_cast<std::size_t>(std::count(valid.begin(), valid.end(), 1.0));
  r.domain_valid_trials =
      static_cast<std::size_t>(std::count(domain_valid.begin(), domain_valid.end(), 1.0));
  r.vr = summarize(valid);
  r.domain_vr = summarize(domain_valid);
  r.chi2 = summarize(chi2);
  r.mape = summarize(mape);
  r.rmse = summarize(rmse);
  r.r2 = summarize(r2);
  return r;
}

AggregateReport run_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  std::vector<std::optional<TrialMetrics>> outcomes(cfg.trials);
  std::vector<std::string> errors(cfg.trials);

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < cfg.trials; i = next++) {
      try {
        outcomes[i] = run_trial(cfg, i);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  unsigned threads = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.threads;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, cfg.trials));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  std::vector<TrialFailure> failures;
  for (std::size_t i = 0; i < cfg.trials; ++i) {
    if (!outcomes[i]) failures.push_back({i, errors[i]});
  }
  AggregateReport r = aggregate(outcomes, failures);
  r.distribution = describe(cfg.spec);
  r.method = cfg.method;
  r.outlier = cfg.outlier;
  r.validity_rule = cfg.validity_rule;
  r.n = cfg.n;
  r.label = r.distribution + "/" + std::string(to_string(cfg.method)) + "/" +
            std::string(to_string(cfg.outlier)) + "/n=" + std::to_string(cfg.n);
  return r;
}

std::vector<AggregateReport> sample_size_sweep(const ScenarioConfig& cfg,
                                               std::span<const std::size_t> sizes) {
  if (sizes.empty()) throw DomainError("sample-size sweep needs at least one size");
  for (std::size_t s : sizes) {
    if (s < 5) throw DomainError("sweep sizes must be at least 5, got " + std::to_string(s));
  }
  std::vector<AggregateReport> out;
  out.reserve(sizes.size());
  for (std::size_t s : sizes) {
    ScenarioConfig sized = cfg;
    sized.n = s;
    sized.run_seed = derive_seed(cfg.run_seed, s);
    out.push_back(run_scenario(sized));
  }
  return out;
}

PercentileCurve empirical_quantile_curve(const SampleSet& sample, std::span<const double> grid) {
  validate_grid(grid);
  const std::size_t n = sample.size();
  if (n < kEmpiricalMinSamples) {
    throw InsufficientSampleError("empirical quantile curve", kEmpiricalMinSamples, n);
  }
  const auto x = sample.sorted();
  const double np1 = static_cast<double>(n + 1);
  std::vector<double> values;
  values.reserve(grid.size());
  for (double p : grid) {
    // Position h in order-statistic units: p_i = i / (n+1)  <=>  i = p (n+1).
    const double h = p * np1;
    if (h <= 1.0) {
      values.push_back(x.front());
    } else if (h >= static_cast<double>(n)) {
      values.push_back(x.back());
    } else {
      const auto lo = static_cast<std::size_t>(std::floor(h));  // 1-based
      const double frac = h - static_cast<double>(lo);
      values.push_back(x[lo - 1] + frac * (x[lo] - x[lo - 1]));
    }
  }
  return PercentileCurve({grid.begin(), grid.end()}, std::move(values));
}

TrialMetrics run_empirical_trial(const SampleSet& window, Method method, OutlierKind outlier,
                                 std::span<const double> grid, ValidityRule rule) {
  const PercentileCurve truth = empirical_quantile_curve(window, grid);
  return score(inject_outlier(window, outlier), truth, method, grid, rule);
}

AggregateReport run_empirical_scenario(std::span<const SampleSet> windows, Method method,
                                       OutlierKind outlier, std::span<const double> grid,
                                       ValidityRule rule, std::string label) {
  if (windows.empty()) throw DomainError("empirical scenario has no windows");
  std::vector<std::optional<TrialMetrics>> outcomes(windows.size());
  std::vector<TrialFailure> failures;
  for (std::size_t i = 0; i < windows.size(); ++i) {
    try {
      outcomes[i] = run_empirical_trial(windows[i], method, outlier, grid, rule);
    } catch (const std::exception& e) {
      failures.push_back({i, e.what()});
    }
  }
  AggregateReport r = aggregate(outcomes, failures);
  r.distribution = "empirical";
  r.method = method;
  r.outlier = outlier;
  r.validity_rule = rule;
  r.n = 0;
  r.label = std::move(label);
  return r;
}

}  // namespace lmnpt
