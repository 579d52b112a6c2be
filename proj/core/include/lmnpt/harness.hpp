#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lmnpt/cornish_fisher.hpp"
#include "lmnpt/distributions.hpp"
#include "lmnpt/npt.hpp"
#include "lmnpt/percentile_curve.hpp"
#include "lmnpt/sample_set.hpp"

namespace lmnpt {

enum class Method { Lmnpt, CornishFisher };
enum class OutlierKind { None, LowHalfMin, HighHalfMax };

/// How a trial's `valid` flag is decided.
enum class ValidityRule {
  /// The fitted transform is nondecreasing over the z-range spanned by the
  /// evaluation grid, i.e. the reported percentile curve is monotone.
  EvaluatedRange,
  /// The fitted transform is nondecreasing for every real z (closed-form
  /// validity domain of the method).
  FullDomain,
};

std::string_view to_string(Method m) noexcept;
std::string_view to_string(OutlierKind k) noexcept;
std::string_view to_string(ValidityRule r) noexcept;
std::optional<Method> parse_method(std::string_view s) noexcept;
std::optional<OutlierKind> parse_outlier(std::string_view s) noexcept;
std::optional<ValidityRule> parse_validity_rule(std::string_view s) noexcept;

/// Appends one outlier: 0.5 * min (LowHalfMin) or 1.5 * max (HighHalfMax).
/// OutlierKind::None returns the sample unchanged.
SampleSet inject_outlier(const SampleSet& sample, OutlierKind kind);

struct TrialMetrics {
  /// Validity under the scenario's ValidityRule.
  bool valid = false;
  /// Validity under the full closed-form domain, reported alongside.
  bool domain_valid = false;
  double chi2 = 0.0;
  double mape = 0.0;  // fraction, not percent
  double rmse = 0.0;
  double r2 = 0.0;
};

/// Over grid points i:
///   chi2 = sum (e_i - t_i)^2 / t_i,  mape = mean |e_i - t_i| / t_i,
///   rmse = sqrt(mean (e_i - t_i)^2), r2 = 1 - SSE / sum (t_i - mean t)^2.
/// Both validity flags are set to est.monotone(); run_trial overrides them.
/// Throws DomainError on grid mismatch or a non-positive truth value.
TrialMetrics curve_metrics(const PercentileCurve& est, const PercentileCurve& truth);

/// A fitted estimator evaluated on a grid.
struct Estimate {
  Method method = Method::Lmnpt;
  ValidityStatus domain;  // closed-form domain check
  bool range_valid = false;
  std::optional<PercentileCurve> curve;
};

/// Fits `method` to the sample and evaluates it on the grid.
Estimate estimate(const SampleSet& sample, Method method, std::span<const double> grid);

struct ScenarioConfig {
  DistributionSpec spec;
  Method method = Method::Lmnpt;
  OutlierKind outlier = OutlierKind::None;
  std::size_t n = 100;
  std::size_t trials = 100;
  std::vector<double> grid = default_grid();
  std::uint64_t run_seed = 0;
  ValidityRule validity_rule = ValidityRule::EvaluatedRange;
  /// Worker threads for run_scenario; 0 means hardware concurrency.
  unsigned threads = 1;

  /// Throws DomainError unless trials >= 1, n >= 5 and the grid is valid.
  void validate() const;
};

/// Seed of trial `trial_index`: derive_seed(run_seed, trial_index).
std::uint64_t trial_seed(std::uint64_t run_seed, std::size_t trial_index) noexcept;

/// One trial: draw, optionally contaminate, fit, evaluate, score against the
/// true quantile curve. Metrics are produced whether or not the fit is valid.
/// Estimator errors propagate as exceptions.
TrialMetrics run_trial(const ScenarioConfig& cfg, std::size_t trial_index);

struct MetricStat {
  double mean = 0.0;
  double sd = 0.0;  // sample sd; 0 for a single observation
};

MetricStat summarize(std::span<const double> values);

struct TrialFailure {
  std::size_t trial_index = 0;
  std::string message;
};

struct AggregateReport {
  std::string label;  // "<distribution>/<method>/<outlier>/n=<n>"
  std::string distribution;
  Method method = Method::Lmnpt;
  OutlierKind outlier = OutlierKind::None;
  ValidityRule validity_rule = ValidityRule::EvaluatedRange;
  std::size_t n = 0;
  std::size_t trials = 0;
  std::size_t valid_trials = 0;
  std::size_t domain_valid_trials = 0;
  /// Fraction of all trials that were valid (failed trials count as invalid),
  /// with the sample sd of the 0/1 indicators.
  MetricStat vr;
  MetricStat domain_vr;
  MetricStat chi2;
  MetricStat mape;
  MetricStat rmse;
  MetricStat r2;
  std::vector<TrialFailure> failures;
};

/// Folds trial outcomes (indexed by trial) into a report. Throws Error if
/// every trial failed.
AggregateReport aggregate(std::span<const std::optional<TrialMetrics>> outcomes,
                          std::span<const TrialFailure> failures);

/// Runs trials 0..trials-1, optionally in parallel, and aggregates them in
/// trial order, so the report does not depend on scheduling.
AggregateReport run_scenario(const ScenarioConfig& cfg);

/// One run_scenario per size, in input order. Each size runs under
/// derive_seed(run_seed, size), so results do not depend on which other sizes
/// are requested.
std::vector<AggregateReport> sample_size_sweep(const ScenarioConfig& cfg,
                                               std::span<const std::size_t> sizes);

/// Empirical quantiles with plotting positions p_i = i / (n + 1), linear
/// interpolation between order statistics, clamped to the extremes outside
/// [p_1, p_n]. Throws InsufficientSampleError for n < 20.
PercentileCurve empirical_quantile_curve(const SampleSet& sample, std::span<const double> grid);

inline constexpr std::size_t kEmpiricalMinSamples = 20;

/// Empirical counterpart of run_trial: the truth is the empirical quantile
/// curve of the uncontaminated window; the estimate is fit to the window with
/// the optional outlier appended.
TrialMetrics run_empirical_trial(const SampleSet& window, Method method, OutlierKind outlier,
                                 std::span<const double> grid, ValidityRule rule);

/// Every window is one trial.
AggregateReport run_empirical_scenario(std::span<const SampleSet> windows, Method method,
                                       OutlierKind outlier, std::span<const double> grid,
                                       ValidityRule rule, std::string label);

}  // namespace lmnpt
