#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "lmnpt/distributions.hpp"
#include "lmnpt/harness.hpp"
#include "lmnpt/travel_records.hpp"

namespace lmnpt::cli {

/// One ground-truth distribution of a run, with the name used in reports.
struct DistributionEntry {
  DistributionSpec spec;
  /// "<Family>(mean=...,cov=...)" unless given explicitly.
  std::string name;
};

/// Everything a subcommand needs, parsed and validated up front.
///
/// Relative paths inside the file (output_dir, csv) resolve against the
/// config file's directory.
struct RunConfig {
  std::string group = "scenario";
  std::vector<DistributionEntry> distributions;
  std::vector<Method> methods{Method::Lmnpt, Method::CornishFisher};
  std::vector<OutlierKind> outliers{OutlierKind::None, OutlierKind::LowHalfMin,
                                    OutlierKind::HighHalfMax};
  std::size_t trials = 100;
  std::size_t n = 100;
  std::vector<double> grid = default_grid();
  std::uint64_t seed = 1;
  std::filesystem::path output_dir = ".";
  ValidityRule validity_rule = ValidityRule::EvaluatedRange;
  /// 0 = hardware concurrency. Never affects results.
  unsigned threads = 0;
  /// Sample sizes for `sweep`; defaults to 100, 200, ..., 2000.
  std::vector<std::size_t> sizes;
  bool write_curves = true;

  // Empirical pipeline.
  std::optional<std::filesystem::path> csv;
  CsvSchema schema;
  double window_minutes = 15.0;
  std::size_t min_samples = 30;
  /// When set (and csv is absent), `empirical` first writes this synthetic
  /// data set to <output_dir>/synthetic_records.csv and then ingests it.
  std::optional<SyntheticLprConfig> synthetic;
};

/// Parses a config document. `base_dir` anchors relative paths.
/// Throws ConfigError on unknown keys, wrong types or invalid values.
RunConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir);

/// Reads and parses a config file. Throws ConfigError if it cannot be read.
RunConfig load_config(const std::filesystem::path& path);

/// Seed shared by every method/outlier scenario of one distribution, so the
/// methods are compared on identical draws. Depends on the distribution's
/// family and parameters, not on its position in the config.
std::uint64_t distribution_seed(std::uint64_t run_seed, const DistributionSpec& spec);

/// Scenario for one (distribution, method, outlier) cell of the run.
ScenarioConfig make_scenario(const RunConfig& cfg, const DistributionEntry& dist, Method method,
                             OutlierKind outlier);

}  // namespace lmnpt::cli
