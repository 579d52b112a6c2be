#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "config.hpp"
#include "lmnpt/harness.hpp"

namespace lmnpt::cli {

/// Writes `content` to a temporary sibling and renames it over `path`, so a
/// reader never observes a partial file. Creates missing parent directories.
/// Throws Error on I/O failure.
void write_atomic(const std::filesystem::path& path, std::string_view content);

/// Shortest-round-trip-safe text for CSV cells ("%.10g").
std::string format_number(double v);

/// "<family>_cov<cov>_<outlier>" with characters unsafe in file names replaced.
std::string scenario_slug(const DistributionEntry& dist, OutlierKind outlier);

/// One row of report.csv / sweep.csv.
struct ReportRow {
  std::string group;
  const DistributionEntry* distribution = nullptr;  // null for empirical runs
  AggregateReport report;
};

std::string report_csv(const std::vector<ReportRow>& rows);

/// Machine-readable form of a report row; contains nothing run-environment
/// dependent (no timestamps, paths or thread counts).
nlohmann::json report_json(const ReportRow& row);

/// Human-readable table with "mean (sd)" cells.
std::string report_table(const std::vector<ReportRow>& rows);

}  // namespace lmnpt::cli
