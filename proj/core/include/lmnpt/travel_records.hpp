#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lmnpt/sample_set.hpp"

namespace lmnpt {

/// One observed traversal of a link.
struct TravelRecord {
  std::string link_id;
  std::string timestamp;       // as read, ISO-8601 local time
  std::int64_t epoch_seconds;  // timestamp interpreted as naive local seconds
  double travel_time;          // seconds, > 0
};

struct RejectedRow {
  std::size_t line = 0;  // 1-based, header is line 1
  std::string reason;
};

struct IngestResult {
  std::vector<TravelRecord> records;
  std::vector<RejectedRow> rejects;
};

struct CsvSchema {
  std::string link_column = "link_id";
  std::string timestamp_column = "timestamp";
  std::string travel_time_column = "travel_time_seconds";
  char delimiter = ',';
};

/// Parses "YYYY-MM-DDTHH:MM:SS" (or with a space separator), with optional
/// fractional seconds which are truncated. No zone designator.
std::optional<std::int64_t> parse_iso8601(std::string_view text) noexcept;

/// Inverse of parse_iso8601 for whole seconds, "YYYY-MM-DDTHH:MM:SS".
std::string format_iso8601(std::int64_t epoch_seconds);

/// Reads travel records. Rows that fail to parse are reported in `rejects`
/// with their line number and a reason; none are dropped silently.
/// Throws ConfigError if the header lacks a required column.
IngestResult parse_travel_csv(std::istream& in, const CsvSchema& schema = {});

/// File variant of parse_travel_csv; throws ConfigError if the file cannot be opened.
IngestResult ingest_csv(const std::filesystem::path& path, const CsvSchema& schema = {});

/// Records of one link falling in [window_start, window_end).
struct WindowedSamples {
  std::string link_id;
  std::int64_t window_start = 0;
  std::int64_t window_end = 0;
  SampleSet sample;
};

struct WindowingResult {
  std::vector<WindowedSamples> windows;  // ordered by (link_id, window_start)
  std::size_t dropped_windows = 0;
  std::size_t dropped_records = 0;
};

/// Tumbling windows of `window_minutes` aligned to multiples of the window
/// length since the epoch, per link. Windows with fewer than `min_samples`
/// records are dropped and counted. Throws DomainError unless window_minutes > 0.
WindowingResult window_group(std::span<const TravelRecord> records, double window_minutes,
                             std::size_t min_samples);

/// Synthetic LPR-like data: per link and window, lognormal travel times whose
/// mean and CoV vary from window to window. Deterministic in `seed`.
struct SyntheticLprConfig {
  std::size_t links = 4;
  std::size_t windows_per_link = 25;
  std::size_t min_records = 60;
  std::size_t max_records = 120;
  double window_minutes = 15.0;
  double mean_low = 120.0;
  double mean_high = 300.0;
  double cov_low = 0.04;
  double cov_high = 0.10;
  std::int64_t start_epoch_seconds = 1'577'865'600;  // 2020-01-01T08:00:00
  std::uint64_t seed = 2024;
};

std::vector<TravelRecord> synthesize_lpr_records(const SyntheticLprConfig& cfg);

/// Writes records with the default schema's header.
void write_travel_csv(std::ostream& out, std::span<const TravelRecord> records);

}  // namespace lmnpt
