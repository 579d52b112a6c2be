#include "lmnpt/travel_records.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>

#include "lmnpt/errors.hpp"
#include "lmnpt/normal.hpp"
#include "lmnpt/rng.hpp"

namespace lmnpt {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Splits one CSV line; double quotes group a field and "" escapes a quote.
std::vector<std::string> split_csv(std::string_view line, char delim) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        fields.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == delim) {
      fields.emplace_back();
    } else {
      fields.back() += ch;
    }
  }
  for (auto& f : fields) f = std::string(trim(f));
  return fields;
}

bool parse_fixed(std::string_view s, std::size_t pos, std::size_t len, int& out) {
  if (pos + len > s.size()) return false;
  const char* first = s.data() + pos;
  const auto [ptr, ec] = std::from_chars(first, first + len, out);
  return ec == std::errc() && ptr == first + len;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

std::optional<std::int64_t> parse_iso8601(std::string_view text) noexcept {
  text = trim(text);
  // YYYY-MM-DDTHH:MM:SS
  if (text.size() < 19) return std::nullopt;
  if (text[4] != '-' || text[7] != '-' || (text[10] != 'T' && text[10] != ' ') ||
      text[13] != ':' || text[16] != ':') {
    return std::nullopt;
  }
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  if (!parse_fixed(text, 0, 4, y) || !parse_fixed(text, 5, 2, mo) || !parse_fixed(text, 8, 2, d) ||
      !parse_fixed(text, 11, 2, h) || !parse_fixed(text, 14, 2, mi) ||
      !parse_fixed(text, 17, 2, s)) {
    return std::nullopt;
  }
  if (text.size() > 19) {
    if (text[19] != '.' || text.size() == 20) return std::nullopt;
    for (std::size_t i = 20; i < text.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) return std::nullopt;
    }
  }
  if (h > 23 || mi > 59 || s > 59) return std::nullopt;
  using namespace std::chrono;
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  const auto days_since_epoch = sys_days(ymd).time_since_epoch().count();
  return static_cast<std::int64_t>(days_since_epoch) * 86400 + h * 3600 + mi * 60 + s;
}

std::string format_iso8601(std::int64_t epoch_seconds) {
  using namespace std::chrono;
  const std::int64_t day_index = floor_div(epoch_seconds, 86400);
  const std::int64_t secs = epoch_seconds - day_index * 86400;
  const year_month_day ymd{sys_days{days{day_index}}};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(secs / 3600), static_cast<int>(secs / 60 % 60),
                static_cast<int>(secs % 60));
  return buf;
}

IngestResult parse_travel_csv(std::istream& in, const CsvSchema& schema) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("travel-time CSV has no header row");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_csv(line, schema.delimiter);
  const auto column = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ConfigError("travel-time CSV lacks column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t link_col = column(schema.link_column);
  const std::size_t ts_col = column(schema.timestamp_column);
  const std::size_t tt_col = column(schema.travel_time_column);

  IngestResult result;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto fields = split_csv(line, schema.delimiter);
    const auto reject = [&](std::string reason) {
      result.rejects.push_back({line_no, std::move(reason)});
    };
    if (fields.size() != header.size()) {
      reject("expected " + std::to_string(header.size()) + " fields, found " +
             std::to_string(fields.size()));
      continue;
    }
    const std::string& link = fields[link_col];
    if (link.empty()) {
      reject("empty link id");
      continue;
    }
    const auto epoch = parse_iso8601(fields[ts_col]);
    if (!epoch) {
      reject("unparseable timestamp '" + fields[ts_col] + "'");
      continue;
    }
    const std::string& tt_text = fields[tt_col];
    double tt = 0.0;
    const auto [ptr, ec] = std::from_chars(tt_text.data(), tt_text.data() + tt_text.size(), tt);
    if (ec != std::errc() || ptr != tt_text.data() + tt_text.size() || tt_text.empty()) {
      reject("unparseable travel time '" + tt_text + "'");
      continue;
    }
    if (!std::isfinite(tt)) {
      reject("non-finite travel time");
      continue;
    }
    if (tt <= 0.0) {
      reject("non-positive travel time");
      continue;
    }
    result.records.push_back({link, fields[ts_col], *epoch, tt});
  }
  return result;
}

IngestResult ingest_csv(const std::filesystem::path& path, const CsvSchema& schema) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open travel-time CSV '" + path.string() + "'");
  return parse_travel_csv(in, schema);
}

WindowingResult window_group(std::span<const TravelRecord> records, double window_minutes,
                             std::size_t min_samples) {
  if (!(window_minutes > 0.0) || !std::isfinite(window_minutes)) {
    throw DomainError("window length must be positive");
  }
  const auto width = static_cast<std::int64_t>(std::llround(window_minutes * 60.0));
  if (width < 1) throw DomainError("window length must be at least one second");

  std::map<std::pair<std::string, std::int64_t>, std::vector<double>> buckets;
  for (const auto& r : records) {
    buckets[{r.link_id, floor_div(r.epoch_seconds, width)}].push_back(r.travel_time);
  }

  WindowingResult out;
  for (auto& [key, values] : buckets) {
    if (values.size() < std::max<std::size_t>(min_samples, 1)) {
      ++out.dropped_windows;
      out.dropped_records += values.size();
      continue;
    }
    const std::int64_t start = key.second * width;
    out.windows.push_back({key.first, start, start + width, SampleSet(std::move(values))});
  }
  return out;
}

std::vector<TravelRecord> synthesize_lpr_records(const SyntheticLprConfig& cfg) {
  if (cfg.min_records == 0 || cfg.max_records < cfg.min_records) {
    throw DomainError("synthetic record counts must satisfy 0 < min <= max");
  }
  if (!(cfg.mean_low > 0.0) || cfg.mean_high < cfg.mean_low || !(cfg.cov_low > 0.0) ||
      cfg.cov_high < cfg.cov_low) {
    throw DomainError("synthetic mean/CoV ranges must be positive and ordered");
  }
  const auto width = static_cast<std::int64_t>(std::llround(cfg.window_minutes * 60.0));
  if (width < 1) throw DomainError("window length must be at least one second");

  std::vector<TravelRecord> out;
  for (std::size_t link = 0; link < cfg.links; ++link) {
    char link_id[16];
    std::snprintf(link_id, sizeof link_id, "L%03zu", link + 1);
    for (std::size_t w = 0; w < cfg.windows_per_link; ++w) {
      Rng rng(derive_seed(cfg.seed, link * 1'000'003 + w));
      const double mean = cfg.mean_low + (cfg.mean_high - cfg.mean_low) * rng.uniform_open();
      const double cov = cfg.cov_low + (cfg.cov_high - cfg.cov_low) * rng.uniform_open();
      const std::size_t span = cfg.max_records - cfg.min_records + 1;
      const std::size_t count =
          cfg.min_records + static_cast<std::size_t>(rng.uniform_open() * static_cast<double>(span));
      const double log_sd = std::sqrt(std::log1p(cov * cov));
      const double log_mean = std::log(mean) - 0.5 * log_sd * log_sd;
      const std::int64_t start = cfg.start_epoch_seconds + static_cast<std::int64_t>(w) * width;

      std::vector<TravelRecord> window;
      window.reserve(count);
      for (std::size_t i = 0; i < count; ++i) {
        const auto offset = static_cast<std::int64_t>(rng.uniform_open() * static_cast<double>(width));
        const double tt = std::exp(log_mean + log_sd * inverse_normal_cdf(rng.uniform_open()));
        // Millisecond resolution so a CSV round trip reproduces the value.
        const double rounded = std::round(tt * 1000.0) / 1000.0;
        window.push_back({link_id, format_iso8601(start + offset), start + offset, rounded});
      }
      std::stable_sort(window.begin(), window.end(), [](const auto& a, const auto& b) {
        return a.epoch_seconds < b.epoch_seconds;
      });
      out.insert(out.end(), window.begin(), window.end());
    }
  }
  return out;
}

void write_travel_csv(std::ostream& out, std::span<const TravelRecord> records) {
  out << "link_id,timestamp,travel_time_seconds\n";
  char buf[64];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof buf, "%.3f", r.travel_time);
    out << r.link_id << ',' << r.timestamp << ',' << buf << '\n';
  }
}

}  // namespace lmnpt
