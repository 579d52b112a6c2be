#include "config.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <fstream>
#include <set>

#include "lmnpt/errors.hpp"
#include "lmnpt/rng.hpp"

namespace lmnpt::cli {
namespace {

using nlohmann::json;

void require_known_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <class T>
T get_as(const json& v, const std::string& key) {
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config key '" + key + "' has the wrong type");
  }
}

double get_number(const json& obj, const std::string& key) {
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError("config key '" + key + "' must be a number");
  return v.get<double>();
}

std::uint64_t get_count(const json& obj, const std::string& key) {
  const json& v = obj.at(key);
  if (!v.is_number_unsigned()) {
    throw ConfigError("config key '" + key + "' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::string describe(const DistributionSpec& spec) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s(mean=%g,cov=%g)", std::string(to_string(spec.family)).c_str(),
                spec.mean, spec.cov);
  return buf;
}

Family family_from(const json& v) {
  const auto name = get_as<std::string>(v, "family");
  const auto f = parse_family(name);
  if (!f) throw ConfigError("unknown distribution family '" + name + "'");
  return *f;
}

// Wraps library validation errors so they surface as configuration errors.
template <class F>
auto as_config_error(const std::string& what, F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(what + ": " + e.what());
  }
}

DistributionEntry parse_distribution(const json& v, const json& root) {
  const auto top_level = [&](const char* key) -> std::optional<double> {
    if (root.contains(key)) return get_number(root, key);
    return std::nullopt;
  };

  if (v.is_string()) {
    const Family f = family_from(v);
    const auto mean = top_level("mean");
    const auto cov = top_level("cov");
    if (!mean || !cov) {
      throw ConfigError("distribution '" + v.get<std::string>() +
                        "' given by name needs top-level 'mean' and 'cov'");
    }
    const double k = top_level("burr_k").value_or(kDefaultBurrK);
    DistributionEntry e;
    e.spec = as_config_error("distribution " + v.get<std::string>(),
                             [&] { return solve_params(f, *mean, *cov, k); });
    e.name = describe(e.spec);
    return e;
  }
  if (!v.is_object()) throw ConfigError("each distribution must be a family name or an object");
  require_known_keys(v, {"family", "mean", "cov", "burr_k", "params", "name"}, "distribution");
  if (!v.contains("family")) throw ConfigError("distribution object lacks 'family'");
  const Family f = family_from(v.at("family"));

  DistributionEntry e;
  if (v.contains("params")) {
    if (v.contains("mean") || v.contains("cov")) {
      throw ConfigError("distribution gives both 'params' and 'mean'/'cov'");
    }
    const auto params = get_as<std::vector<double>>(v.at("params"), "params");
    e.spec = as_config_error("distribution params",
                             [&] { return DistributionSpec::from_params(f, params); });
  } else {
    const auto mean = v.contains("mean") ? std::optional(get_number(v, "mean")) : top_level("mean");
    const auto cov = v.contains("cov") ? std::optional(get_number(v, "cov")) : top_level("cov");
    if (!mean || !cov) throw ConfigError("distribution needs 'mean' and 'cov' or 'params'");
    const double k = v.contains("burr_k") ? get_number(v, "burr_k")
                                          : top_level("burr_k").value_or(kDefaultBurrK);
    e.spec = as_config_error("distribution " + std::string(to_string(f)),
                             [&] { return solve_params(f, *mean, *cov, k); });
  }
  e.name = v.contains("name") ? get_as<std::string>(v.at("name"), "name") : describe(e.spec);
  return e;
}

std::vector<double> parse_grid(const json& v) {
  std::vector<double> grid;
  if (v.is_array()) {
    grid = get_as<std::vector<double>>(v, "grid");
  } else if (v.is_object()) {
    require_known_keys(v, {"start", "stop", "step"}, "grid");
    if (!v.contains("start") || !v.contains("stop") || !v.contains("step")) {
      throw ConfigError("grid object needs 'start', 'stop' and 'step'");
    }
    grid = as_config_error("grid", [&] {
      return make_grid(get_number(v, "start"), get_number(v, "stop"), get_number(v, "step"));
    });
  } else {
    throw ConfigError("'grid' must be a list of probabilities or {start, stop, step}");
  }
  as_config_error("grid", [&] {
    validate_grid(grid);
    return 0;
  });
  return grid;
}

SyntheticLprConfig parse_synthetic(const json& v) {
  if (!v.is_object()) throw ConfigError("'synthetic' must be an object");
  require_known_keys(v,
                     {"links", "windows_per_link", "min_records", "max_records", "window_minutes",
                      "mean_low", "mean_high", "cov_low", "cov_high", "start", "seed"},
                     "synthetic");
  SyntheticLprConfig s;
  if (v.contains("links")) s.links = get_count(v, "links");
  if (v.contains("windows_per_link")) s.windows_per_link = get_count(v, "windows_per_link");
  if (v.contains("min_records")) s.min_records = get_count(v, "min_records");
  if (v.contains("max_records")) s.max_records = get_count(v, "max_records");
  if (v.contains("window_minutes")) s.window_minutes = get_number(v, "window_minutes");
  if (v.contains("mean_low")) s.mean_low = get_number(v, "mean_low");
  if (v.contains("mean_high")) s.mean_high = get_number(v, "mean_high");
  if (v.contains("cov_low")) s.cov_low = get_number(v, "cov_low");
  if (v.contains("cov_high")) s.cov_high = get_number(v, "cov_high");
  if (v.contains("seed")) s.seed = get_count(v, "seed");
  if (v.contains("start")) {
    const auto text = get_as<std::string>(v.at("start"), "synthetic.start");
    const auto epoch = parse_iso8601(text);
    if (!epoch) throw ConfigError("synthetic.start is not an ISO-8601 timestamp: " + text);
    s.start_epoch_seconds = *epoch;
  }
  if (s.min_records == 0 || s.max_records < s.min_records) {
    throw ConfigError("synthetic needs 0 < min_records <= max_records");
  }
  return s;
}

}  // namespace

RunConfig parse_config(const json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  require_known_keys(doc,
                     {"group", "distributions", "mean", "cov", "burr_k", "methods", "outliers",
                      "trials", "n", "grid", "seed", "output_dir", "validity_rule", "threads",
                      "sizes", "write_curves", "csv", "schema", "window_minutes", "min_samples",
                      "synthetic"},
                     "config");
  RunConfig cfg;
  const auto resolve = [&](const std::string& p) {
    const std::filesystem::path path(p);
    return (path.is_absolute() ? path : base_dir / path).lexically_normal();
  };

  if (doc.contains("group")) cfg.group = get_as<std::string>(doc.at("group"), "group");
  if (doc.contains("distributions")) {
    const json& d = doc.at("distributions");
    if (d.is_string() && d.get<std::string>() == "all") {
      for (Family f : kAllFamilies) {
        cfg.distributions.push_back(parse_distribution(json(std::string(to_string(f))), doc));
      }
    } else if (d.is_array()) {
      for (const auto& item : d) cfg.distributions.push_back(parse_distribution(item, doc));
    } else {
      throw ConfigError("'distributions' must be a list or \"all\"");
    }
  }
  if (doc.contains("methods")) {
    cfg.methods.clear();
    for (const auto& name : get_as<std::vector<std::string>>(doc.at("methods"), "methods")) {
      const auto m = parse_method(name);
      if (!m) throw ConfigError("unknown method '" + name + "'");
      cfg.methods.push_back(*m);
    }
    if (cfg.methods.empty()) throw ConfigError("'methods' is empty");
  }
  if (doc.contains("outliers")) {
    cfg.outliers.clear();
    for (const auto& name : get_as<std::vector<std::string>>(doc.at("outliers"), "outliers")) {
      const auto o = parse_outlier(name);
      if (!o) throw ConfigError("unknown outlier kind '" + name + "'");
      cfg.outliers.push_back(*o);
    }
    if (cfg.outliers.empty()) throw ConfigError("'outliers' is empty");
  }
  if (doc.contains("trials")) cfg.trials = get_count(doc, "trials");
  if (doc.contains("n")) cfg.n = get_count(doc, "n");
  if (cfg.trials < 1) throw ConfigError("'trials' must be at least 1");
  if (cfg.n < 5) throw ConfigError("'n' must be at least 5");
  if (doc.contains("grid")) cfg.grid = parse_grid(doc.at("grid"));
  if (doc.contains("seed")) cfg.seed = get_count(doc, "seed");
  if (doc.contains("output_dir")) {
    cfg.output_dir = resolve(get_as<std::string>(doc.at("output_dir"), "output_dir"));
  } else {
    cfg.output_dir = base_dir;
  }
  if (doc.contains("validity_rule")) {
    const auto name = get_as<std::string>(doc.at("validity_rule"), "validity_rule");
    const auto r = parse_validity_rule(name);
    if (!r) throw ConfigError("unknown validity_rule '" + name + "'");
    cfg.validity_rule = *r;
  }
  if (doc.contains("threads")) cfg.threads = static_cast<unsigned>(get_count(doc, "threads"));
  if (doc.contains("sizes")) {
    cfg.sizes = get_as<std::vector<std::size_t>>(doc.at("sizes"), "sizes");
    if (cfg.sizes.empty()) throw ConfigError("'sizes' is empty");
    for (std::size_t s : cfg.sizes) {
      if (s < 5) throw ConfigError("every sweep size must be at least 5");
    }
  } else {
    for (std::size_t s = 100; s <= 2000; s += 100) cfg.sizes.push_back(s);
  }
  if (doc.contains("write_curves")) cfg.write_curves = get_as<bool>(doc.at("write_curves"), "write_curves");
  if (doc.contains("csv")) cfg.csv = resolve(get_as<std::string>(doc.at("csv"), "csv"));
  if (doc.contains("schema")) {
    const json& s = doc.at("schema");
    if (!s.is_object()) throw ConfigError("'schema' must be an object");
    require_known_keys(s, {"link_id", "timestamp", "travel_time_seconds", "delimiter"}, "schema");
    if (s.contains("link_id")) cfg.schema.link_column = get_as<std::string>(s.at("link_id"), "schema.link_id");
    if (s.contains("timestamp")) {
      cfg.schema.timestamp_column = get_as<std::string>(s.at("timestamp"), "schema.timestamp");
    }
    if (s.contains("travel_time_seconds")) {
      cfg.schema.travel_time_column =
          get_as<std::string>(s.at("travel_time_seconds"), "schema.travel_time_seconds");
    }
    if (s.contains("delimiter")) {
      const auto d = get_as<std::string>(s.at("delimiter"), "schema.delimiter");
      if (d.size() != 1 || d[0] == '"') throw ConfigError("schema.delimiter must be one character");
      cfg.schema.delimiter = d[0];
    }
  }
  if (doc.contains("window_minutes")) {
    cfg.window_minutes = get_number(doc, "window_minutes");
    if (!(cfg.window_minutes > 0.0)) throw ConfigError("'window_minutes' must be positive");
  }
  if (doc.contains("min_samples")) {
    cfg.min_samples = get_count(doc, "min_samples");
    if (cfg.min_samples < kEmpiricalMinSamples) {
      throw ConfigError("'min_samples' must be at least " + std::to_string(kEmpiricalMinSamples));
    }
  }
  if (doc.contains("synthetic")) cfg.synthetic = parse_synthetic(doc.at("synthetic"));
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path.string() + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return parse_config(doc, path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path());
}

std::uint64_t distribution_seed(std::uint64_t run_seed, const DistributionSpec& spec) {
  std::uint64_t h = derive_seed(run_seed, static_cast<std::uint64_t>(spec.family));
  for (double p : spec.params) h = derive_seed(h, std::bit_cast<std::uint64_t>(p));
  return h;
}

ScenarioConfig make_scenario(const RunConfig& cfg, const DistributionEntry& dist, Method method,
                             OutlierKind outlier) {
  ScenarioConfig s;
  s.spec = dist.spec;
  s.method = method;
  s.outlier = outlier;
  s.n = cfg.n;
  s.trials = cfg.trials;
  s.grid = cfg.grid;
  s.run_seed = distribution_seed(cfg.seed, dist.spec);
  s.validity_rule = cfg.validity_rule;
  s.threads = cfg.threads;
  return s;
}

}  // namespace lmnpt::cli
