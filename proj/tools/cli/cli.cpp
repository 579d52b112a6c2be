#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "config.hpp"
#include "lmnpt/errors.hpp"
#include "lmnpt/lmoments.hpp"
#include "lmnpt/normal.hpp"
#include "lmnpt/npt.hpp"
#include "lmnpt/rng.hpp"
#include "output.hpp"

namespace lmnpt::cli {
namespace {

namespace fs = std::filesystem;

#ifndef LMNPT_VERSION
#define LMNPT_VERSION "0.0.0"
#endif
constexpr std::string_view kVersion = LMNPT_VERSION;
using nlohmann::json;

struct RunOptions {
  std::string config;
  std::string out_dir;
  int threads = -1;
  bool quiet = false;
};

RunConfig load_with_overrides(const RunOptions& opt) {
  RunConfig cfg = load_config(opt.config);
  if (!opt.out_dir.empty()) cfg.output_dir = opt.out_dir;
  if (opt.threads >= 0) cfg.threads = static_cast<unsigned>(opt.threads);
  if (cfg.distributions.empty()) throw ConfigError("config lists no distributions");
  return cfg;
}

json run_header(const RunConfig& cfg, std::string_view command) {
  json j;
  j["tool"] = "lmnpt";
  j["version"] = std::string(kVersion);
  j["command"] = std::string(command);
  j["group"] = cfg.group;
  j["seed"] = cfg.seed;
  j["trials"] = cfg.trials;
  j["n"] = cfg.n;
  j["validity_rule"] = std::string(to_string(cfg.validity_rule));
  j["grid"] = {{"size", cfg.grid.size()}, {"first", cfg.grid.front()}, {"last", cfg.grid.back()}};
  return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// p, truth, one estimate column per method, all fit to the first trial's sample.
std::string curves_csv(const RunConfig& cfg, const DistributionEntry& dist, OutlierKind outlier) {
  const ScenarioConfig sc = make_scenario(cfg, dist, cfg.methods.front(), outlier);
  const SampleSet sample = inject_outlier(draw_sample(sc.spec, sc.n, trial_seed(sc.run_seed, 0)), outlier);
  std::vector<Estimate> estimates;
  for (Method m : cfg.methods) estimates.push_back(estimate(sample, m, cfg.grid));

  std::ostringstream out;
  out << "p,truth";
  for (Method m : cfg.methods) out << ',' << to_string(m);
  out << '\n';
  for (std::size_t i = 0; i < cfg.grid.size(); ++i) {
    out << format_number(cfg.grid[i]) << ',' << format_number(true_quantile(dist.spec, cfg.grid[i]));
    for (const auto& e : estimates) out << ',' << format_number(e.curve->values()[i]);
    out << '\n';
  }
  return out.str();
}

int cmd_validate(const RunOptions& opt, std::ostream& out) {
  const RunConfig cfg = load_with_overrides(opt);
  std::vector<ReportRow> rows;
  for (const auto& dist : cfg.distributions) {
    for (OutlierKind o : cfg.outliers) {
      for (Method m : cfg.methods) {
        rows.push_back({cfg.group, &dist, run_scenario(make_scenario(cfg, dist, m, o))});
      }
      if (cfg.write_curves) {
        write_atomic(cfg.output_dir / ("curves_" + scenario_slug(dist, o) + ".csv"),
                     curves_csv(cfg, dist, o));
      }
    }
  }
  json doc = run_header(cfg, "validate");
  doc["scenarios"] = json::array();
  for (const auto& row : rows) doc["scenarios"].push_back(report_json(row));
  write_atomic(cfg.output_dir / "report.csv", report_csv(rows));
  write_atomic(cfg.output_dir / "report.json", dump(doc));
  if (!opt.quiet) out << report_table(rows);
  out << "wrote " << (cfg.output_dir / "report.csv").string() << " and report.json\n";
  return kExitOk;
}

int cmd_sweep(const RunOptions& opt, std::ostream& out) {
  const RunConfig cfg = load_with_overrides(opt);
  std::vector<ReportRow> rows;
  for (const auto& dist : cfg.distributions) {
    for (OutlierKind o : cfg.outliers) {
      for (Method m : cfg.methods) {
        for (auto& r : sample_size_sweep(make_scenario(cfg, dist, m, o), cfg.sizes)) {
          rows.push_back({cfg.group, &dist, std::move(r)});
        }
      }
    }
  }
  json doc = run_header(cfg, "sweep");
  doc["sizes"] = cfg.sizes;
  doc["scenarios"] = json::array();
  for (const auto& row : rows) doc["scenarios"].push_back(report_json(row));
  write_atomic(cfg.output_dir / "sweep.csv", report_csv(rows));
  write_atomic(cfg.output_dir / "sweep.json", dump(doc));
  if (!opt.quiet) out << report_table(rows);
  out << "wrote " << (cfg.output_dir / "sweep.csv").string() << " and sweep.json\n";
  return kExitOk;
}

int cmd_empirical(const RunOptions& opt, const std::string& csv_flag, std::ostream& out) {
  RunConfig cfg = load_config(opt.config);
  if (!opt.out_dir.empty()) cfg.output_dir = opt.out_dir;
  if (!csv_flag.empty()) cfg.csv = csv_flag;

  fs::path csv_path;
  if (cfg.csv) {
    csv_path = *cfg.csv;
  } else if (cfg.synthetic) {
    csv_path = cfg.output_dir / "synthetic_records.csv";
    std::ostringstream buf;
    write_travel_csv(buf, synthesize_lpr_records(*cfg.synthetic));
    write_atomic(csv_path, buf.str());
  } else {
    throw ConfigError("empirical run needs 'csv' (or --csv) or a 'synthetic' block");
  }

  const IngestResult ingest = ingest_csv(csv_path, cfg.schema);
  const WindowingResult windowed = window_group(ingest.records, cfg.window_minutes, cfg.min_samples);
  if (windowed.windows.empty()) {
    throw Error("no window holds at least " + std::to_string(cfg.min_samples) + " records");
  }
  std::vector<SampleSet> windows;
  windows.reserve(windowed.windows.size());
  for (const auto& w : windowed.windows) windows.push_back(w.sample);

  std::vector<ReportRow> rows;
  for (OutlierKind o : cfg.outliers) {
    for (Method m : cfg.methods) {
      const std::string label =
          "empirical/" + std::string(to_string(m)) + "/" + std::string(to_string(o));
      rows.push_back({cfg.group, nullptr,
                      run_empirical_scenario(windows, m, o, cfg.grid, cfg.validity_rule, label)});
    }
  }

  std::ostringstream rejects;
  rejects << "line,reason\n";
  for (const auto& r : ingest.rejects) {
    rejects << r.line << ",\"";
    for (char c : r.reason) rejects << (c == '"' ? std::string("\"\"") : std::string(1, c));
    rejects << "\"\n";
  }

  json doc = run_header(cfg, "empirical");
  doc.erase("trials");
  doc.erase("n");
  doc["window_minutes"] = cfg.window_minutes;
  doc["min_samples"] = cfg.min_samples;
  doc["ingest"] = {{"records", ingest.records.size()},
                   {"rejected_rows", ingest.rejects.size()},
                   {"windows", windowed.windows.size()},
                   {"dropped_windows", windowed.dropped_windows},
                   {"dropped_records", windowed.dropped_records}};
  doc["scenarios"] = json::array();
  for (const auto& row : rows) doc["scenarios"].push_back(report_json(row));
  write_atomic(cfg.output_dir / "rejects.csv", rejects.str());
  write_atomic(cfg.output_dir / "report.csv", report_csv(rows));
  write_atomic(cfg.output_dir / "report.json", dump(doc));
  if (!opt.quiet) out << report_table(rows);
  out << "ingested " << ingest.records.size() << " records (" << ingest.rejects.size()
      << " rejected) into " << windowed.windows.size() << " windows (" << windowed.dropped_windows
      << " windows / " << windowed.dropped_records << " records below min_samples)\n";
  return kExitOk;
}

int cmd_domain(const std::string& path, double step, std::ostream& out) {
  if (!(step > 0.0)) throw ConfigError("--step must be positive");
  const auto pts = validity_boundary(step);
  std::ostringstream csv;
  csv << "tau4,tau3_min,tau3_max\n";
  char line[96];
  for (const auto& p : pts) {
    std::snprintf(line, sizeof line, "%.9f,%.9f,%.9f\n", p.tau4, p.tau3_min, p.tau3_max);
    csv << line;
  }
  write_atomic(path, csv.str());
  const auto k = NptConstants::published();
  out << "wrote " << pts.size() << " boundary points for tau4 in [" << format_number(k.tau4_lower())
      << ", " << format_number(k.tau4_upper()) << "] to " << path << '\n';
  return kExitOk;
}

bool check(std::ostream& out, bool ok, const std::string& what) {
  out << (ok ? "PASS  " : "FAIL  ") << what << '\n';
  return ok;
}

int cmd_selftest(std::ostream& out) {
  bool all = true;

  const NptConstants pub = NptConstants::published();
  const NptConstants rec = NptConstants::from_sqm_table(sqm_table());
  const double dev = std::max({std::abs(rec.a1 - pub.a1), std::abs(rec.b1 - pub.b1),
                               std::abs(rec.b2 - pub.b2), std::abs(rec.c1 - pub.c1),
                               std::abs(rec.d1 - pub.d1), std::abs(rec.d2 - pub.d2)});
  all &= check(out, dev <= 1e-5,
               "constant recovery from quadrature, max |deviation| = " + format_number(dev));

  // Brute-force order-statistic oracle against the PWM route.
  Rng rng(0x5eed);
  double worst = 0.0;
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 4 + static_cast<std::size_t>(rng.uniform_open() * 9.0);
    std::vector<double> x(n);
    for (auto& v : x) v = std::exp(4.0 + 0.5 * inverse_normal_cdf(rng.uniform_open()));
    const auto lm = sample_lmoments(x);
    const double l[4] = {lm.l1, lm.l2, lm.l3, lm.l4};
    for (int r = 1; r <= 4; ++r) {
      const double bf = brute_force_lmoment(x, r);
      worst = std::max(worst, std::abs(l[r - 1] - bf) / std::max(std::abs(bf), lm.l2));
    }
  }
  all &= check(out, worst <= 1e-12,
               "L-moments match the brute-force oracle, max rel. error = " + format_number(worst));

  // Inverse normal CDF against bisection on erfc.
  double inv_err = 0.0;
  for (double lp = -8.0; lp < -0.3; lp += 0.1) {
    const double p = std::pow(10.0, lp);
    double lo = -40.0;
    double hi = 40.0;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      (0.5 * std::erfc(-mid / std::sqrt(2.0)) < p ? lo : hi) = mid;
    }
    inv_err = std::max(inv_err, std::abs(inverse_normal_cdf(p) - 0.5 * (lo + hi)));
  }
  all &= check(out, inv_err <= 1e-9,
               "inverse normal CDF vs. bisection, max abs error = " + format_number(inv_err));

  out << (all ? "selftest passed\n" : "selftest FAILED\n");
  return all ? kExitOk : kExitRuntime;
}

int cmd_synth(const std::string& path, const SyntheticLprConfig& s, std::ostream& out) {
  const auto records = synthesize_lpr_records(s);
  std::ostringstream buf;
  write_travel_csv(buf, records);
  write_atomic(path, buf.str());
  out << "wrote " << records.size() << " records to " << path << '\n';
  return kExitOk;
}

void add_run_options(CLI::App* sub, RunOptions& opt) {
  sub->add_option("-c,--config", opt.config, "JSON run configuration")->required()->check(CLI::ExistingFile);
  sub->add_option("-o,--out", opt.out_dir, "Output directory (overrides output_dir)");
  sub->add_option("-j,--threads", opt.threads, "Worker threads, 0 = all cores")->check(CLI::NonNegativeNumber);
  sub->add_flag("-q,--quiet", opt.quiet, "Do not print the summary table");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Percentile-function estimation from L-moments, with a Cornish-Fisher baseline", "lmnpt"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  RunOptions run_opt;
  auto* validate = app.add_subcommand("validate", "Monte Carlo scenarios against theoretical truth");
  add_run_options(validate, run_opt);
  auto* sweep = app.add_subcommand("sweep", "Sample-size series of the configured scenarios");
  add_run_options(sweep, run_opt);
  auto* empirical = app.add_subcommand("empirical", "Windowed travel-time CSV against empirical truth");
  add_run_options(empirical, run_opt);
  std::string csv_flag;
  empirical->add_option("--csv", csv_flag, "Travel-time CSV (overrides csv)");

  auto* domain = app.add_subcommand("domain", "Emit the validity-domain boundary as CSV");
  std::string domain_out = "domain.csv";
  double step = 1e-3;
  domain->add_option("-o,--out", domain_out, "Output CSV path");
  domain->add_option("--step", step, "tau4 step");

  auto* selftest = app.add_subcommand("selftest", "Constant-recovery and oracle checks");

  auto* synth = app.add_subcommand("synth", "Write a synthetic LPR-like travel-time CSV");
  std::string synth_out = "synthetic_records.csv";
  SyntheticLprConfig synth_cfg;
  synth->add_option("-o,--out", synth_out, "Output CSV path");
  synth->add_option("--links", synth_cfg.links, "Number of links");
  synth->add_option("--windows", synth_cfg.windows_per_link, "Windows per link");
  synth->add_option("--min-records", synth_cfg.min_records, "Minimum records per window");
  synth->add_option("--max-records", synth_cfg.max_records, "Maximum records per window");
  synth->add_option("--window-minutes", synth_cfg.window_minutes, "Window length in minutes");
  synth->add_option("--seed", synth_cfg.seed, "Generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate) return cmd_validate(run_opt, out);
    if (*sweep) return cmd_sweep(run_opt, out);
    if (*empirical) return cmd_empirical(run_opt, csv_flag, out);
    if (*domain) return cmd_domain(domain_out, step, out);
    if (*selftest) return cmd_selftest(out);
    if (*synth) return cmd_synth(synth_out, synth_cfg, out);
  } catch (const ConfigError& e) {
    err << "lmnpt: configuration error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "lmnpt: error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"lmnpt"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace lmnpt::cli
