#include "output.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "lmnpt/errors.hpp"

namespace lmnpt::cli {
namespace {

nlohmann::json stat_json(const MetricStat& s) { return {{"mean", s.mean}, {"sd", s.sd}}; }

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string pct(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f%%", 100.0 * v);
  return buf;
}

std::string fixed(double v, int digits) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw Error("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + tmp.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error("failed writing '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error("cannot move output into place at '" + path.string() + "'");
  }
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string scenario_slug(const DistributionEntry& dist, OutlierKind outlier) {
  std::string slug = std::string(to_string(dist.spec.family)) + "_cov" + format_number(dist.spec.cov) +
                     "_" + std::string(to_string(outlier));
  for (char& c : slug) {
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
    if (!ok) c = '_';
  }
  return slug;
}

std::string report_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  out << "group,distribution,family,params,mean,cov,method,outlier,validity_rule,n,trials,"
         "failed_trials,valid_trials,vr_mean,vr_sd,domain_vr_mean,domain_vr_sd,chi2_mean,chi2_sd,"
         "mape_mean,mape_sd,rmse_mean,rmse_sd,r2_mean,r2_sd\n";
  for (const auto& row : rows) {
    const auto& r = row.report;
    std::string family = "empirical";
    std::string params;
    std::string mean;
    std::string cov;
    std::string name = r.label;
    if (row.distribution) {
      const auto& spec = row.distribution->spec;
      family = std::string(to_string(spec.family));
      const auto names = parameter_names(spec.family);
      for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) params += ';';
        params += std::string(names[i]) + "=" + format_number(spec.params[i]);
      }
      mean = format_number(spec.mean);
      cov = format_number(spec.cov);
      name = row.distribution->name;
    }
    out << csv_field(row.group) << ',' << csv_field(name) << ',' << family << ',' << csv_field(params)
        << ',' << mean << ',' << cov << ',' << to_string(r.method) << ',' << to_string(r.outlier) << ','
        << to_string(r.validity_rule) << ',' << r.n << ',' << r.trials << ',' << r.failures.size()
        << ',' << r.valid_trials;
    for (const MetricStat* s : {&r.vr, &r.domain_vr, &r.chi2, &r.mape, &r.rmse, &r.r2}) {
      out << ',' << format_number(s->mean) << ',' << format_number(s->sd);
    }
    out << '\n';
  }
  return out.str();
}

nlohmann::json report_json(const ReportRow& row) {
  const auto& r = row.report;
  nlohmann::json j;
  j["group"] = row.group;
  j["label"] = r.label;
  if (row.distribution) {
    const auto& spec = row.distribution->spec;
    j["distribution"] = row.distribution->name;
    j["family"] = std::string(to_string(spec.family));
    nlohmann::json params = nlohmann::json::object();
    const auto names = parameter_names(spec.family);
    for (std::size_t i = 0; i < names.size(); ++i) params[std::string(names[i])] = spec.params[i];
    j["params"] = params;
    j["mean"] = spec.mean;
    j["cov"] = spec.cov;
  } else {
    j["distribution"] = "empirical";
  }
  j["method"] = std::string(to_string(r.method));
  j["outlier"] = std::string(to_string(r.outlier));
  j["validity_rule"] = std::string(to_string(r.validity_rule));
  j["n"] = r.n;
  j["trials"] = r.trials;
  j["valid_trials"] = r.valid_trials;
  j["domain_valid_trials"] = r.domain_valid_trials;
  j["vr"] = stat_json(r.vr);
  j["domain_vr"] = stat_json(r.domain_vr);
  j["chi2"] = stat_json(r.chi2);
  j["mape"] = stat_json(r.mape);
  j["rmse"] = stat_json(r.rmse);
  j["r2"] = stat_json(r.r2);
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& f : r.failures) failures.push_back({{"trial", f.trial_index}, {"message", f.message}});
  j["failed_trials"] = r.failures.size();
  j["failures"] = failures;
  return j;
}

std::string report_table(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-34s %-6s %-13s %-14s %-18s %-18s %-16s %-12s\n", "distribution",
                "method", "outlier", "VR", "chi2", "MAPE", "RMSE", "R2");
  out << line;
  for (const auto& row : rows) {
    const auto& r = row.report;
    const std::string name = row.distribution ? row.distribution->name : r.label;
    const std::string vr = pct(r.vr.mean) + " (" + fixed(r.vr.sd, 2) + ")";
    const std::string chi2 = fixed(r.chi2.mean, 3) + " (" + fixed(r.chi2.sd, 3) + ")";
    const std::string mape = pct(r.mape.mean) + " (" + pct(r.mape.sd) + ")";
    const std::string rmse = fixed(r.rmse.mean, 2) + " (" + fixed(r.rmse.sd, 2) + ")";
    const std::string r2 = fixed(r.r2.mean, 3) + " (" + fixed(r.r2.sd, 3) + ")";
    std::snprintf(line, sizeof line, "%-34s %-6s %-13s %-14s %-18s %-18s %-16s %-12s\n", name.c_str(),
                  std::string(to_string(r.method)).c_str(), std::string(to_string(r.outlier)).c_str(),
                  vr.c_str(), chi2.c_str(), mape.c_str(), rmse.c_str(), r2.c_str());
    out << line;
    if (!r.failures.empty()) out << "    failed trials: " << r.failures.size() << '\n';
  }
  return out.str();
}

}  // namespace lmnpt::cli
