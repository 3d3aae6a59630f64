#include "rotsim/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "json.hpp"
#include "rotsim/errors.hpp"
#include "rotsim/units.hpp"
#include "rotsim/version.hpp"

namespace rotsim {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + path);
  return out;
}

nlohmann::json scan_rows_json(const ScanResult& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"tau_fs", row.tau_fs},
                    {"magnitude", row.magnitude},
                    {"signed_value", row.signed_value},
                    {"phase", row.phase},
                    {"flag", row.flag}});
  return rows;
}

} // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_scan(const std::string& path_base, const ScanResult& result,
                const std::string& format) {
  if (format == "json") {
    nlohmann::json j = {{"schema_version", kSchemaVersion},
                        {"tool_version", kToolVersion},
                        {"config_hash", result.config_hash},
                        {"series", result.series},
                        {"nu_thz", result.nu_thz},
                        {"phi_ref", result.phi_ref},
                        {"rows", scan_rows_json(result)}};
    auto out = open_out(path_base + ".json");
    out << j.dump(2) << "\n";
    return;
  }
  auto out = open_out(path_base + ".csv");
  out << "# series=" << result.series << " config_hash=" << result.config_hash
      << " tool_version=" << kToolVersion << " nu_thz=" << format_double(result.nu_thz)
      << " phi_ref=" << format_double(result.phi_ref) << "\n";
  out << "tau_fs,magnitude,signed_value,phase,flag\n";
  for (const auto& row : result.rows)
    out << format_double(row.tau_fs) << ',' << format_double(row.magnitude) << ','
        << format_double(row.signed_value) << ',' << format_double(row.phase) << ','
        << row.flag << "\n";
}

void write_trace(const std::string& path_base, const DichroismTrace& trace,
                 const std::string& config_hash, const std::string& format) {
  nlohmann::json summary = {{"schema_version", kSchemaVersion},
                            {"tool_version", kToolVersion},
                            {"config_hash", config_hash},
                            {"nu_thz", trace.nu_thz},
                            {"re_z", trace.z.real()},
                            {"im_z", trace.z.imag()},
                            {"magnitude", trace.magnitude},
                            {"signed_value", trace.signed_value},
                            {"phase", trace.phase},
                            {"phi_ref", trace.phi_ref}};
  if (format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < trace.dichroism.size(); ++i)
      rows.push_back({{"dt_fs", trace.grid.at(i)},
                      {"i_plus", trace.i_plus[i]},
                      {"i_minus", trace.i_minus[i]},
                      {"dichroism", trace.dichroism[i]}});
    summary["rows"] = rows;
    auto out = open_out(path_base + ".json");
    out << summary.dump(2) << "\n";
    return;
  }
  {
    auto out = open_out(path_base + ".csv");
    out << "# config_hash=" << config_hash << " tool_version=" << kToolVersion << "\n";
    out << "dt_fs,i_plus,i_minus,dichroism\n";
    for (std::size_t i = 0; i < trace.dichroism.size(); ++i)
      out << format_double(trace.grid.at(i)) << ',' << format_double(trace.i_plus[i])
          << ',' << format_double(trace.i_minus[i]) << ','
          << format_double(trace.dichroism[i]) << "\n";
  }
  auto out = open_out(path_base + "_summary.json");
  out << summary.dump(2) << "\n";
}

void write_populations(const std::string& dir, const PopulationScenario& scenario,
                       const std::string& config_hash, const std::string& format) {
  const std::string base = dir + "/populations_" + scenario.name;
  if (format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : scenario.rows)
      rows.push_back({{"j", r.j}, {"m", r.m}, {"population", r.population}});
    nlohmann::json j = {{"schema_version", kSchemaVersion},
                        {"config_hash", config_hash},
                        {"scenario", scenario.name},
                        {"tau_fs", scenario.tau_fs},
                        {"rows", rows}};
    auto out = open_out(base + ".json");
    out << j.dump(2) << "\n";
    return;
  }
  auto out = open_out(base + ".csv");
  out << "# scenario=" << scenario.name << " tau_fs=" << format_double(scenario.tau_fs)
      << " config_hash=" << config_hash << "\n";
  out << "j,m,population\n";
  for (const auto& r : scenario.rows)
    out << r.j << ',' << r.m << ',' << format_double(r.population) << "\n";
}

void write_train_preview(const std::string& dir, const VectorField& field,
                         const PulseTrainDescriptor& train,
                         const std::string& config_hash) {
  {
    auto out = open_out(dir + "/train_preview.csv");
    out << "# config_hash=" << config_hash << " tool_version=" << kToolVersion << "\n";
    out << "t_fs,intensity,angle_deg\n";
    for (std::size_t j = 0; j < field.n; ++j) {
      const double q = std::norm(field.ex[j]) - std::norm(field.ey[j]);
      const double u = 2.0 * std::real(field.ex[j] * std::conj(field.ey[j]));
      const double angle_deg = 0.5 * std::atan2(u, q) * 180.0 / kPi;
      out << format_double(field.time_at(j)) << ','
          << format_double(field.intensity_at(j)) << ',' << format_double(angle_deg)
          << "\n";
    }
  }
  nlohmann::json kicks = nlohmann::json::array();
  for (const auto& k : train.kicks)
    kicks.push_back({{"time_fs", k.time_fs},
                     {"strength", k.strength},
                     {"angle_deg", k.pol.kind == PolarizationState::Kind::LinearAlongZ
                                       ? 0.0
                                       : k.pol.angle * 180.0 / kPi}});
  nlohmann::json j = {{"schema_version", kSchemaVersion},
                      {"tool_version", kToolVersion},
                      {"config_hash", config_hash},
                      {"tau_fs", train.tau_fs},
                      {"alpha_deg", train.alpha * 180.0 / kPi},
                      {"mod_amp", train.mod_amp},
                      {"total_strength", train.total_strength()},
                      {"kicks", kicks}};
  auto out = open_out(dir + "/train_descriptor.json");
  out << j.dump(2) << "\n";
}

} // namespace rotsim
