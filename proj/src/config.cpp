#include "rotsim/config.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "rotsim/errors.hpp"
#include "rotsim/units.hpp"
#include "rotsim/version.hpp"

namespace rotsim {

namespace {

using nlohmann::json;

double get_num(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) throw ConfigError(std::string(key) + " must be a number");
  return j[key].get<double>();
}

int get_int(const json& j, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer())
    throw ConfigError(std::string(key) + " must be an integer");
  return j[key].get<int>();
}

std::string get_str(const json& j, const char* key, const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_string()) throw ConfigError(std::string(key) + " must be a string");
  return j[key].get<std::string>();
}

} // namespace

void RunConfig::validate() const {
  rotor.validate();

  const auto& ex = excitation;
  if (has_tau_scan()) {
    if (!(*ex.tau_from_fs > 0.0) || !(*ex.tau_to_fs > *ex.tau_from_fs) ||
        !(*ex.tau_step_fs > 0.0))
      throw ConfigError("tau scan range must be positive and ordered");
  }
  if (!(ex.recipe.tau_fs > 0.0)) throw ConfigError("tau must be positive");
  if (ex.recipe.p_total < 0.0) throw ConfigError("kick strength must be >= 0");
  if (ex.recipe.peak_threshold <= 0.0 || ex.recipe.peak_threshold >= 1.0)
    throw ConfigError("peak threshold must be in (0,1)");
  if (ex.field_step_fs <= 0.0) throw ConfigError("field step must be positive");

  probe.grid.validate();
  const double tau_max = has_tau_scan() ? *ex.tau_to_fs : ex.recipe.tau_fs;
  const double train_end = 5.0 * tau_max + 2.0 * ex.recipe.pulse_fwhm_fs;
  if (probe.grid.from_fs <= train_end)
    throw ConfigError("probe delay window must start after the train ends (" +
                      std::to_string(train_end) + " fs)");
  if (output.format != "csv" && output.format != "json")
    throw ConfigError("output format must be csv or json");
}

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }

  const int schema = get_int(j, "schema_version", kSchemaVersion);
  if (schema != kSchemaVersion)
    throw ConfigError("unsupported schema_version " + std::to_string(schema));

  RunConfig cfg;

  // rotor
  {
    const json r = j.value("rotor", json::object());
    const double nu13 = get_num(r, "nu13_thz", 2.27);
    if (!(nu13 > 0.0)) throw ConfigError("nu13_thz must be positive");
    const double b0 = nu13 / 10.0; // E3 - E1 = 10 B
    cfg.rotor.delta_alpha_a3 = get_num(r, "delta_alpha_a3", 35.1);
    cfg.rotor.j_max = get_int(r, "j_max", 11);
    const std::string parity = get_str(r, "j_parity", "odd");
    if (parity == "odd")
      cfg.rotor.j_parity = JParity::Odd;
    else if (parity == "even")
      cfg.rotor.j_parity = JParity::Even;
    else if (parity == "any")
      cfg.rotor.j_parity = JParity::Any;
    else
      throw ConfigError("j_parity must be odd, even or any");

    cfg.rotor.vib.clear();
    if (r.contains("vib")) {
      if (!r["vib"].is_array()) throw ConfigError("rotor.vib must be an array");
      for (const auto& lv : r["vib"]) {
        RotorSpec::VibLevel level;
        level.v = get_int(lv, "v", 0);
        level.weight = get_num(lv, "weight", 1.0);
        level.b_thz = lv.contains("b_thz") ? get_num(lv, "b_thz", b0)
                                           : b0 * get_num(lv, "b_scale", 1.0);
        cfg.rotor.vib.push_back(level);
      }
    } else {
      cfg.rotor.vib.push_back({0, 1.0, b0});
    }
    std::sort(cfg.rotor.vib.begin(), cfg.rotor.vib.end(),
              [](const auto& a, const auto& b) { return a.v < b.v; });
  }

  // excitation
  {
    const json e = j.value("excitation", json::object());
    auto& ex = cfg.excitation;
    const std::string mode = get_str(e, "mode", "double-kick");
    if (mode == "double-kick")
      ex.recipe.mode = TrainRecipe::Mode::DoubleKick;
    else if (mode == "chiral")
      ex.recipe.mode = TrainRecipe::Mode::Chiral;
    else
      throw ConfigError("excitation.mode must be double-kick or chiral");

    ex.recipe.tau_fs = get_num(e, "tau_fs", 440.0);
    ex.recipe.alpha = get_num(e, "alpha_deg", 45.0) * kPi / 180.0;
    ex.recipe.mod_amp = get_num(e, "mod_amp", 2.6);
    ex.recipe.handedness = get_int(e, "handedness", 1) >= 0 ? 1 : -1;
    ex.recipe.p_total = get_num(e, "kick_strength", 0.2);
    ex.recipe.pulse_fwhm_fs = get_num(e, "pulse_fwhm_fs", 50.0);
    ex.recipe.center_nm = get_num(e, "center_nm", 793.0);
    ex.recipe.grid.samples = static_cast<std::size_t>(get_int(e, "grid_samples", 16384));
    ex.recipe.grid.dt_fs = get_num(e, "grid_dt_fs", 0.5);
    ex.recipe.peak_threshold = get_num(e, "peak_threshold", 0.02);
    if (e.contains("tau_scan")) {
      const json& s = e["tau_scan"];
      ex.tau_from_fs = get_num(s, "from_fs", 150.0);
      ex.tau_to_fs = get_num(s, "to_fs", 715.0);
      ex.tau_step_fs = get_num(s, "step_fs", 5.0);
    }
    const std::string prop = get_str(e, "propagation", "impulsive");
    if (prop == "impulsive")
      ex.propagation = RunConfig::Excitation::Propagation::Impulsive;
    else if (prop == "field")
      ex.propagation = RunConfig::Excitation::Propagation::Field;
    else
      throw ConfigError("excitation.propagation must be impulsive or field");
    ex.field_step_fs = get_num(e, "field_step_fs", 0.5);
  }

  // probe
  {
    const json p = j.value("probe", json::object());
    const std::string model = get_str(p, "model", "two-photon");
    if (model == "two-photon")
      cfg.probe.model = DetectionModel::TwoPhoton;
    else if (model == "alignment-proxy")
      cfg.probe.model = DetectionModel::AlignmentProxy;
    else
      throw ConfigError("probe.model must be two-photon or alignment-proxy");

    const std::string pair = get_str(p, "pair", "linear");
    if (pair == "linear")
      cfg.probe.pair = RunConfig::Probe::Pair::Linear;
    else if (pair == "circular")
      cfg.probe.pair = RunConfig::Probe::Pair::Circular;
    else
      throw ConfigError("probe.pair must be linear or circular");

    cfg.probe.grid.from_fs = get_num(p, "dt_from_fs", 11000.0);
    cfg.probe.grid.to_fs = get_num(p, "dt_to_fs", 17000.0);
    cfg.probe.grid.step_fs = get_num(p, "dt_step_fs", 10.0);
    if (p.contains("nu_thz")) cfg.probe.nu_thz = get_num(p, "nu_thz", 0.0);
    if (p.contains("phi_ref")) cfg.probe.phi_ref = get_num(p, "phi_ref", 0.0);
  }

  // output
  {
    const json o = j.value("output", json::object());
    cfg.output.dir = get_str(o, "dir", ".");
    cfg.output.format = get_str(o, "format", "csv");
  }

  cfg.validate();
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string canonical_json(const RunConfig& cfg) {
  json j;
  j["schema_version"] = kSchemaVersion;

  json vib = json::array();
  for (const auto& lv : cfg.rotor.vib)
    vib.push_back({{"v", lv.v}, {"weight", lv.weight}, {"b_thz", lv.b_thz}});
  j["rotor"] = {
      {"nu13_thz", cfg.rotor.nu13_thz()},
      {"delta_alpha_a3", cfg.rotor.delta_alpha_a3},
      {"j_max", cfg.rotor.j_max},
      {"j_parity", cfg.rotor.j_parity == JParity::Odd
                       ? "odd"
                       : (cfg.rotor.j_parity == JParity::Even ? "even" : "any")},
      {"vib", vib},
  };

  const auto& ex = cfg.excitation;
  json e = {
      {"mode", ex.recipe.mode == TrainRecipe::Mode::DoubleKick ? "double-kick" : "chiral"},
      {"tau_fs", ex.recipe.tau_fs},
      {"alpha_deg", ex.recipe.alpha * 180.0 / kPi},
      {"mod_amp", ex.recipe.mod_amp},
      {"handedness", ex.recipe.handedness},
      {"kick_strength", ex.recipe.p_total},
      {"pulse_fwhm_fs", ex.recipe.pulse_fwhm_fs},
      {"center_nm", ex.recipe.center_nm},
      {"grid_samples", static_cast<int>(ex.recipe.grid.samples)},
      {"grid_dt_fs", ex.recipe.grid.dt_fs},
      {"peak_threshold", ex.recipe.peak_threshold},
      {"propagation",
       ex.propagation == RunConfig::Excitation::Propagation::Impulsive ? "impulsive"
                                                                       : "field"},
      {"field_step_fs", ex.field_step_fs},
  };
  if (cfg.has_tau_scan())
    e["tau_scan"] = {{"from_fs", *ex.tau_from_fs},
                     {"to_fs", *ex.tau_to_fs},
                     {"step_fs", *ex.tau_step_fs}};
  j["excitation"] = e;

  json p = {
      {"model", cfg.probe.model == DetectionModel::TwoPhoton ? "two-photon"
                                                             : "alignment-proxy"},
      {"pair", cfg.probe.pair == RunConfig::Probe::Pair::Linear ? "linear" : "circular"},
      {"dt_from_fs", cfg.probe.grid.from_fs},
      {"dt_to_fs", cfg.probe.grid.to_fs},
      {"dt_step_fs", cfg.probe.grid.step_fs},
  };
  if (cfg.probe.nu_thz) p["nu_thz"] = *cfg.probe.nu_thz;
  if (cfg.probe.phi_ref) p["phi_ref"] = *cfg.probe.phi_ref;
  j["probe"] = p;

  j["output"] = {{"dir", cfg.output.dir}, {"format", cfg.output.format}};

  return j.dump(2);
}

std::string config_hash(const RunConfig& cfg) {
  const std::string text = canonical_json(cfg);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

} // namespace rotsim
