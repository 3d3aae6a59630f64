#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rotsim/config.hpp"
#include "rotsim/errors.hpp"
#include "rotsim/io.hpp"
#include "rotsim/pulse_shaper.hpp"
#include "rotsim/scan.hpp"
#include "rotsim/units.hpp"
#include "rotsim/version.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir = ".";
  std::string format;
  int jobs = 1;
  std::optional<double> tau;
  std::optional<double> alpha_deg;
  std::optional<double> mod_amp;
  std::optional<double> kick_strength;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "run configuration (JSON)");
  cmd->add_option("--out", opts.out_dir, "output directory");
  cmd->add_option("--format", opts.format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--jobs", opts.jobs, "parallel scan workers")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tau", opts.tau, "pulse separation override (fs)");
  cmd->add_option("--alpha-deg", opts.alpha_deg, "polarization twist override (deg)");
  cmd->add_option("--mod-amp", opts.mod_amp, "modulation amplitude override");
  cmd->add_option("--kick-strength", opts.kick_strength, "total kick strength override");
}

rotsim::RunConfig make_config(const CommonOpts& opts, bool scan_command) {
  rotsim::RunConfig cfg;
  const bool from_file = !opts.config_path.empty();
  if (from_file)
    cfg = rotsim::load_config_file(opts.config_path);
  else
    cfg = rotsim::parse_config("{}");

  if (scan_command && !from_file && !cfg.has_tau_scan()) {
    cfg.excitation.tau_from_fs = 150.0;
    cfg.excitation.tau_to_fs = 715.0;
    cfg.excitation.tau_step_fs = 5.0;
  }
  if (opts.tau) {
    cfg.excitation.recipe.tau_fs = *opts.tau;
    if (!scan_command) {
      cfg.excitation.tau_from_fs.reset();
      cfg.excitation.tau_to_fs.reset();
      cfg.excitation.tau_step_fs.reset();
    } else {
      cfg.excitation.tau_from_fs = cfg.excitation.tau_to_fs = *opts.tau;
      cfg.excitation.tau_step_fs = 1.0;
    }
  }
  if (opts.alpha_deg) cfg.excitation.recipe.alpha = *opts.alpha_deg * rotsim::kPi / 180.0;
  if (opts.mod_amp) cfg.excitation.recipe.mod_amp = *opts.mod_amp;
  if (opts.kick_strength) cfg.excitation.recipe.p_total = *opts.kick_strength;
  if (!opts.format.empty()) cfg.output.format = opts.format;
  if (opts.out_dir != ".") cfg.output.dir = opts.out_dir;
  std::filesystem::create_directories(cfg.output.dir);
  return cfg;
}

// Commands without a config file get one matching their excitation scheme.
void force_mode(rotsim::RunConfig& cfg, bool chiral, const CommonOpts& opts) {
  if (!opts.config_path.empty()) return; // explicit configs are validated, not bent
  cfg.excitation.recipe.mode = chiral ? rotsim::TrainRecipe::Mode::Chiral
                                      : rotsim::TrainRecipe::Mode::DoubleKick;
  cfg.probe.pair = chiral ? rotsim::RunConfig::Probe::Pair::Circular
                          : rotsim::RunConfig::Probe::Pair::Linear;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum rigid-rotor pulse-train excitation and dichroism scans"};
  app.set_version_flag("--version", rotsim::kToolVersion);
  app.require_subcommand(1);

  CommonOpts ld_opts, cd_opts, delay_opts, pop_opts, train_opts;
  std::vector<double> pop_taus;

  CLI::App* ld = app.add_subcommand("ld-scan", "linear dichroism vs pulse separation");
  add_common(ld, ld_opts);
  CLI::App* cd = app.add_subcommand("cd-scan", "circular dichroism vs train period");
  add_common(cd, cd_opts);
  CLI::App* delay = app.add_subcommand("delay-scan", "dichroism vs probe delay");
  add_common(delay, delay_opts);
  CLI::App* pops = app.add_subcommand("populations", "rotational population tables");
  add_common(pops, pop_opts);
  pops->add_option("--taus", pop_taus, "pulse separations (fs)");
  CLI::App* train = app.add_subcommand("train", "pulse-train utilities");
  CLI::App* preview = train->add_subcommand("preview", "synthesized train as CSV + JSON");
  add_common(preview, train_opts);
  train->require_subcommand(1);

  CLI11_PARSE(app, argc, argv);

  try {
    if (ld->parsed()) {
      auto cfg = make_config(ld_opts, true);
      force_mode(cfg, false, ld_opts);
      auto result = rotsim::run_ld_scan(cfg, ld_opts.jobs);
      rotsim::write_scan(cfg.output.dir + "/ld_scan", result, cfg.output.format);
    } else if (cd->parsed()) {
      auto cfg = make_config(cd_opts, true);
      force_mode(cfg, true, cd_opts);
      auto result = rotsim::run_cd_scan(cfg, cd_opts.jobs);
      rotsim::write_scan(cfg.output.dir + "/cd_scan_sigma_plus", result.sigma_plus,
                         cfg.output.format);
      rotsim::write_scan(cfg.output.dir + "/cd_scan_sigma_minus", result.sigma_minus,
                         cfg.output.format);
    } else if (delay->parsed()) {
      auto cfg = make_config(delay_opts, false);
      auto trace = rotsim::run_delay_scan(cfg);
      rotsim::write_trace(cfg.output.dir + "/delay_trace", trace,
                          rotsim::config_hash(cfg), cfg.output.format);
    } else if (pops->parsed()) {
      auto cfg = make_config(pop_opts, false);
      std::vector<double> taus = pop_taus;
      if (taus.empty()) {
        const bool chiral =
            cfg.excitation.recipe.mode == rotsim::TrainRecipe::Mode::Chiral;
        taus = chiral ? std::vector<double>{110.0, 330.0, 440.0, 550.0}
                      : std::vector<double>{220.0, 440.0};
      }
      const auto scenarios = rotsim::emit_population_report(cfg, taus);
      const std::string hash = rotsim::config_hash(cfg);
      for (const auto& sc : scenarios)
        rotsim::write_populations(cfg.output.dir, sc, hash, cfg.output.format);
    } else if (preview->parsed()) {
      auto cfg = make_config(train_opts, false);
      auto recipe = cfg.excitation.recipe;
      auto field = rotsim::synthesize_field(recipe);
      auto reduction = rotsim::synthesize_train(recipe);
      rotsim::write_train_preview(cfg.output.dir, field, reduction.train,
                                  rotsim::config_hash(cfg));
      if (reduction.discarded_pulses > 0)
        std::cerr << "note: " << reduction.discarded_pulses
                  << " sub-threshold pulses discarded (fluence "
                  << rotsim::format_double(reduction.discarded_fluence) << ")\n";
    }
  } catch (const rotsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const rotsim::UnsupportedError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const rotsim::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
