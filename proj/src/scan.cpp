#include "rotsim/scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <thread>

#include "rotsim/errors.hpp"
#include "rotsim/propagate.hpp"
#include "rotsim/units.hpp"

namespace rotsim {

namespace {

std::vector<double> tau_grid(const RunConfig& cfg) {
  if (!cfg.has_tau_scan()) return {cfg.excitation.recipe.tau_fs};
  std::vector<double> taus;
  const double from = *cfg.excitation.tau_from_fs;
  const double to = *cfg.excitation.tau_to_fs;
  const double step = *cfg.excitation.tau_step_fs;
  for (int i = 0;; ++i) {
    const double tau = from + step * i;
    if (tau > to + 1e-9) break;
    taus.push_back(tau);
  }
  return taus;
}

/// Everything a scan point needs, built once and shared read-only.
struct ScanContext {
  const RunConfig& cfg;
  BasisIndex basis;
  DensityEnsemble ens0;
  TrainPropagator train_prop;
  std::unique_ptr<FieldPropagator> field_prop;
  double nu;

  explicit ScanContext(const RunConfig& c)
      : cfg(c), basis(build_basis(c.rotor)), ens0(initial_ensemble(c.rotor, basis)),
        train_prop(c.rotor, basis), nu(c.extract_nu_thz()) {
    if (c.excitation.propagation == RunConfig::Excitation::Propagation::Field)
      field_prop = std::make_unique<FieldPropagator>(c.rotor, basis,
                                                     c.excitation.field_step_fs);
  }

  bool field_mode() const { return field_prop != nullptr; }

  DensityEnsemble propagate(double tau_fs, int handedness, bool kicks_along_z) const {
    TrainRecipe recipe = cfg.excitation.recipe;
    recipe.tau_fs = tau_fs;
    recipe.handedness = handedness;
    if (field_mode()) {
      return field_prop->propagate(ens0, synthesize_field(recipe));
    }
    PulseTrainDescriptor train = synthesize_train(recipe).train;
    if (kicks_along_z)
      for (auto& kick : train.kicks) kick.pol = PolarizationState::linear_along_z();
    return train_prop.propagate(ens0, train);
  }

  /// Population summed over the highest J shell; > 1e-6 flags truncation.
  double top_shell_population(const DensityEnsemble& ens) const {
    const int jtop = basis.shells().back();
    double pop = 0.0;
    for (const auto& m : ens.members)
      for (std::size_t i = 0; i < basis.size(); ++i)
        if (basis.j_of(i) == jtop) pop += m.weight * std::norm(m.psi.amplitudes[i]);
    return pop;
  }
};

void run_parallel(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const int nthreads = static_cast<int>(std::min<std::size_t>(jobs, count));
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (int t = 0; t < nthreads; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < count; i += nthreads) fn(i);
    });
  for (auto& th : pool) th.join();
}

/// LD probe pair for the active frame: quantization axis along the probe in
/// impulsive mode, along the beam in field mode (same physics, rotated).
ProbePair ld_pair(bool field_mode) {
  if (field_mode)
    return {PolarizationState::linear_in_plane(0.0),
            PolarizationState::linear_in_plane(kPi / 2.0)};
  return ProbePair::linear_ld();
}

} // namespace

DensityEnsemble propagate_scenario(const RunConfig& cfg, double tau_fs,
                                   int handedness, bool kicks_along_z) {
  ScanContext ctx(cfg);
  return ctx.propagate(tau_fs, handedness, kicks_along_z);
}

double calibrate_phi_ref(const RunConfig& cfg) {
  if (cfg.probe.phi_ref) return *cfg.probe.phi_ref;

  ScanContext ctx(cfg);
  const double beat_period_fs = 1.0 / (ctx.nu * kCyclesPerThzFs);

  if (cfg.probe.pair == RunConfig::Probe::Pair::Circular) {
    // Canonical: alpha = 45 deg, tau = 3/4 of the beat period, sigma+ probe.
    TrainRecipe canonical = cfg.excitation.recipe;
    canonical.mode = TrainRecipe::Mode::Chiral;
    canonical.alpha = kPi / 4.0;
    RunConfig tuned = cfg;
    tuned.excitation.recipe = canonical;
    ScanContext cctx(tuned);
    const double tau = 0.75 * beat_period_fs;
    LifCalculator sp(tuned.rotor, cctx.basis, tuned.probe.model,
                     PolarizationState::circular_plus());
    auto ens_p = cctx.propagate(tau, +1, false);
    auto ens_m = cctx.propagate(tau, -1, false);
    auto trace = dichroism_of_signals(sp.signal(ens_p, tuned.probe.grid),
                                      sp.signal(ens_m, tuned.probe.grid),
                                      tuned.probe.grid);
    const auto amp = extract_coherence_amplitude(trace.dichroism, trace.grid, cctx.nu);
    return amp.magnitude > 0.0 ? amp.phase : 0.0;
  }

  // LD family: canonical tau = one beat period (the interference maximum).
  const double tau = beat_period_fs;
  auto ens = ctx.propagate(tau, +1, !ctx.field_mode());
  auto pair = ld_pair(ctx.field_mode());
  auto trace = dichroism(ens, pair, cfg.probe.model, cfg.probe.grid, cfg.rotor,
                         ctx.basis);
  const auto amp = extract_coherence_amplitude(trace.dichroism, trace.grid, ctx.nu);
  return amp.magnitude > 0.0 ? amp.phase : 0.0;
}

ScanResult run_ld_scan(const RunConfig& cfg, int jobs) {
  cfg.validate();
  if (cfg.excitation.recipe.mode != TrainRecipe::Mode::DoubleKick)
    throw ConfigError("ld-scan requires the double-kick excitation mode");
  if (cfg.probe.pair != RunConfig::Probe::Pair::Linear)
    throw ConfigError("ld-scan requires the linear probe pair");

  ScanContext ctx(cfg);
  const auto pair = ld_pair(ctx.field_mode());
  LifCalculator calc_plus(cfg.rotor, ctx.basis, cfg.probe.model, pair.plus);
  LifCalculator calc_minus(cfg.rotor, ctx.basis, cfg.probe.model, pair.minus);
  const double phi_ref = calibrate_phi_ref(cfg);

  const auto taus = tau_grid(cfg);
  ScanResult result;
  result.series = "ld";
  result.nu_thz = ctx.nu;
  result.phi_ref = phi_ref;
  result.config_hash = config_hash(cfg);
  result.rows.resize(taus.size());

  run_parallel(taus.size(), jobs, [&](std::size_t i) {
    ScanRow& row = result.rows[i];
    row.tau_fs = taus[i];
    try {
      auto ens = ctx.propagate(taus[i], +1, !ctx.field_mode());
      if (ctx.top_shell_population(ens) > 1e-6) row.flag = "warn:top-shell-population";
      auto trace = dichroism_of_signals(calc_plus.signal(ens, cfg.probe.grid),
                                        calc_minus.signal(ens, cfg.probe.grid),
                                        cfg.probe.grid);
      const auto amp =
          extract_coherence_amplitude(trace.dichroism, trace.grid, ctx.nu, phi_ref);
      row.magnitude = amp.magnitude;
      row.signed_value = amp.signed_value;
      row.phase = amp.phase;
    } catch (const std::exception& e) {
      row.flag = std::string("error:") + e.what();
    }
  });
  return result;
}

CdScanResult run_cd_scan(const RunConfig& cfg, int jobs) {
  cfg.validate();
  if (cfg.excitation.recipe.mode != TrainRecipe::Mode::Chiral)
    throw ConfigError("cd-scan requires the chiral excitation mode");
  if (cfg.probe.pair != RunConfig::Probe::Pair::Circular)
    throw ConfigError("cd-scan requires the circular probe pair");
  if (cfg.probe.model != DetectionModel::TwoPhoton)
    throw ConfigError("cd-scan requires the two-photon detection model "
                      "(the alignment proxy is handedness-blind)");

  ScanContext ctx(cfg);
  LifCalculator calc_sp(cfg.rotor, ctx.basis, cfg.probe.model,
                        PolarizationState::circular_plus());
  LifCalculator calc_sm(cfg.rotor, ctx.basis, cfg.probe.model,
                        PolarizationState::circular_minus());
  const double phi_ref = calibrate_phi_ref(cfg);

  const auto taus = tau_grid(cfg);
  CdScanResult result;
  for (ScanResult* r : {&result.sigma_plus, &result.sigma_minus}) {
    r->nu_thz = ctx.nu;
    r->phi_ref = phi_ref;
    r->config_hash = config_hash(cfg);
    r->rows.resize(taus.size());
  }
  result.sigma_plus.series = "cd_sigma_plus";
  result.sigma_minus.series = "cd_sigma_minus";

  run_parallel(taus.size(), jobs, [&](std::size_t i) {
    ScanRow& rp = result.sigma_plus.rows[i];
    ScanRow& rm = result.sigma_minus.rows[i];
    rp.tau_fs = rm.tau_fs = taus[i];
    try {
      auto ens_p = ctx.propagate(taus[i], +1, false);
      auto ens_m = ctx.propagate(taus[i], -1, false);
      const double top = std::max(ctx.top_shell_population(ens_p),
                                  ctx.top_shell_population(ens_m));
      if (top > 1e-6) rp.flag = rm.flag = "warn:top-shell-population";

      auto i_pp = calc_sp.signal(ens_p, cfg.probe.grid);
      auto i_mp = calc_sp.signal(ens_m, cfg.probe.grid);
      auto i_pm = calc_sm.signal(ens_p, cfg.probe.grid);
      auto i_mm = calc_sm.signal(ens_m, cfg.probe.grid);

      auto trace_p = dichroism_of_signals(std::move(i_pp), std::move(i_mp), cfg.probe.grid);
      auto trace_m = dichroism_of_signals(std::move(i_pm), std::move(i_mm), cfg.probe.grid);
      const auto amp_p =
          extract_coherence_amplitude(trace_p.dichroism, trace_p.grid, ctx.nu, phi_ref);
      const auto amp_m =
          extract_coherence_amplitude(trace_m.dichroism, trace_m.grid, ctx.nu, phi_ref);
      rp.magnitude = amp_p.magnitude;
      rp.signed_value = amp_p.signed_value;
      rp.phase = amp_p.phase;
      rm.magnitude = amp_m.magnitude;
      rm.signed_value = amp_m.signed_value;
      rm.phase = amp_m.phase;
    } catch (const std::exception& e) {
      rp.flag = rm.flag = std::string("error:") + e.what();
    }
  });
  return result;
}

DichroismTrace run_delay_scan(const RunConfig& cfg) {
  cfg.validate();
  ScanContext ctx(cfg);
  const double phi_ref = calibrate_phi_ref(cfg);
  const double tau = cfg.excitation.recipe.tau_fs;

  DichroismTrace trace;
  if (cfg.probe.pair == RunConfig::Probe::Pair::Linear) {
    auto ens = ctx.propagate(tau, +1, !ctx.field_mode());
    trace = dichroism(ens, ld_pair(ctx.field_mode()), cfg.probe.model, cfg.probe.grid,
                      cfg.rotor, ctx.basis);
  } else {
    if (cfg.probe.model != DetectionModel::TwoPhoton)
      throw ConfigError("circular-pair delay scans require the two-photon model");
    LifCalculator calc_sp(cfg.rotor, ctx.basis, cfg.probe.model,
                          PolarizationState::circular_plus());
    auto ens_p = ctx.propagate(tau, +1, false);
    auto ens_m = ctx.propagate(tau, -1, false);
    trace = dichroism_of_signals(calc_sp.signal(ens_p, cfg.probe.grid),
                                 calc_sp.signal(ens_m, cfg.probe.grid), cfg.probe.grid);
  }
  extract_into(trace, ctx.nu, phi_ref);
  return trace;
}

std::vector<PopulationScenario> emit_population_report(const RunConfig& cfg,
                                                       const std::vector<double>& taus) {
  cfg.validate();
  // The maps live in the kick picture; always reduce impulsively here.
  RunConfig impulsive = cfg;
  impulsive.excitation.propagation = RunConfig::Excitation::Propagation::Impulsive;
  ScanContext ctx(impulsive);

  const bool chiral = cfg.excitation.recipe.mode == TrainRecipe::Mode::Chiral;
  std::vector<PopulationScenario> out;
  for (double tau : taus) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "tau%g", tau);
    if (chiral) {
      for (int h : {+1, -1}) {
        PopulationScenario sc;
        sc.name = std::string(buf) + (h > 0 ? "_hplus" : "_hminus");
        sc.tau_fs = tau;
        sc.rows = population_map(ctx.propagate(tau, h, false), ctx.basis);
        out.push_back(std::move(sc));
      }
    } else {
      for (bool along_z : {true, false}) {
        PopulationScenario sc;
        sc.name = std::string(buf) + (along_z ? "_parallel" : "_perpendicular");
        sc.tau_fs = tau;
        sc.rows = population_map(ctx.propagate(tau, +1, along_z), ctx.basis);
        out.push_back(std::move(sc));
      }
    }
  }
  return out;
}

} // namespace rotsim
