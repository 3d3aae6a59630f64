#pragma once

#include <string>
#include <vector>

#include "rotsim/config.hpp"
#include "rotsim/detection.hpp"
#include "rotsim/extraction.hpp"

namespace rotsim {

struct ScanRow {
  double tau_fs = 0.0;
  double magnitude = 0.0;
  double signed_value = 0.0;
  double phase = 0.0;
  std::string flag = "ok"; // ok | warn:... | error:...
};

struct ScanResult {
  std::string series;      // e.g. "ld", "cd_sigma_plus"
  std::vector<ScanRow> rows;
  double nu_thz = 0.0;
  double phi_ref = 0.0;
  std::string config_hash;
};

/// Linear dichroism vs pulse separation for the double-kick sequence.
/// Per tau: synthesize the train, propagate (kicks along the probe axis),
/// probe with the parallel/perpendicular pair, extract |Z| at nu13.
/// Per-point failures are recorded in the row flag; the scan continues.
ScanResult run_ld_scan(const RunConfig& cfg, int jobs = 1);

struct CdScanResult {
  ScanResult sigma_plus;
  ScanResult sigma_minus;
};

/// Signed circular dichroism vs chiral-train period, for both circular
/// probe handedness settings. CD(dt) = [I(h=+1) - I(h=-1)] / mean, probe
/// fixed; the reference phase makes the canonical configuration
/// (alpha = 45 deg, tau = 3/8 of the 1-3 beat period, sigma+ probe)
/// report a positive sign.
CdScanResult run_cd_scan(const RunConfig& cfg, int jobs = 1);

/// Full LD(dt) or CD(dt) trace at the configured single tau.
DichroismTrace run_delay_scan(const RunConfig& cfg);

struct PopulationScenario {
  std::string name; // file-name fragment, e.g. "tau220_parallel"
  double tau_fs = 0.0;
  std::vector<PopulationRow> rows;
};

/// |c_JM|^2 tables for the standard scenario grid: per tau, both kick
/// orientations (double-kick) or both train handedness settings (chiral).
std::vector<PopulationScenario> emit_population_report(const RunConfig& cfg,
                                                       const std::vector<double>& taus);

/// Shared helper: the propagated ensemble for one tau under the configured
/// excitation (impulsive or field mode).
DensityEnsemble propagate_scenario(const RunConfig& cfg, double tau_fs,
                                   int handedness, bool kicks_along_z);

/// Reference phase for signed values, calibrated from the canonical
/// configuration of the run family (see run_cd_scan). Honors an explicit
/// probe.phi_ref override.
double calibrate_phi_ref(const RunConfig& cfg);

} // namespace rotsim
