#pragma once

#include <optional>
#include <string>

#include "rotsim/basis.hpp"
#include "rotsim/detection.hpp"
#include "rotsim/pulse_shaper.hpp"

namespace rotsim {

/// One human-editable JSON document drives every run. Parsing materializes
/// all defaults, so canonicalize(parse(serialize(cfg))) is idempotent.
struct RunConfig {
  RotorSpec rotor;

  struct Excitation {
    TrainRecipe recipe; // mode, tau, alpha, A, strength, grid, threshold
    std::optional<double> tau_from_fs, tau_to_fs, tau_step_fs; // scan range
    enum class Propagation { Impulsive, Field } propagation = Propagation::Impulsive;
    double field_step_fs = 0.5;
  } excitation;

  struct Probe {
    DetectionModel model = DetectionModel::TwoPhoton;
    enum class Pair { Linear, Circular } pair = Pair::Linear;
    DtGrid grid;
    std::optional<double> nu_thz;   // default: the lowest-level 1-3 coherence
    std::optional<double> phi_ref;  // default: calibrated per run family
  } probe;

  struct Output {
    std::string dir = ".";
    std::string format = "csv"; // csv | json
  } output;

  double extract_nu_thz() const {
    return probe.nu_thz ? *probe.nu_thz : rotor.nu13_thz();
  }

  /// Cross-field invariants (delay window after the train, ordered ranges...).
  void validate() const;

  bool has_tau_scan() const {
    return excitation.tau_from_fs && excitation.tau_to_fs && excitation.tau_step_fs;
  }
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config_file(const std::string& path);

/// Canonical serialization: sorted keys, all defaults materialized.
std::string canonical_json(const RunConfig& cfg);

/// FNV-1a 64 over the canonical serialization, as 16 hex digits.
std::string config_hash(const RunConfig& cfg);

} // namespace rotsim
