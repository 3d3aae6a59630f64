#pragma once

#include <complex>
#include <vector>

#include "rotsim/basis.hpp"
#include "rotsim/matrix.hpp"
#include "rotsim/polarization.hpp"
#include "rotsim/wavepacket.hpp"

namespace rotsim {

/// How the probe-induced fluorescence is modeled.
///  - AlignmentProxy: signal = <cos^2 theta_probe>; linear probes only.
///    Handedness-blind by construction (M-diagonal, M-symmetric operator),
///    so it cannot produce circular dichroism.
///  - TwoPhoton: signal = total final-shell population after two dipole
///    couplings through the neighboring-parity rotational shells with flat
///    intermediate denominators; carries the sign information in the
///    c_{1,M} c*_{3,M} cross terms.
enum class DetectionModel { AlignmentProxy, TwoPhoton };

/// Uniform probe-delay grid (fs).
struct DtGrid {
  double from_fs = 11000.0;
  double to_fs = 17000.0;
  double step_fs = 10.0;

  std::size_t count() const;
  double at(std::size_t i) const { return from_fs + static_cast<double>(i) * step_fs; }
  void validate() const;
};

/// Precomputed probe response for one (basis, model, probe polarization).
class LifCalculator {
public:
  LifCalculator(const RotorSpec& spec, const BasisIndex& basis,
                DetectionModel model, const PolarizationState& probe);

  /// Ensemble-averaged probe signal over the delay grid; strictly positive.
  /// The probe is non-destructive (the ensemble is left untouched).
  std::vector<double> signal(const DensityEnsemble& ens, const DtGrid& grid) const;

  DetectionModel model() const { return model_; }

private:
  const RotorSpec* spec_;
  const BasisIndex* basis_;
  DetectionModel model_;
  PolarizationState probe_;
  CMatrix response_; // TwoPhoton: (final x basis); proxy: (basis x basis)
  std::vector<int> shell_of_; // basis index -> shell ordinal
  std::size_t n_shells_;
};

/// Convenience one-shot form.
std::vector<double> lif_signal(const DensityEnsemble& ens,
                               const PolarizationState& probe, DetectionModel model,
                               const DtGrid& grid, const RotorSpec& spec,
                               const BasisIndex& basis);

struct ProbePair {
  PolarizationState plus;
  PolarizationState minus;

  /// LD: probe parallel to the quantization axis vs in-plane.
  static ProbePair linear_ld();
  /// CD: co-rotating (sigma+) vs counter-rotating (sigma-) probe.
  static ProbePair circular_cd();
};

/// Sampled dichroism trace: the two probe signals and their normalized
/// difference  (I+ - I-) / ((I+ + I-)/2)  pointwise.
struct DichroismTrace {
  DtGrid grid;
  std::vector<double> i_plus, i_minus, dichroism;

  // filled by extract_coherence_amplitude
  std::complex<double> z{0.0, 0.0};
  double magnitude = 0.0;
  double signed_value = 0.0;
  double phase = 0.0;
  double nu_thz = 0.0;
  double phi_ref = 0.0;
};

/// Probe-pair dichroism of a single (already propagated) ensemble.
DichroismTrace dichroism(const DensityEnsemble& ens, const ProbePair& pair,
                         DetectionModel model, const DtGrid& grid,
                         const RotorSpec& spec, const BasisIndex& basis);

/// Eq.-style normalized difference of two separately computed signals
/// (used by the scan drivers when the modulated quantity is the train).
DichroismTrace dichroism_of_signals(std::vector<double> i_plus,
                                    std::vector<double> i_minus, const DtGrid& grid);

struct PopulationRow {
  int j;
  int m;
  double population;
};

/// Ensemble-weighted |c_JM|^2 per basis state; sums to 1 for a unit-norm
/// ensemble.
std::vector<PopulationRow> population_map(const DensityEnsemble& ens,
                                          const BasisIndex& basis);

} // namespace rotsim
