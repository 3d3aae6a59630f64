#pragma once

#include <vector>

#include "rotsim/field.hpp"
#include "rotsim/train.hpp"

// Spectral synthesis of the excitation sequences. A transform-limited
// Gaussian spectrum (x-polarized) is shaped by either
//  - the double-kick amplitude mask  cos[(w-w0) tau / 2], or
//  - the chiral phase masks exp(i A sin[(w-w0) tau -/+ alpha]) applied to
//    the two circular eigen-modes of the shaper, which yields a train of
//    linearly polarized pulses at t = n tau whose polarization angle
//    advances by alpha per pulse (amplitudes follow J_n(A)).
//
// Grids are centered: Omega_k = (k - n/2) dOmega, t_j = (j - n/2) dt with
// dt = 2 pi / (n dOmega); transforms are unitary round trips.

namespace rotsim {

struct ShaperGrid {
  std::size_t samples = 16384; // power of two
  double dt_fs = 0.5;
};

/// Transform-limited Gaussian, unit energy, polarized along x.
/// `fwhm_fs` is the intensity FWHM. Throws ConfigError if the grid cannot
/// contain the spectrum.
SpectralField gaussian_spectrum(double fwhm_fs, double center_nm, const ShaperGrid& grid);

VectorField to_time_domain(const SpectralField& f);
SpectralField to_spectral_domain(const VectorField& f);

/// Amplitude mask cos[(w-w0) tau/2] on both components.
void apply_double_kick_mask(SpectralField& f, double tau_fs);

/// Chiral phase masks; the input must be x-polarized. Energy is conserved
/// exactly. Positive alpha advances the pulse polarization angle from x
/// toward y along the train.
void apply_chiral_mask(SpectralField& f, double tau_fs, double alpha, double mod_amp);

struct ReductionResult {
  PulseTrainDescriptor train;
  int discarded_pulses = 0;      // peaks below the threshold
  double discarded_fluence = 0.0;
};

/// Reduce a field of isolated pulses to impulsive kicks: peak finding,
/// per-pulse fluence integration (strength, in the field's kick-rate
/// units) and polarization-angle fits from the Stokes integrals.
/// Throws UnsupportedError when pulses overlap (valleys never fall below
/// threshold * peak); use the field propagator in that case.
ReductionResult to_descriptor(const VectorField& field, double threshold);

/// Intensity cross-correlation with a transform-limited Gaussian gate of
/// the given intensity FWHM, on the field's time grid.
std::vector<double> cross_correlation(const VectorField& field, double gate_fwhm_fs);

/// Everything the scan drivers need to make a train.
struct TrainRecipe {
  enum class Mode { DoubleKick, Chiral };
  Mode mode = Mode::DoubleKick;
  double tau_fs = 440.0;
  double alpha = 0.0;        // radians, chiral only
  double mod_amp = 2.6;      // A, chiral only
  int handedness = +1;       // chiral only; -1 flips alpha
  double p_total = 0.2;      // total kick strength delivered by the train
  double pulse_fwhm_fs = 50.0;
  double center_nm = 793.0;
  ShaperGrid grid;
  double peak_threshold = 0.02;
};

/// Shaped field in kick-rate units (integral of intensity = p_total).
VectorField synthesize_field(const TrainRecipe& recipe);

/// Impulsive reduction of synthesize_field().
ReductionResult synthesize_train(const TrainRecipe& recipe);

} // namespace rotsim
