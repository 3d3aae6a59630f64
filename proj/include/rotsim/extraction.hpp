#pragma once

#include <complex>
#include <vector>

#include "rotsim/detection.hpp"

namespace rotsim {

/// Complex amplitude of a sampled signal at one frequency:
///   Z = 2 sum_k w_k (s_k - mean(s)) e^{+i 2 pi nu t_k} / sum_k w_k
/// with a Hann window w. signed_value = Re[Z e^{-i phi_ref}]; |Z| is the
/// magnitude reported for LD-style scans.
struct CoherenceAmplitude {
  std::complex<double> z{0.0, 0.0};
  double magnitude = 0.0;
  double signed_value = 0.0;
  double phase = 0.0; // arg(Z)
  double nu_thz = 0.0;
  double phi_ref = 0.0;
};

/// Throws ConfigError when the grid covers fewer than 5 periods of nu.
CoherenceAmplitude extract_coherence_amplitude(const std::vector<double>& signal,
                                               const DtGrid& grid, double nu_thz,
                                               double phi_ref = 0.0);

/// Fill the extraction fields of a trace from its dichroism column.
void extract_into(DichroismTrace& trace, double nu_thz, double phi_ref = 0.0);

/// Frequency (THz) of the largest Hann-windowed DFT bin (k = 1..N/2) of the
/// mean-removed signal; bin spacing is 1/(N dt).
double dominant_frequency_thz(const std::vector<double>& signal, const DtGrid& grid);

} // namespace rotsim
