#pragma once

#include <complex>
#include <vector>

#include "rotsim/basis.hpp"

namespace rotsim {

/// Coherent superposition sum_JM c_JM |J,M> over a BasisIndex, tagged with
/// its vibrational level and the absolute time its amplitudes refer to.
struct WavePacket {
  std::vector<std::complex<double>> amplitudes;
  int vib = 0;
  double time_fs = 0.0;

  double norm2() const;
};

/// Incoherent mixture of wave packets (initial isotropic state, vibrational
/// mixture). Weights are nonnegative and sum to 1.
struct DensityEnsemble {
  struct Member {
    double weight;
    WavePacket psi;
  };
  std::vector<Member> members;

  double total_weight() const;
  /// Ensemble-averaged norm (should stay 1 under unitary propagation).
  double mean_norm2() const;
};

/// All molecules in the lowest rotational level with an isotropic axis
/// distribution: per vibrational level v, three equally weighted pure
/// states |1,M>, M = -1,0,1.
DensityEnsemble initial_ensemble(const RotorSpec& spec, const BasisIndex& basis);

} // namespace rotsim
