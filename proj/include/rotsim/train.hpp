#pragma once

#include <vector>

#include "rotsim/kick.hpp"

namespace rotsim {

/// Discrete kick sequence reduced from (or standing in for) a shaped field.
/// Times are absolute on the synthesis time axis (train centered at t = 0),
/// strictly increasing, nominally spaced by the train period tau.
struct PulseTrainDescriptor {
  std::vector<KickEvent> kicks;
  double tau_fs = 0.0;    // train period
  double alpha = 0.0;     // pulse-to-pulse polarization twist (radians)
  double mod_amp = 0.0;   // spectral modulation amplitude A (0 for double-kick)

  double total_strength() const {
    double p = 0.0;
    for (const auto& k : kicks) p += k.strength;
    return p;
  }
  double last_time_fs() const {
    return kicks.empty() ? 0.0 : kicks.back().time_fs;
  }
};

} // namespace rotsim
