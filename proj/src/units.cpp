#include "rotsim/units.hpp"

#include <cmath>

#include "rotsim/errors.hpp"

namespace rotsim {

double kick_strength_from_intensity(double peak_w_cm2, double fwhm_fs,
                                    double delta_alpha_a3) {
  if (peak_w_cm2 < 0.0 || fwhm_fs <= 0.0 || delta_alpha_a3 <= 0.0)
    throw ConfigError("kick strength conversion needs positive inputs");

  constexpr double hbar = 1.054571817e-34; // J s
  constexpr double c = 2.99792458e8;       // m/s

  const double intensity_w_m2 = peak_w_cm2 * 1e4;
  const double da_m3 = delta_alpha_a3 * 1e-30; // polarizability volume
  const double integral_i =
      intensity_w_m2 * fwhm_fs * 1e-15 * std::sqrt(kPi / (4.0 * std::numbers::ln2));
  // P = 2 pi * da_vol / (hbar c) * Int I dt   (da_SI = 4 pi eps0 da_vol)
  return kTwoPi * da_m3 / (hbar * c) * integral_i;
}

} // namespace rotsim
