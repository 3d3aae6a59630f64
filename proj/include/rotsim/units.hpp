#pragma once

#include <numbers>

// Unit system used throughout: time in fs, frequency in THz, hbar = 1.
// Energies are carried as angular frequencies, i.e. E = 2*pi*nu with nu in
// THz.  A phase accumulated over t fs at frequency nu THz is
// 2*pi*nu*t*1e-3 radians (THz*fs = 1e-3 cycles).

namespace rotsim {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Cycles accumulated per (THz * fs).
inline constexpr double kCyclesPerThzFs = 1.0e-3;

/// Phase in radians after t_fs femtoseconds at nu_thz terahertz.
inline constexpr double phase_rad(double nu_thz, double t_fs) {
  return kTwoPi * nu_thz * t_fs * kCyclesPerThzFs;
}

/// Rotational term value for level J as an ordinary frequency (THz):
/// nu_J = B * J(J+1).
inline constexpr double rotational_term_thz(double b_thz, int j) {
  return b_thz * static_cast<double>(j) * static_cast<double>(j + 1);
}

/// Dimensionless kick strength for a Gaussian pulse of given peak intensity
/// (W/cm^2), intensity FWHM (fs) and polarizability anisotropy (A^3):
///   P = (delta_alpha_SI / 4 hbar) * Int E^2 dt,  delta_alpha_SI = 4 pi eps0 * da_vol
///     = 2 pi * da_vol / (hbar c) * Int I dt.
/// The integral of a Gaussian intensity profile is I_peak * fwhm * sqrt(pi/(4 ln 2)).
double kick_strength_from_intensity(double peak_w_cm2, double fwhm_fs,
                                    double delta_alpha_a3);

} // namespace rotsim
