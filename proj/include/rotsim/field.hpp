#pragma once

#include <complex>
#include <vector>

namespace rotsim {

/// Two-component complex spectral envelope on a uniform angular-frequency
/// grid centered on the carrier: Omega_k = (k - n/2) * domega.
/// Components are the transverse linear polarizations (x along the input
/// polarization).
struct SpectralField {
  std::size_t n = 0;
  double domega_rad_fs = 0.0; // grid step, rad/fs
  double center_nm = 793.0;   // carrier wavelength (metadata)
  std::vector<std::complex<double>> sx, sy;

  double omega_at(std::size_t k) const {
    return (static_cast<double>(k) - static_cast<double>(n) / 2.0) * domega_rad_fs;
  }
  /// Integral |S|^2 domega / 2pi (equals time-domain energy).
  double energy() const;
};

/// Two-component complex time-domain envelope on a uniform grid
/// t_j = (j - n/2) * dt.
struct VectorField {
  std::size_t n = 0;
  double dt_fs = 0.0;
  double center_nm = 793.0;
  std::vector<std::complex<double>> ex, ey;

  double time_at(std::size_t j) const {
    return (static_cast<double>(j) - static_cast<double>(n) / 2.0) * dt_fs;
  }
  double intensity_at(std::size_t j) const {
    return std::norm(ex[j]) + std::norm(ey[j]);
  }
  /// Integral (|ex|^2 + |ey|^2) dt.
  double energy() const;
  /// Multiply both components by sqrt(s), scaling energy by s.
  void scale_energy(double s);
};

} // namespace rotsim
