#pragma once

#include <cmath>
#include <numbers>

namespace rotsim {

/// Polarization of a pulse, expressed relative to the quantization axis z.
///
/// Geometry: the beam propagates along a fixed direction; every physical
/// polarization is transverse to it. Two frames are used by the scenarios:
///  - circular-probe frame: z = propagation axis, all linear polarizations
///    lie in the transverse x-y plane (LinearInPlane, azimuth from x);
///  - linear-probe frame: z = probe polarization (transverse to the beam),
///    a kick parallel to the probe is LinearAlongZ, a perpendicular one is
///    LinearInPlane.
struct PolarizationState {
  enum class Kind { LinearAlongZ, LinearInPlane, CircularPlus, CircularMinus };

  Kind kind = Kind::LinearAlongZ;
  double angle = 0.0; // azimuth in [0,pi), only for LinearInPlane

  static PolarizationState linear_along_z() { return {Kind::LinearAlongZ, 0.0}; }
  static PolarizationState linear_in_plane(double a) {
    double w = std::fmod(a, std::numbers::pi);
    if (w < 0.0) w += std::numbers::pi;
    return {Kind::LinearInPlane, w};
  }
  static PolarizationState circular_plus() { return {Kind::CircularPlus, 0.0}; }
  static PolarizationState circular_minus() { return {Kind::CircularMinus, 0.0}; }

  bool is_linear() const {
    return kind == Kind::LinearAlongZ || kind == Kind::LinearInPlane;
  }
  bool is_circular() const { return !is_linear(); }
};

} // namespace rotsim
