#pragma once

#include <complex>
#include <vector>

#include "rotsim/basis.hpp"
#include "rotsim/matrix.hpp"
#include "rotsim/polarization.hpp"
#include "rotsim/wavepacket.hpp"

namespace rotsim {

/// One impulsive kick: at `time_fs`, apply exp(+i P cos^2(theta_pol)).
/// P = (delta_alpha / 4 hbar) Int E^2 dt is dimensionless; the + sign makes
/// the potential attractive along the polarization for delta_alpha > 0.
struct KickEvent {
  double time_fs = 0.0;
  double strength = 0.0; // P >= 0
  PolarizationState pol = PolarizationState::linear_along_z();
};

/// Exact kick unitary built once per basis from the eigendecomposition of
/// the Hermitian cos^2 matrix. Kicks at any in-plane azimuth reuse the
/// azimuth-0 eigenbasis: U(P, a) = D(a) V e^{iP L} V^dag D(a)^dag with
/// D(a) = diag(e^{-iMa}).
class KickOperator {
public:
  KickOperator(const BasisIndex& basis, PolarizationState::Kind kind);

  /// amps <- U(P, angle) amps. `angle` is ignored for along-z kicks.
  void apply(std::vector<std::complex<double>>& amps, double strength,
             double angle) const;

  const std::vector<double>& eigenvalues() const { return eigvals_; }

private:
  std::vector<int> m_of_;       // M per basis index (for the azimuth phases)
  CMatrix eigvecs_;             // V, columns = eigenvectors (stored row-major)
  CMatrix eigvecs_h_;           // V^dag
  std::vector<double> eigvals_;
  bool along_z_;
};

/// Convenience pair of kick operators for a basis (built on demand).
class KickEngine {
public:
  explicit KickEngine(const BasisIndex& basis);

  /// psi <- kick applied; throws NumericalError if the norm drifts > 1e-8,
  /// UnsupportedError for circular kick polarizations.
  void apply(WavePacket& psi, const KickEvent& kick) const;

private:
  KickOperator along_z_;
  KickOperator in_plane_;
};

/// Spec-level convenience: apply a single kick to a wave packet.
WavePacket apply_kick(const WavePacket& psi, const KickEvent& kick,
                      const BasisIndex& basis);

} // namespace rotsim
