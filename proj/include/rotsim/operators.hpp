#pragma once

#include <complex>
#include <vector>

#include "rotsim/basis.hpp"
#include "rotsim/matrix.hpp"
#include "rotsim/polarization.hpp"

// Angular operator matrices on the (J,M) basis, assembled from Wigner 3j
// symbols (Condon-Shortley phases throughout).
//
// cos^2 matrices are expansions in the Racah tensors C^2_q:
//   pol along z:        cos^2(theta)            = 1/3 + (2/3) C20
//   pol in plane, az a: sin^2(theta)cos^2(phi-a) =
//        1/3 - (1/3) C20 + sqrt(1/6) (e^{-2ia} C22 + e^{+2ia} C2-2)
// so the azimuth enters only as phases e^{-/+2ia} on the dM = +/-2 elements.

namespace rotsim {

/// <J'M'|(eps.r)^2|JM> for a linear polarization; Hermitian, selection rules
/// dJ in {0,+-2}, dM in {0,+-2} (dM = 0 only for polarization along z).
/// Throws UnsupportedError for circular polarizations.
CMatrix cos2_matrix(const BasisIndex& basis, const PolarizationState& pol);

/// Direction-cosine block <J'M' (bra)|eps.r|JM (ket)> between two bases
/// (dJ = +-1). Component convention:
///   LinearAlongZ  -> C^1_0            (dM = 0)
///   CircularPlus  -> C^1_{+1}         (dM = +1)
///   CircularMinus -> C^1_{-1}         (dM = -1)
///   LinearInPlane -> (C^1_{-1} e^{+ia} - C^1_{+1} e^{-ia})/sqrt(2)
CMatrix dipole_matrix(const BasisIndex& bra, const BasisIndex& ket,
                      const PolarizationState& pol);

/// Diagonal of exp(-i 2 pi B J(J+1) dt) over the basis (M-independent).
std::vector<std::complex<double>> free_phases(const BasisIndex& basis,
                                              const RotorSpec& spec, int v,
                                              double dt_fs);

/// Angular frequencies (rad/fs) of the basis states for vibrational level v.
std::vector<double> level_omegas(const BasisIndex& basis, const RotorSpec& spec,
                                 int v);

/// The three Hermitian blocks of the transverse-plane quadratic coupling:
/// for a Jones vector (Ex, Ey) the interaction operator is
///   |Ex|^2 XX + |Ey|^2 YY + 2 Re(Ex conj(Ey)) XY
/// with XX = sin^2(theta)cos^2(phi), YY = sin^2(theta)sin^2(phi),
/// XY = sin^2(theta)cos(phi)sin(phi).
struct TransverseCoupling {
  CMatrix xx, yy, xy;
};
TransverseCoupling transverse_coupling(const BasisIndex& basis);

} // namespace rotsim
