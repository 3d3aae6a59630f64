#include "rotsim/operators.hpp"

#include <cmath>

#include "rotsim/errors.hpp"
#include "rotsim/units.hpp"
#include "rotsim/wigner.hpp"

namespace rotsim {

namespace {

using cplx = std::complex<double>;

// Enforce exact Hermiticity: lower triangle mirrored from the upper one.
void hermitize(CMatrix& a) {
  for (std::size_t r = 0; r < a.rows; ++r)
    for (std::size_t c = 0; c < r; ++c) a.at(r, c) = std::conj(a.at(c, r));
}

} // namespace

CMatrix cos2_matrix(const BasisIndex& basis, const PolarizationState& pol) {
  if (!pol.is_linear())
    throw UnsupportedError("cos2_matrix: kick pulses are linear; got a circular polarization");

  const std::size_t n = basis.size();
  CMatrix a(n, n);
  const bool along_z = pol.kind == PolarizationState::Kind::LinearAlongZ;
  const cplx phase_p2 = std::polar(1.0, -2.0 * pol.angle); // on dM = +2
  const cplx phase_m2 = std::polar(1.0, +2.0 * pol.angle); // on dM = -2

  for (std::size_t r = 0; r < n; ++r) {
    const auto [jp, mp] = basis.lookup(r);
    for (std::size_t c = r; c < n; ++c) {
      const auto [j, m] = basis.lookup(c);
      cplx val{0.0, 0.0};
      if (along_z) {
        if (mp == m) {
          double c20 = racah_c_element(jp, mp, 2, 0, j, m);
          val = (jp == j && mp == m ? 1.0 / 3.0 : 0.0) + (2.0 / 3.0) * c20;
        }
      } else {
        if (mp == m) {
          double c20 = racah_c_element(jp, mp, 2, 0, j, m);
          val = (jp == j && mp == m ? 1.0 / 3.0 : 0.0) - (1.0 / 3.0) * c20;
        } else if (mp == m + 2) {
          val = std::sqrt(1.0 / 6.0) * racah_c_element(jp, mp, 2, 2, j, m) * phase_p2;
        } else if (mp == m - 2) {
          val = std::sqrt(1.0 / 6.0) * racah_c_element(jp, mp, 2, -2, j, m) * phase_m2;
        }
      }
      a.at(r, c) = val;
    }
  }
  hermitize(a);
  return a;
}

CMatrix dipole_matrix(const BasisIndex& bra, const BasisIndex& ket,
                      const PolarizationState& pol) {
  CMatrix a(bra.size(), ket.size());
  for (std::size_t r = 0; r < bra.size(); ++r) {
    const auto [jp, mp] = bra.lookup(r);
    for (std::size_t c = 0; c < ket.size(); ++c) {
      const auto [j, m] = ket.lookup(c);
      cplx val{0.0, 0.0};
      switch (pol.kind) {
        case PolarizationState::Kind::LinearAlongZ:
          if (mp == m) val = racah_c_element(jp, mp, 1, 0, j, m);
          break;
        case PolarizationState::Kind::CircularPlus:
          if (mp == m + 1) val = racah_c_element(jp, mp, 1, 1, j, m);
          break;
        case PolarizationState::Kind::CircularMinus:
          if (mp == m - 1) val = racah_c_element(jp, mp, 1, -1, j, m);
          break;
        case PolarizationState::Kind::LinearInPlane: {
          const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
          if (mp == m - 1)
            val = inv_sqrt2 * racah_c_element(jp, mp, 1, -1, j, m) *
                  std::polar(1.0, +pol.angle);
          else if (mp == m + 1)
            val = -inv_sqrt2 * racah_c_element(jp, mp, 1, 1, j, m) *
                  std::polar(1.0, -pol.angle);
          break;
        }
      }
      a.at(r, c) = val;
    }
  }
  return a;
}

std::vector<cplx> free_phases(const BasisIndex& basis, const RotorSpec& spec,
                              int v, double dt_fs) {
  if (!std::isfinite(dt_fs)) throw ConfigError("free_phases: dt must be finite");
  const double b = spec.b_for(v);
  std::vector<cplx> d(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const int j = basis.j_of(i);
    d[i] = std::polar(1.0, -phase_rad(rotational_term_thz(b, j), dt_fs));
  }
  return d;
}

std::vector<double> level_omegas(const BasisIndex& basis, const RotorSpec& spec,
                                 int v) {
  const double b = spec.b_for(v);
  std::vector<double> w(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i)
    w[i] = kTwoPi * rotational_term_thz(b, basis.j_of(i)) * kCyclesPerThzFs;
  return w;
}

TransverseCoupling transverse_coupling(const BasisIndex& basis) {
  TransverseCoupling t;
  t.xx = cos2_matrix(basis, PolarizationState::linear_in_plane(0.0));
  t.yy = cos2_matrix(basis, PolarizationState::linear_in_plane(kPi / 2.0));
  // sin^2(theta) cos(phi) sin(phi) = -i sqrt(1/6) (C22 - C2-2)
  const std::size_t n = basis.size();
  t.xy = CMatrix(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto [jp, mp] = basis.lookup(r);
    for (std::size_t c = r; c < n; ++c) {
      const auto [j, m] = basis.lookup(c);
      cplx val{0.0, 0.0};
      if (mp == m + 2)
        val = cplx(0.0, -std::sqrt(1.0 / 6.0)) * racah_c_element(jp, mp, 2, 2, j, m);
      else if (mp == m - 2)
        val = cplx(0.0, +std::sqrt(1.0 / 6.0)) * racah_c_element(jp, mp, 2, -2, j, m);
      t.xy.at(r, c) = val;
    }
  }
  // Hermitian: dM=+2 and dM=-2 parts are conjugate mirrors.
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < r; ++c) t.xy.at(r, c) = std::conj(t.xy.at(c, r));
  return t;
}

} // namespace rotsim
