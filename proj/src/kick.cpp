#include "rotsim/kick.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "rotsim/errors.hpp"
#include "rotsim/kernels.hpp"
#include "rotsim/operators.hpp"

namespace rotsim {

using cplx = std::complex<double>;

KickOperator::KickOperator(const BasisIndex& basis, PolarizationState::Kind kind) {
  along_z_ = (kind == PolarizationState::Kind::LinearAlongZ);
  PolarizationState base = along_z_ ? PolarizationState::linear_along_z()
                                    : PolarizationState::linear_in_plane(0.0);
  CMatrix c2 = cos2_matrix(basis, base);

  const std::size_t n = basis.size();
  // The azimuth-0 matrix is real symmetric.
  Eigen::MatrixXd sym(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) sym(r, c) = c2.at(r, c).real();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  if (solver.info() != Eigen::Success)
    throw NumericalError("kick operator eigendecomposition failed");

  eigvals_.resize(n);
  eigvecs_ = CMatrix(n, n);
  eigvecs_h_ = CMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    eigvals_[k] = solver.eigenvalues()(k);
    for (std::size_t r = 0; r < n; ++r) {
      double v = solver.eigenvectors()(r, k);
      eigvecs_.at(r, k) = {v, 0.0};
      eigvecs_h_.at(k, r) = {v, 0.0};
    }
  }

  m_of_.resize(n);
  for (std::size_t i = 0; i < n; ++i) m_of_[i] = basis.m_of(i);
}

void KickOperator::apply(std::vector<cplx>& amps, double strength,
                         double angle) const {
  const std::size_t n = amps.size();
  const auto& k = kernels::active();
  std::vector<cplx> work(n), modes(n);

  const bool rotate = !along_z_ && angle != 0.0;
  if (rotate) {
    // D(a)^dag = diag(e^{+iMa})
    for (std::size_t i = 0; i < n; ++i)
      work[i] = std::polar(1.0, m_of_[i] * angle) * amps[i];
  } else {
    work = amps;
  }

  k.matvec(eigvecs_h_.data.data(), work.data(), modes.data(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    modes[i] *= std::polar(1.0, strength * eigvals_[i]);
  k.matvec(eigvecs_.data.data(), modes.data(), work.data(), n, n);

  if (rotate) {
    for (std::size_t i = 0; i < n; ++i)
      amps[i] = std::polar(1.0, -m_of_[i] * angle) * work[i];
  } else {
    amps = work;
  }
}

KickEngine::KickEngine(const BasisIndex& basis)
    : along_z_(basis, PolarizationState::Kind::LinearAlongZ),
      in_plane_(basis, PolarizationState::Kind::LinearInPlane) {}

void KickEngine::apply(WavePacket& psi, const KickEvent& kick) const {
  if (!kick.pol.is_linear())
    throw UnsupportedError("kick pulses must be linearly polarized");

  const double before = psi.norm2();
  if (kick.pol.kind == PolarizationState::Kind::LinearAlongZ)
    along_z_.apply(psi.amplitudes, kick.strength, 0.0);
  else
    in_plane_.apply(psi.amplitudes, kick.strength, kick.pol.angle);
  const double after = psi.norm2();
  if (std::abs(after - before) > 1e-8)
    throw NumericalError("kick unitary drifted the norm by " +
                         std::to_string(std::abs(after - before)));
}

WavePacket apply_kick(const WavePacket& psi, const KickEvent& kick,
                      const BasisIndex& basis) {
  KickEngine engine(basis);
  WavePacket out = psi;
  engine.apply(out, kick);
  return out;
}

} // namespace rotsim
