#include "rotsim/propagate.hpp"

#include <cmath>
#include <string>

#include "rotsim/errors.hpp"
#include "rotsim/kernels.hpp"
#include "rotsim/units.hpp"

namespace rotsim {

using cplx = std::complex<double>;

WavePacket evolve_free(const WavePacket& psi, double dt_fs, const RotorSpec& spec,
                       const BasisIndex& basis) {
  WavePacket out = psi;
  if (dt_fs == 0.0) return out;
  auto d = free_phases(basis, spec, psi.vib, dt_fs);
  kernels::active().hadamard(d.data(), psi.amplitudes.data(),
                             out.amplitudes.data(), d.size());
  out.time_fs += dt_fs;
  return out;
}

TrainPropagator::TrainPropagator(const RotorSpec& spec, const BasisIndex& basis)
    : spec_(&spec), basis_(&basis), engine_(basis) {}

void TrainPropagator::propagate_in_place(WavePacket& psi,
                                         const PulseTrainDescriptor& train) const {
  for (std::size_t i = 1; i < train.kicks.size(); ++i)
    if (!(train.kicks[i].time_fs > train.kicks[i - 1].time_fs))
      throw ConfigError("kick times must be strictly increasing");

  for (const auto& kick : train.kicks) {
    const double dt = kick.time_fs - psi.time_fs;
    if (dt != 0.0) {
      auto d = free_phases(*basis_, *spec_, psi.vib, dt);
      kernels::active().hadamard(d.data(), psi.amplitudes.data(),
                                 psi.amplitudes.data(), d.size());
      psi.time_fs = kick.time_fs;
    }
    engine_.apply(psi, kick);
  }
}

DensityEnsemble TrainPropagator::propagate(const DensityEnsemble& ens,
                                           const PulseTrainDescriptor& train) const {
  DensityEnsemble out = ens;
  for (auto& m : out.members) propagate_in_place(m.psi, train);
  return out;
}

FieldPropagator::FieldPropagator(const RotorSpec& spec, const BasisIndex& basis,
                                 double step_fs)
    : spec_(&spec), basis_(&basis), step_fs_(step_fs),
      coupling_(transverse_coupling(basis)) {
  if (!(step_fs > 0.0)) throw ConfigError("field integrator step must be positive");
}

namespace {

// y <- exp(+i B) y via the Taylor series; B is Hermitian with small norm
// (one integrator step), so the series is unitary to rounding.
void apply_exp_i(const CMatrix& b, std::vector<cplx>& y, std::vector<cplx>& term,
                 std::vector<cplx>& tmp) {
  const std::size_t n = y.size();
  const auto& k = kernels::active();
  term = y;
  for (int order = 1; order <= 32; ++order) {
    k.matvec(b.data.data(), term.data(), tmp.data(), n, n);
    const cplx factor = cplx(0.0, 1.0) / static_cast<double>(order);
    for (std::size_t i = 0; i < n; ++i) term[i] = factor * tmp[i];
    for (std::size_t i = 0; i < n; ++i) y[i] += term[i];
    if (k.norm2(term.data(), n) < 1e-32 * k.norm2(y.data(), n)) break;
  }
}

} // namespace

void FieldPropagator::propagate_in_place(WavePacket& psi,
                                         const VectorField& field) const {
  const std::size_t n = basis_->size();
  if (field.n < 2) throw ConfigError("field grid too short");
  if (field.dt_fs > step_fs_ + 1e-12)
    throw ConfigError("field must be sampled at least as finely as the step");

  // Active samples: where the interaction is non-negligible.
  double peak = 0.0;
  for (std::size_t j = 0; j < field.n; ++j) peak = std::max(peak, field.intensity_at(j));
  const double cutoff = 1e-12 * peak; // zero field degenerates to free evolution

  const double norm_before = psi.norm2();
  const auto omegas = level_omegas(*basis_, *spec_, psi.vib);

  CMatrix b(n, n);
  std::vector<cplx> term(n), tmp(n);

  std::size_t j = 0;
  while (j + 1 < field.n) {
    if (field.intensity_at(j) <= cutoff && field.intensity_at(j + 1) <= cutoff) {
      ++j;
      continue;
    }
    // One Strang step across [t_j, t_{j+1}] with midpoint (averaged) coupling.
    const double dt = field.dt_fs;
    const double t0 = field.time_at(j);

    // exact free half evolution to the position in absolute time
    const double lead = t0 - psi.time_fs + 0.5 * dt;
    for (std::size_t i = 0; i < n; ++i)
      psi.amplitudes[i] *= std::polar(1.0, -omegas[i] * lead);

    const double wxx = 0.5 * (std::norm(field.ex[j]) + std::norm(field.ex[j + 1]));
    const double wyy = 0.5 * (std::norm(field.ey[j]) + std::norm(field.ey[j + 1]));
    const double wxy = std::real(field.ex[j] * std::conj(field.ey[j])) +
                       std::real(field.ex[j + 1] * std::conj(field.ey[j + 1]));
    // B = dt * (wxx XX + wyy YY + wxy XY); exp(+iB) is the kick for this slice.
    for (std::size_t e = 0; e < n * n; ++e)
      b.data[e] = dt * (wxx * coupling_.xx.data[e] + wyy * coupling_.yy.data[e] +
                        wxy * coupling_.xy.data[e]);
    apply_exp_i(b, psi.amplitudes, term, tmp);

    for (std::size_t i = 0; i < n; ++i)
      psi.amplitudes[i] *= std::polar(1.0, -omegas[i] * 0.5 * dt);
    psi.time_fs = t0 + dt;
    ++j;
  }

  // Trailing free evolution to the end of the grid.
  const double tail = field.time_at(field.n - 1) - psi.time_fs;
  if (tail != 0.0) {
    for (std::size_t i = 0; i < n; ++i)
      psi.amplitudes[i] *= std::polar(1.0, -omegas[i] * tail);
    psi.time_fs += tail;
  }

  const double drift = std::abs(psi.norm2() - norm_before);
  if (drift > 1e-6)
    throw NumericalError("field integration norm drift " + std::to_string(drift) +
                         "; reduce the step (current " + std::to_string(step_fs_) +
                         " fs)");
}

DensityEnsemble FieldPropagator::propagate(const DensityEnsemble& ens,
                                           const VectorField& field) const {
  DensityEnsemble out = ens;
  for (auto& m : out.members) propagate_in_place(m.psi, field);
  return out;
}

} // namespace rotsim
