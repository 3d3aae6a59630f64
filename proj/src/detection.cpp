#include "rotsim/detection.hpp"

#include <cmath>
#include <string>

#include "rotsim/errors.hpp"
#include "rotsim/kernels.hpp"
#include "rotsim/operators.hpp"
#include "rotsim/units.hpp"

namespace rotsim {

using cplx = std::complex<double>;

std::size_t DtGrid::count() const {
  return static_cast<std::size_t>(std::floor((to_fs - from_fs) / step_fs + 1e-9)) + 1;
}

void DtGrid::validate() const {
  if (!(step_fs > 0.0) || !(to_fs > from_fs))
    throw ConfigError("probe delay grid must be increasing with positive step");
}

namespace {

JParity flip(JParity p) {
  if (p == JParity::Odd) return JParity::Even;
  if (p == JParity::Even) return JParity::Odd;
  return JParity::Any;
}

// response = D2 * D1 (two dipole couplings through the opposite-parity
// shells, unit denominators). The final sum runs over the two lowest
// detected shells only: summing over a complete final set would contract
// T^dag T to a pure function of theta (sin^4/4), which is M-symmetric and
// cannot carry any circular dichroism. The gated, spectrally filtered
// fluorescence detection observes a finite window of final rotational
// levels; J' <= j_min + 2 is the minimal such window that still lets the
// J=1 and J=3 amplitudes interfere in a common final state.
CMatrix two_photon_response(const BasisIndex& basis, const PolarizationState& probe) {
  const JParity mid_parity = flip(basis.parity());
  const int mid_min = mid_parity == JParity::Even ? 0 : 1;
  BasisIndex mid(mid_min, basis.j_min() + 3, mid_parity);
  BasisIndex fin(basis.j_min(), basis.j_min() + 2, basis.parity());

  CMatrix d1 = dipole_matrix(mid, basis, probe);
  CMatrix d2 = dipole_matrix(fin, mid, probe);

  CMatrix m(fin.size(), basis.size());
  for (std::size_t f = 0; f < fin.size(); ++f)
    for (std::size_t a = 0; a < basis.size(); ++a) {
      cplx acc{0.0, 0.0};
      for (std::size_t i = 0; i < mid.size(); ++i)
        acc += d2.at(f, i) * d1.at(i, a);
      m.at(f, a) = acc;
    }
  return m;
}

} // namespace

LifCalculator::LifCalculator(const RotorSpec& spec, const BasisIndex& basis,
                             DetectionModel model, const PolarizationState& probe)
    : spec_(&spec), basis_(&basis), model_(model), probe_(probe) {
  if (model == DetectionModel::AlignmentProxy) {
    if (!probe.is_linear())
      throw UnsupportedError(
          "the alignment proxy is handedness-blind; use the two-photon model "
          "for circular probes");
    response_ = cos2_matrix(basis, probe);
  } else {
    response_ = two_photon_response(basis, probe);
  }

  shell_of_.resize(basis.size());
  n_shells_ = basis.shells().size();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const int j = basis.j_of(i);
    for (std::size_t s = 0; s < n_shells_; ++s)
      if (basis.shells()[s] == j) shell_of_[i] = static_cast<int>(s);
  }
}

std::vector<double> LifCalculator::signal(const DensityEnsemble& ens,
                                          const DtGrid& grid) const {
  grid.validate();
  const std::size_t npts = grid.count();
  const std::size_t n = basis_->size();
  const auto& k = kernels::active();
  std::vector<double> out(npts, 0.0);

  for (const auto& member : ens.members) {
    const auto omegas = level_omegas(*basis_, *spec_, member.psi.vib);
    // Fold the member timestamp into the amplitudes so each delay needs
    // only the per-shell phase e^{-i w_s dt}.
    std::vector<cplx> folded(n);
    for (std::size_t i = 0; i < n; ++i)
      folded[i] = member.psi.amplitudes[i] *
                  std::polar(1.0, omegas[i] * member.psi.time_fs);

    std::vector<double> shell_omega(n_shells_, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      shell_omega[shell_of_[i]] = omegas[i];

    if (model_ == DetectionModel::TwoPhoton) {
      const std::size_t nf = response_.rows;
      // G(f,s) = sum_{i in shell s} M(f,i) folded_i
      CMatrix g(nf, n_shells_);
      for (std::size_t f = 0; f < nf; ++f)
        for (std::size_t i = 0; i < n; ++i)
          g.at(f, shell_of_[i]) += response_.at(f, i) * folded[i];

      std::vector<cplx> phases(n_shells_), amp(nf);
      for (std::size_t p = 0; p < npts; ++p) {
        const double dt = grid.at(p);
        for (std::size_t s = 0; s < n_shells_; ++s)
          phases[s] = std::polar(1.0, -shell_omega[s] * dt);
        k.matvec(g.data.data(), phases.data(), amp.data(), nf, n_shells_);
        out[p] += member.weight * k.norm2(amp.data(), nf);
      }
    } else {
      // z(s,s') = sum_{i in s, i' in s'} conj(folded_i) B(i,i') folded_i'
      CMatrix z(n_shells_, n_shells_);
      std::vector<cplx> bc(n);
      for (std::size_t s2 = 0; s2 < n_shells_; ++s2) {
        std::vector<cplx> masked(n, cplx{0.0, 0.0});
        for (std::size_t i = 0; i < n; ++i)
          if (shell_of_[i] == static_cast<int>(s2)) masked[i] = folded[i];
        k.matvec(response_.data.data(), masked.data(), bc.data(), n, n);
        for (std::size_t i = 0; i < n; ++i)
          z.at(shell_of_[i], s2) += std::conj(folded[i]) * bc[i];
      }
      for (std::size_t p = 0; p < npts; ++p) {
        const double dt = grid.at(p);
        double val = 0.0;
        for (std::size_t s = 0; s < n_shells_; ++s) {
          val += z.at(s, s).real();
          for (std::size_t s2 = s + 1; s2 < n_shells_; ++s2) {
            const cplx ph = std::polar(1.0, (shell_omega[s] - shell_omega[s2]) * dt);
            val += 2.0 * std::real(z.at(s, s2) * ph);
          }
        }
        out[p] += member.weight * val;
      }
    }
  }
  return out;
}

std::vector<double> lif_signal(const DensityEnsemble& ens,
                               const PolarizationState& probe, DetectionModel model,
                               const DtGrid& grid, const RotorSpec& spec,
                               const BasisIndex& basis) {
  return LifCalculator(spec, basis, model, probe).signal(ens, grid);
}

ProbePair ProbePair::linear_ld() {
  return {PolarizationState::linear_along_z(), PolarizationState::linear_in_plane(0.0)};
}

ProbePair ProbePair::circular_cd() {
  return {PolarizationState::circular_plus(), PolarizationState::circular_minus()};
}

DichroismTrace dichroism_of_signals(std::vector<double> i_plus,
                                    std::vector<double> i_minus, const DtGrid& grid) {
  if (i_plus.size() != i_minus.size() || i_plus.size() != grid.count())
    throw ConfigError("dichroism inputs disagree on grid length");
  DichroismTrace trace;
  trace.grid = grid;
  trace.i_plus = std::move(i_plus);
  trace.i_minus = std::move(i_minus);
  trace.dichroism.resize(trace.i_plus.size());
  for (std::size_t i = 0; i < trace.i_plus.size(); ++i) {
    const double mean = 0.5 * (trace.i_plus[i] + trace.i_minus[i]);
    if (mean == 0.0)
      throw NumericalError("degenerate signal: I+ + I- vanishes at dt index " +
                           std::to_string(i));
    trace.dichroism[i] = (trace.i_plus[i] - trace.i_minus[i]) / mean;
  }
  return trace;
}

DichroismTrace dichroism(const DensityEnsemble& ens, const ProbePair& pair,
                         DetectionModel model, const DtGrid& grid,
                         const RotorSpec& spec, const BasisIndex& basis) {
  LifCalculator plus(spec, basis, model, pair.plus);
  LifCalculator minus(spec, basis, model, pair.minus);
  return dichroism_of_signals(plus.signal(ens, grid), minus.signal(ens, grid), grid);
}

std::vector<PopulationRow> population_map(const DensityEnsemble& ens,
                                          const BasisIndex& basis) {
  std::vector<double> pops(basis.size(), 0.0);
  const auto& k = kernels::active();
  for (const auto& m : ens.members)
    k.abs2_acc(m.psi.amplitudes.data(), m.weight, pops.data(), basis.size());
  std::vector<PopulationRow> rows(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i)
    rows[i] = {basis.j_of(i), basis.m_of(i), pops[i]};
  return rows;
}

} // namespace rotsim
