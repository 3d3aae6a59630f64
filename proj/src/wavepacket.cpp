#include "rotsim/wavepacket.hpp"

#include "rotsim/errors.hpp"
#include "rotsim/kernels.hpp"

namespace rotsim {

double WavePacket::norm2() const {
  return kernels::active().norm2(amplitudes.data(), amplitudes.size());
}

double DensityEnsemble::total_weight() const {
  double w = 0.0;
  for (const auto& m : members) w += m.weight;
  return w;
}

double DensityEnsemble::mean_norm2() const {
  double s = 0.0;
  for (const auto& m : members) s += m.weight * m.psi.norm2();
  return s;
}

DensityEnsemble initial_ensemble(const RotorSpec& spec, const BasisIndex& basis) {
  spec.validate();
  if (!basis.contains(1, 0))
    throw ConfigError("initial ensemble requires J=1 in the basis");

  DensityEnsemble ens;
  for (const auto& lv : spec.vib) {
    for (int m = -1; m <= 1; ++m) {
      WavePacket psi;
      psi.amplitudes.assign(basis.size(), {0.0, 0.0});
      psi.amplitudes[basis.index(1, m)] = {1.0, 0.0};
      psi.vib = lv.v;
      psi.time_fs = 0.0;
      ens.members.push_back({lv.weight / 3.0, std::move(psi)});
    }
  }
  return ens;
}

} // namespace rotsim
