#pragma once

#include "rotsim/basis.hpp"
#include "rotsim/field.hpp"
#include "rotsim/kick.hpp"
#include "rotsim/operators.hpp"
#include "rotsim/train.hpp"
#include "rotsim/wavepacket.hpp"

namespace rotsim {

/// Free evolution by dt: elementwise exp(-i E_J dt) phases, exact (no grid).
WavePacket evolve_free(const WavePacket& psi, double dt_fs, const RotorSpec& spec,
                       const BasisIndex& basis);

/// Impulsive propagation through a kick sequence: free evolution between
/// kicks, exact kick unitaries at the kick instants. Reusable across scan
/// points (the kick eigenbases are built once per basis).
class TrainPropagator {
public:
  TrainPropagator(const RotorSpec& spec, const BasisIndex& basis);

  /// Kick times must be strictly increasing. Each member evolves with its
  /// own vibrational rotational constant; resulting time stamps equal the
  /// last kick time.
  DensityEnsemble propagate(const DensityEnsemble& ens,
                            const PulseTrainDescriptor& train) const;

  void propagate_in_place(WavePacket& psi, const PulseTrainDescriptor& train) const;

  const KickEngine& engine() const { return engine_; }

private:
  const RotorSpec* spec_;
  const BasisIndex* basis_;
  KickEngine engine_;
};

/// Field-resolved integration of i dc/dt = [H0 + V(t)] c across a sampled
/// transverse field (components x,y perpendicular to the quantization axis).
/// Strang splitting with exact H0 half-steps and a unitary-to-rounding
/// Taylor exponential for the interaction; quiet stretches between pulses
/// are crossed with exact free evolution.
///
/// The field is taken in "kick-rate" units: V(t) = -(|ex|^2 XX + |ey|^2 YY
/// + 2 Re(ex ey*) XY), so a short x-polarized pulse of fluence P reproduces
/// the impulsive kick exp(+iP cos^2).
class FieldPropagator {
public:
  FieldPropagator(const RotorSpec& spec, const BasisIndex& basis,
                  double step_fs = 0.5);

  DensityEnsemble propagate(const DensityEnsemble& ens, const VectorField& field) const;
  void propagate_in_place(WavePacket& psi, const VectorField& field) const;

private:
  const RotorSpec* spec_;
  const BasisIndex* basis_;
  double step_fs_;
  TransverseCoupling coupling_;
};

} // namespace rotsim
