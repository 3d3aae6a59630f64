#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "rotsim/detection.hpp"
#include "rotsim/errors.hpp"
#include "rotsim/kernels.hpp"
#include "rotsim/kick.hpp"
#include "rotsim/operators.hpp"
#include "rotsim/propagate.hpp"
#include "rotsim/pulse_shaper.hpp"
#include "rotsim/units.hpp"
#include "rotsim/wavepacket.hpp"
#include "support/sphere_quadrature.hpp"

using namespace rotsim;
using cplx = std::complex<double>;

namespace {

std::vector<double> population_map_rows(const DensityEnsemble& ens,
                                        const BasisIndex& basis) {
  auto rows = population_map(ens, basis);
  std::vector<double> v(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) v[i] = rows[i].population;
  return v;
}

RotorSpec he2_spec(int j_max = 7) {
  RotorSpec spec;
  spec.vib = {{0, 1.0, 0.227}};
  spec.j_parity = JParity::Odd;
  spec.j_max = j_max;
  return spec;
}

WavePacket pure_state(const BasisIndex& basis, int j, int m, int vib = 0) {
  WavePacket psi;
  psi.amplitudes.assign(basis.size(), {0.0, 0.0});
  psi.amplitudes[basis.index(j, m)] = {1.0, 0.0};
  psi.vib = vib;
  return psi;
}

double beat_period_fs(const RotorSpec& spec) {
  return 1.0 / (spec.nu13_thz() * kCyclesPerThzFs);
}

// Independent route: exp(+iP C) c by a dense Taylor series on the full
// matrix (no eigendecomposition, no azimuth-phase factorization).
std::vector<cplx> taylor_kick(const CMatrix& c2, double p, std::vector<cplx> c) {
  std::vector<cplx> term = c, tmp(c.size());
  for (int k = 1; k <= 60; ++k) {
    kernels::active().matvec(c2.data.data(), term.data(), tmp.data(), c.size(), c.size());
    const cplx f = cplx(0.0, p) / static_cast<double>(k);
    for (std::size_t i = 0; i < c.size(); ++i) term[i] = f * tmp[i];
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += term[i];
    double tn = kernels::active().norm2(term.data(), term.size());
    if (tn < 1e-34) break;
  }
  return c;
}

} // namespace

TEST_CASE("kick with P=0 is the identity") {
  auto spec = he2_spec();
  auto basis = build_basis(spec);
  auto psi = pure_state(basis, 3, 2);
  KickEvent kick{0.0, 0.0, PolarizationState::linear_in_plane(0.4)};
  auto out = apply_kick(psi, kick, basis);
  for (std::size_t i = 0; i < basis.size(); ++i)
    CHECK(std::abs(out.amplitudes[i] - psi.amplitudes[i]) < 1e-14);
}

TEST_CASE("kick unitary equals the dense matrix exponential") {
  auto spec = he2_spec(5);
  auto basis = build_basis(spec);
  KickEngine engine(basis);

  for (double angle : {0.0, 0.7}) {
    auto psi = pure_state(basis, 1, -1);
    psi.amplitudes[basis.index(3, 1)] = {0.4, -0.2};
    const double norm = std::sqrt(psi.norm2());
    for (auto& a : psi.amplitudes) a /= norm;

    KickEvent kick{0.0, 1.3, PolarizationState::linear_in_plane(angle)};
    WavePacket fast = psi;
    engine.apply(fast, kick);

    auto c2 = cos2_matrix(basis, kick.pol);
    auto slow = taylor_kick(c2, kick.strength, psi.amplitudes);
    for (std::size_t i = 0; i < basis.size(); ++i)
      CHECK(std::abs(fast.amplitudes[i] - slow[i]) < 1e-12);
  }

  SUBCASE("along-z as well") {
    auto psi = pure_state(basis, 1, 0);
    KickEvent kick{0.0, 2.0, PolarizationState::linear_along_z()};
    WavePacket fast = psi;
    engine.apply(fast, kick);
    auto slow = taylor_kick(cos2_matrix(basis, kick.pol), 2.0, psi.amplitudes);
    for (std::size_t i = 0; i < basis.size(); ++i)
      CHECK(std::abs(fast.amplitudes[i] - slow[i]) < 1e-12);
  }
}

TEST_CASE("weak kick transfer matches first-order perturbation theory") {
  auto spec = he2_spec(9);
  auto basis = build_basis(spec);
  KickEngine engine(basis);

  // oracle element by quadrature, independent of the production operators
  const cplx elem = oracle::matrix_element(
      3, 0, 1, 0, [](double ct, double) { return cplx(ct * ct, 0.0); });

  const double p = 0.01;
  auto psi = pure_state(basis, 1, 0);
  KickEvent kick{0.0, p, PolarizationState::linear_along_z()};
  engine.apply(psi, kick);
  const double pop = std::norm(psi.amplitudes[basis.index(3, 0)]);
  const double pt = p * p * std::norm(elem);
  CHECK(std::abs(pop - pt) / pt < 2e-4); // O(P^2) relative corrections

  // The stated 1e-6 relative agreement holds deeper into the weak limit.
  const double p2 = 3e-4;
  auto psi2 = pure_state(basis, 1, 0);
  engine.apply(psi2, KickEvent{0.0, p2, PolarizationState::linear_along_z()});
  const double pop2 = std::norm(psi2.amplitudes[basis.index(3, 0)]);
  const double pt2 = p2 * p2 * std::norm(elem);
  CHECK(std::abs(pop2 - pt2) / pt2 < 1e-6);
}

TEST_CASE("kick followed by its inverse restores the state") {
  auto spec = he2_spec(7);
  auto basis = build_basis(spec);
  KickEngine engine(basis);
  auto psi = pure_state(basis, 1, 1);
  WavePacket out = psi;
  engine.apply(out, KickEvent{0.0, 2.5, PolarizationState::linear_in_plane(0.3)});
  engine.apply(out, KickEvent{0.0, -2.5, PolarizationState::linear_in_plane(0.3)});
  for (std::size_t i = 0; i < basis.size(); ++i)
    CHECK(std::abs(out.amplitudes[i] - psi.amplitudes[i]) < 1e-10);
}

TEST_CASE("free evolution") {
  auto spec = he2_spec();
  auto basis = build_basis(spec);
  auto psi = pure_state(basis, 1, 0);
  psi.amplitudes[basis.index(1, 0)] = {std::sqrt(0.5), 0.0};
  psi.amplitudes[basis.index(3, 0)] = {std::sqrt(0.5), 0.0};

  SUBCASE("dt = 0 is the identity") {
    auto out = evolve_free(psi, 0.0, spec, basis);
    for (std::size_t i = 0; i < basis.size(); ++i)
      CHECK(out.amplitudes[i] == psi.amplitudes[i]);
  }
  SUBCASE("phase additivity") {
    auto twice = evolve_free(evolve_free(psi, 123.0, spec, basis), 123.0, spec, basis);
    auto once = evolve_free(psi, 246.0, spec, basis);
    for (std::size_t i = 0; i < basis.size(); ++i)
      CHECK(std::abs(twice.amplitudes[i] - once.amplitudes[i]) < 1e-10);
    CHECK(twice.time_fs == doctest::Approx(once.time_fs));
  }
  SUBCASE("norm preserved") {
    auto out = evolve_free(psi, 5678.9, spec, basis);
    CHECK(out.norm2() == doctest::Approx(psi.norm2()).epsilon(1e-12));
  }
  SUBCASE("the 1-3 coherence beats at nu13") {
    const double dt = 77.0;
    auto out = evolve_free(psi, dt, spec, basis);
    const cplx before = psi.amplitudes[basis.index(1, 0)] *
                        std::conj(psi.amplitudes[basis.index(3, 0)]);
    const cplx after = out.amplitudes[basis.index(1, 0)] *
                       std::conj(out.amplitudes[basis.index(3, 0)]);
    const double expected = phase_rad(spec.nu13_thz(), dt);
    CHECK(std::arg(after / before) == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("initial ensemble") {
  auto spec = he2_spec();
  auto basis = build_basis(spec);

  SUBCASE("single vibrational level") {
    auto ens = initial_ensemble(spec, basis);
    REQUIRE(ens.members.size() == 3);
    for (const auto& m : ens.members) CHECK(m.weight == doctest::Approx(1.0 / 3.0));
    CHECK(ens.total_weight() == doctest::Approx(1.0));
  }
  SUBCASE("vibrational mixture") {
    RotorSpec spec2 = spec;
    spec2.vib = {{0, 0.8, 0.227}, {1, 0.2, 0.22}};
    auto ens = initial_ensemble(spec2, basis);
    REQUIRE(ens.members.size() == 6);
    CHECK(ens.members[0].weight == doctest::Approx(0.8 / 3.0));
    CHECK(ens.members[5].weight == doctest::Approx(0.2 / 3.0));
  }
  SUBCASE("isotropic alignment = 1/3") {
    auto ens = initial_ensemble(spec, basis);
    auto c2 = cos2_matrix(basis, PolarizationState::linear_along_z());
    double avg = 0.0;
    for (const auto& m : ens.members) {
      std::vector<cplx> tmp(basis.size());
      kernels::active().matvec(c2.data.data(), m.psi.amplitudes.data(), tmp.data(),
                               basis.size(), basis.size());
      avg += m.weight *
             std::real(kernels::active().dotc(m.psi.amplitudes.data(), tmp.data(),
                                              basis.size()));
    }
    CHECK(avg == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  }
}

TEST_CASE("double-kick interference") {
  auto spec = he2_spec(9);
  auto basis = build_basis(spec);
  TrainPropagator prop(spec, basis);
  const double t13 = beat_period_fs(spec);
  const double p = 0.02;

  auto run = [&](std::vector<double> times) {
    DensityEnsemble ens;
    ens.members.push_back({1.0, pure_state(basis, 1, 0)});
    PulseTrainDescriptor train;
    for (double t : times)
      train.kicks.push_back({t, p, PolarizationState::linear_along_z()});
    auto out = prop.propagate(ens, train);
    return std::norm(out.members[0].psi.amplitudes[basis.index(3, 0)]);
  };

  const double single = run({0.0});
  SUBCASE("constructive at one beat period") {
    CHECK(run({0.0, t13}) == doctest::Approx(4.0 * single).epsilon(5e-3));
  }
  SUBCASE("destructive at half a beat period") {
    CHECK(run({0.0, 0.5 * t13}) < 0.01 * single);
  }
  SUBCASE("destructive at the paper's 220 fs") {
    CHECK(run({0.0, 220.0}) < 0.01 * single);
  }
}

TEST_CASE("propagate_train bookkeeping") {
  auto spec = he2_spec(7);
  auto basis = build_basis(spec);
  TrainPropagator prop(spec, basis);
  auto ens = initial_ensemble(spec, basis);

  SUBCASE("empty train leaves the ensemble unchanged") {
    auto out = prop.propagate(ens, PulseTrainDescriptor{});
    for (std::size_t m = 0; m < ens.members.size(); ++m)
      for (std::size_t i = 0; i < basis.size(); ++i)
        CHECK(out.members[m].psi.amplitudes[i] == ens.members[m].psi.amplitudes[i]);
  }
  SUBCASE("kick times must increase") {
    PulseTrainDescriptor train;
    train.kicks.push_back({100.0, 0.1, PolarizationState::linear_along_z()});
    train.kicks.push_back({100.0, 0.1, PolarizationState::linear_along_z()});
    CHECK_THROWS_AS(prop.propagate(ens, train), ConfigError);
  }
  SUBCASE("timestamp lands on the last kick") {
    PulseTrainDescriptor train;
    train.kicks.push_back({-220.0, 0.1, PolarizationState::linear_along_z()});
    train.kicks.push_back({220.0, 0.1, PolarizationState::linear_along_z()});
    auto out = prop.propagate(ens, train);
    for (const auto& m : out.members) CHECK(m.psi.time_fs == doctest::Approx(220.0));
  }
  SUBCASE("unitarity across a strong random train") {
    PulseTrainDescriptor train;
    for (int k = 0; k < 9; ++k)
      train.kicks.push_back(
          {k * 330.0, 0.9, PolarizationState::linear_in_plane(k * kPi / 4.0)});
    auto out = prop.propagate(ens, train);
    CHECK(std::abs(out.mean_norm2() - 1.0) < 1e-9);
  }
  SUBCASE("vibrational members evolve with their own constants") {
    RotorSpec spec2 = spec;
    spec2.vib = {{0, 0.5, 0.227}, {1, 0.5, 0.2}};
    const BasisIndex b2 = build_basis(spec2);
    auto ens2 = initial_ensemble(spec2, b2);
    TrainPropagator prop2(spec2, b2);
    PulseTrainDescriptor train;
    train.kicks.push_back({0.0, 0.1, PolarizationState::linear_along_z()});
    train.kicks.push_back({660.0, 0.1, PolarizationState::linear_along_z()});
    auto out = prop2.propagate(ens2, train);
    // 660 fs is destructive for the v=0 beat (2.27 THz) but far from
    // destructive for v=1 (2.0 THz): the ro-vibrational dephasing effect.
    const auto& c0 = out.members[1].psi; // v=0, M=0
    const auto& c1 = out.members[4].psi; // v=1, M=0
    CHECK(std::norm(c1.amplitudes[b2.index(3, 0)]) >
          10.0 * std::norm(c0.amplitudes[b2.index(3, 0)]));
  }
}

TEST_CASE("mirror symmetries of trains") {
  auto spec = he2_spec(9);
  auto basis = build_basis(spec);
  TrainPropagator prop(spec, basis);
  auto ens = initial_ensemble(spec, basis);

  auto chiral_train = [&](int handedness) {
    PulseTrainDescriptor train;
    for (int n = -4; n <= 4; ++n)
      train.kicks.push_back({n * 330.0, 0.15,
                             PolarizationState::linear_in_plane(
                                 handedness * n * kPi / 4.0)});
    return train;
  };

  SUBCASE("aligned kicks give M-symmetric populations") {
    PulseTrainDescriptor train;
    train.kicks.push_back({0.0, 0.8, PolarizationState::linear_along_z()});
    train.kicks.push_back({317.0, 0.8, PolarizationState::linear_in_plane(kPi / 2.0)});
    auto out = prop.propagate(ens, train);
    auto rows = population_map_rows(out, basis);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      auto [j, m] = basis.lookup(i);
      CHECK(std::abs(rows[i] - rows[basis.index(j, -m)]) < 1e-10);
    }
  }

  SUBCASE("handedness flip mirrors populations exactly") {
    auto out_p = prop.propagate(ens, chiral_train(+1));
    auto out_m = prop.propagate(ens, chiral_train(-1));
    auto rows_p = population_map_rows(out_p, basis);
    auto rows_m = population_map_rows(out_m, basis);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      auto [j, m] = basis.lookup(i);
      CHECK(std::abs(rows_p[i] - rows_m[basis.index(j, -m)]) < 1e-12);
    }
  }
}

TEST_CASE("field propagation") {
  auto spec = he2_spec(7);
  auto basis = build_basis(spec);
  FieldPropagator fprop(spec, basis, 0.5);
  auto ens = initial_ensemble(spec, basis);

  SUBCASE("zero field matches free evolution") {
    VectorField field;
    field.n = 1024;
    field.dt_fs = 0.5;
    field.ex.assign(field.n, {0.0, 0.0});
    field.ey.assign(field.n, {0.0, 0.0});
    auto out = fprop.propagate(ens, field);
    const double span = field.time_at(field.n - 1);
    for (std::size_t m = 0; m < ens.members.size(); ++m) {
      auto ref = evolve_free(ens.members[m].psi, span, spec, basis);
      for (std::size_t i = 0; i < basis.size(); ++i)
        CHECK(std::abs(out.members[m].psi.amplitudes[i] - ref.amplitudes[i]) < 1e-10);
    }
  }

  SUBCASE("a short pulse approaches the impulsive kick") {
    TrainRecipe recipe;
    recipe.mode = TrainRecipe::Mode::DoubleKick;
    recipe.tau_fs = 1.0; // cos mask ~ 1: single transform-limited pulse
    recipe.p_total = 1.0;
    recipe.grid.samples = 4096;
    auto field = synthesize_field(recipe);

    auto full = fprop.propagate(ens, field);

    TrainPropagator prop(spec, basis);
    PulseTrainDescriptor train;
    train.kicks.push_back({0.0, field.energy(), PolarizationState::linear_in_plane(0.0)});
    auto imp = prop.propagate(ens, train);

    // Finite pulse duration dephases the high-J rows during the pulse, so
    // the agreement contract is absolute on the population distribution.
    auto rows_full = population_map_rows(full, basis);
    auto rows_imp = population_map_rows(imp, basis);
    for (std::size_t i = 0; i < basis.size(); ++i)
      CHECK(std::abs(rows_full[i] - rows_imp[i]) < 0.02);
    CHECK(std::abs(full.mean_norm2() - 1.0) < 1e-9);
  }

  SUBCASE("field sampled coarser than the step is rejected") {
    FieldPropagator tight(spec, basis, 0.25);
    VectorField field;
    field.n = 64;
    field.dt_fs = 0.5;
    field.ex.assign(field.n, {0.1, 0.0});
    field.ey.assign(field.n, {0.0, 0.0});
    CHECK_THROWS_AS(tight.propagate(ens, field), ConfigError);
  }
}
