#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <complex>

#include "rotsim/errors.hpp"
#include "rotsim/pulse_shaper.hpp"
#include "rotsim/units.hpp"

using namespace rotsim;
using cplx = std::complex<double>;

namespace {

double fwhm_of(const std::vector<double>& y, double dx) {
  const auto it = std::max_element(y.begin(), y.end());
  const double half = *it / 2.0;
  std::size_t peak = static_cast<std::size_t>(it - y.begin());
  std::size_t lo = peak, hi = peak;
  while (lo > 0 && y[lo] > half) --lo;
  while (hi + 1 < y.size() && y[hi] > half) ++hi;
  // linear interpolation at the crossings
  const double frac_lo = (half - y[lo]) / (y[lo + 1] - y[lo]);
  const double frac_hi = (half - y[hi]) / (y[hi - 1] - y[hi]);
  return ((static_cast<double>(hi) - frac_hi) - (static_cast<double>(lo) + frac_lo)) * dx;
}

std::vector<double> intensity_profile(const VectorField& f) {
  std::vector<double> out(f.n);
  for (std::size_t j = 0; j < f.n; ++j) out[j] = f.intensity_at(j);
  return out;
}

double angle_mod_pi(double a) {
  double w = std::fmod(a, kPi);
  if (w < 0) w += kPi;
  return w;
}

double angle_diff_mod_pi(double a, double b) {
  double d = std::abs(angle_mod_pi(a) - angle_mod_pi(b));
  return std::min(d, kPi - d);
}

} // namespace

TEST_CASE("transform-limited gaussian") {
  ShaperGrid grid;
  auto s = gaussian_spectrum(50.0, 793.0, grid);
  auto f = to_time_domain(s);

  SUBCASE("unit energy") {
    CHECK(f.energy() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(s.energy() == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("intensity FWHM is the requested 50 fs") {
    CHECK(fwhm_of(intensity_profile(f), f.dt_fs) == doctest::Approx(50.0).epsilon(0.01));
  }
  SUBCASE("time-bandwidth product of the gaussian") {
    std::vector<double> spec_int(s.n);
    for (std::size_t k = 0; k < s.n; ++k) spec_int[k] = std::norm(s.sx[k]);
    const double dnu = s.domega_rad_fs / kTwoPi; // cycles/fs
    const double tbp = fwhm_of(spec_int, dnu) * fwhm_of(intensity_profile(f), f.dt_fs);
    CHECK(tbp == doctest::Approx(2.0 * std::numbers::ln2 / kPi).epsilon(0.01));
  }
  SUBCASE("grid too coarse is rejected") {
    ShaperGrid tiny{64, 64.0};
    CHECK_THROWS_AS(gaussian_spectrum(50.0, 793.0, tiny), ConfigError);
  }
  SUBCASE("round trip is exact to 1e-10") {
    auto s2 = to_spectral_domain(f);
    double worst = 0.0;
    for (std::size_t k = 0; k < s.n; ++k)
      worst = std::max(worst, std::abs(s2.sx[k] - s.sx[k]));
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("double-kick mask") {
  ShaperGrid grid;
  auto s = gaussian_spectrum(50.0, 793.0, grid);

  SUBCASE("tau = 0 leaves the field unchanged") {
    auto masked = s;
    apply_double_kick_mask(masked, 0.0);
    double worst = 0.0;
    for (std::size_t k = 0; k < s.n; ++k)
      worst = std::max(worst, std::abs(masked.sx[k] - s.sx[k]));
    CHECK(worst == 0.0);
  }

  SUBCASE("two identical pulses at +-tau/2") {
    const double tau = 440.0;
    auto masked = s;
    apply_double_kick_mask(masked, tau);
    auto f = to_time_domain(masked);

    // energies on the two half-axes
    double e_neg = 0.0, e_pos = 0.0;
    for (std::size_t j = 0; j < f.n; ++j) {
      if (f.time_at(j) < 0)
        e_neg += f.intensity_at(j);
      else
        e_pos += f.intensity_at(j);
    }
    CHECK(std::abs(e_pos / e_neg - 1.0) < 1e-6);

    auto prof = intensity_profile(f);
    const auto imax = std::max_element(prof.begin(), prof.end()) - prof.begin();
    CHECK(std::abs(std::abs(f.time_at(imax)) - tau / 2.0) <= f.dt_fs);

    // amplitude mask halves the energy once the pulses separate
    CHECK(f.energy() == doctest::Approx(0.5).epsilon(1e-6));
  }
}

TEST_CASE("chiral mask") {
  ShaperGrid grid;
  const double alpha = kPi / 4.0;

  SUBCASE("A = 0 leaves the field unchanged") {
    auto s = gaussian_spectrum(50.0, 793.0, grid);
    auto masked = s;
    apply_chiral_mask(masked, 330.0, alpha, 0.0);
    double worst = 0.0;
    for (std::size_t k = 0; k < s.n; ++k) {
      worst = std::max(worst, std::abs(masked.sx[k] - s.sx[k]));
      worst = std::max(worst, std::abs(masked.sy[k]));
    }
    CHECK(worst < 1e-14);
  }

  SUBCASE("phase masks conserve energy exactly") {
    auto s = gaussian_spectrum(50.0, 793.0, grid);
    apply_chiral_mask(s, 330.0, alpha, 2.6);
    CHECK(s.energy() == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("bessel amplitudes and rotating linear polarization at A = 2.6") {
    auto s = gaussian_spectrum(50.0, 793.0, grid);
    apply_chiral_mask(s, 330.0, alpha, 2.6);
    auto f = to_time_domain(s);

    // sample the field at the pulse centers t = n tau
    const double peak0_amp = std::sqrt(std::cyl_bessel_j(1, 2.6) * std::cyl_bessel_j(1, 2.6));
    for (int n = -4; n <= 4; ++n) {
      const std::size_t j = static_cast<std::size_t>(
          std::llround(n * 330.0 / f.dt_fs) + static_cast<long long>(f.n / 2));
      const double amp = std::sqrt(f.intensity_at(j));
      const double expected = std::abs(std::cyl_bessel_j(std::abs(n), 2.6));
      // normalize on the n=1 pulse
      const std::size_t j1 = static_cast<std::size_t>(
          std::llround(330.0 / f.dt_fs) + static_cast<long long>(f.n / 2));
      const double amp1 = std::sqrt(f.intensity_at(j1));
      CHECK(amp / amp1 == doctest::Approx(expected / peak0_amp).epsilon(0.02));

      // linear polarization at angle n*alpha (mod pi)
      if (std::abs(std::cyl_bessel_j(std::abs(n), 2.6)) > 0.05) {
        const double q = std::norm(f.ex[j]) - std::norm(f.ey[j]);
        const double u = 2.0 * std::real(f.ex[j] * std::conj(f.ey[j]));
        const double v = 2.0 * std::imag(f.ex[j] * std::conj(f.ey[j]));
        const double lin = std::hypot(q, u);
        CHECK(std::abs(v) < 0.02 * lin); // no circular admixture
        const double angle = 0.5 * std::atan2(u, q);
        CHECK(angle_diff_mod_pi(angle, n * alpha) < kPi / 180.0);
      }
    }
  }

  SUBCASE("flipping alpha mirrors the polarization sequence") {
    auto sp = gaussian_spectrum(50.0, 793.0, grid);
    auto sm = gaussian_spectrum(50.0, 793.0, grid);
    apply_chiral_mask(sp, 330.0, alpha, 2.6);
    apply_chiral_mask(sm, 330.0, -alpha, 2.6);
    auto fp = to_time_domain(sp);
    auto fm = to_time_domain(sm);
    for (int n = -3; n <= 3; ++n) {
      const std::size_t j = static_cast<std::size_t>(
          std::llround(n * 330.0 / fp.dt_fs) + static_cast<long long>(fp.n / 2));
      const double qp = std::norm(fp.ex[j]) - std::norm(fp.ey[j]);
      const double up = 2.0 * std::real(fp.ex[j] * std::conj(fp.ey[j]));
      const double qm = std::norm(fm.ex[j]) - std::norm(fm.ey[j]);
      const double um = 2.0 * std::real(fm.ex[j] * std::conj(fm.ey[j]));
      CHECK(angle_diff_mod_pi(0.5 * std::atan2(up, qp), -0.5 * std::atan2(um, qm)) <
            1e-6);
    }
  }

  SUBCASE("non-x-polarized input is rejected") {
    auto s = gaussian_spectrum(50.0, 793.0, grid);
    s.sy = s.sx;
    CHECK_THROWS_AS(apply_chiral_mask(s, 330.0, alpha, 2.6), ConfigError);
  }
}

TEST_CASE("descriptor reduction") {
  TrainRecipe recipe;
  recipe.p_total = 1.0;

  SUBCASE("double-kick reduces to two equal kicks") {
    recipe.mode = TrainRecipe::Mode::DoubleKick;
    recipe.tau_fs = 440.0;
    auto r = synthesize_train(recipe);
    REQUIRE(r.train.kicks.size() == 2);
    CHECK(std::abs(r.train.kicks[0].strength / r.train.kicks[1].strength - 1.0) < 1e-6);
    CHECK(angle_diff_mod_pi(r.train.kicks[0].pol.angle, r.train.kicks[1].pol.angle) <
          1e-6);
    CHECK(std::abs(r.train.kicks[0].time_fs + 220.0) <= recipe.grid.dt_fs);
    CHECK(std::abs(r.train.kicks[1].time_fs - 220.0) <= recipe.grid.dt_fs);
    CHECK(r.train.total_strength() == doctest::Approx(1.0).epsilon(1e-4));
  }

  SUBCASE("chiral train at A=2.6: nine pulses, six stronger and three weaker") {
    recipe.mode = TrainRecipe::Mode::Chiral;
    recipe.tau_fs = 330.0;
    recipe.alpha = kPi / 4.0;
    recipe.mod_amp = 2.6;
    auto r = synthesize_train(recipe);
    REQUIRE(r.train.kicks.size() == 9);

    std::vector<double> strengths;
    for (const auto& k : r.train.kicks) strengths.push_back(k.strength);
    std::sort(strengths.begin(), strengths.end());
    // three weaker (n = 0, +-4), six stronger (n = +-1, +-2, +-3)
    CHECK(strengths[2] < 0.25 * strengths[3]);

    // fluence ratio of the two leading pulse pairs follows the Bessel weights
    const double j1 = std::cyl_bessel_j(1, 2.6);
    const double j2 = std::cyl_bessel_j(2, 2.6);
    const double expect = (j1 * j1) / (j2 * j2);
    CHECK(strengths[8] / strengths[6] == doctest::Approx(expect).epsilon(0.02));

    // pulse spacing equals the train period
    CHECK(r.train.tau_fs == doctest::Approx(330.0).epsilon(1e-3));

    // polarization twist between consecutive pulses
    for (std::size_t k = 0; k + 1 < r.train.kicks.size(); ++k)
      CHECK(angle_diff_mod_pi(r.train.kicks[k + 1].pol.angle,
                              r.train.kicks[k].pol.angle + kPi / 4.0) < kPi / 180.0);
  }

  SUBCASE("overlapping pulses are rejected") {
    recipe.mode = TrainRecipe::Mode::DoubleKick;
    recipe.tau_fs = 60.0; // comparable to the 50 fs pulse length
    CHECK_THROWS_AS(synthesize_train(recipe), UnsupportedError);
  }
}

TEST_CASE("cross correlation") {
  TrainRecipe recipe;
  recipe.p_total = 1.0;

  SUBCASE("single pulse gives the convolved width") {
    recipe.mode = TrainRecipe::Mode::DoubleKick;
    recipe.tau_fs = 1.0; // effectively unsplit
    auto f = synthesize_field(recipe);
    auto trace = cross_correlation(f, 50.0);
    CHECK(fwhm_of(trace, f.dt_fs) ==
          doctest::Approx(50.0 * std::sqrt(2.0)).epsilon(0.02));
  }

  SUBCASE("chiral train shows nine peaks at n tau") {
    recipe.mode = TrainRecipe::Mode::Chiral;
    recipe.tau_fs = 330.0;
    recipe.alpha = kPi / 4.0;
    recipe.mod_amp = 2.6;
    auto f = synthesize_field(recipe);
    auto trace = cross_correlation(f, 50.0);

    const double peak = *std::max_element(trace.begin(), trace.end());
    int count = 0;
    for (std::size_t j = 1; j + 1 < trace.size(); ++j) {
      if (trace[j] > trace[j - 1] && trace[j] >= trace[j + 1] && trace[j] > 0.02 * peak) {
        ++count;
        const double t = f.time_at(j);
        const double nearest = std::round(t / 330.0) * 330.0;
        CHECK(std::abs(t - nearest) <= 2.0 * f.dt_fs);
      }
    }
    CHECK(count == 9);
  }
}
