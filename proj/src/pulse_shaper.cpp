#include "rotsim/pulse_shaper.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rotsim/errors.hpp"
#include "rotsim/fft.hpp"
#include "rotsim/units.hpp"

namespace rotsim {

using cplx = std::complex<double>;

double SpectralField::energy() const {
  double e = 0.0;
  for (std::size_t k = 0; k < n; ++k) e += std::norm(sx[k]) + std::norm(sy[k]);
  return e * domega_rad_fs / kTwoPi;
}

double VectorField::energy() const {
  double e = 0.0;
  for (std::size_t j = 0; j < n; ++j) e += intensity_at(j);
  return e * dt_fs;
}

void VectorField::scale_energy(double s) {
  if (!(s >= 0.0)) throw ConfigError("energy scale must be nonnegative");
  const double a = std::sqrt(s);
  for (auto& v : ex) v *= a;
  for (auto& v : ey) v *= a;
}

SpectralField gaussian_spectrum(double fwhm_fs, double center_nm,
                                const ShaperGrid& grid) {
  if (!(fwhm_fs > 0.0)) throw ConfigError("pulse duration must be positive");
  if (!is_pow2(grid.samples) || grid.samples < 16)
    throw ConfigError("shaper grid must be a power of two >= 16");
  if (!(grid.dt_fs > 0.0)) throw ConfigError("shaper grid step must be positive");

  SpectralField f;
  f.n = grid.samples;
  f.domega_rad_fs = kTwoPi / (static_cast<double>(grid.samples) * grid.dt_fs);
  f.center_nm = center_nm;
  f.sx.assign(f.n, {0.0, 0.0});
  f.sy.assign(f.n, {0.0, 0.0});

  // E(t) = exp(-2 ln2 t^2 / fwhm^2)  ->  S(Omega) ~ exp(-Omega^2 fwhm^2 / (8 ln2)).
  const double c = fwhm_fs * fwhm_fs / (8.0 * std::numbers::ln2);
  const double omega_edge = f.omega_at(f.n - 1);
  if (omega_edge * omega_edge * c < 18.0)
    throw ConfigError("shaper grid too coarse: spectrum does not fit the window");

  for (std::size_t k = 0; k < f.n; ++k) {
    const double w = f.omega_at(k);
    f.sx[k] = std::exp(-c * w * w);
  }
  const double e = f.energy();
  const double scale = 1.0 / std::sqrt(e);
  for (auto& v : f.sx) v *= scale;
  return f;
}

namespace {

// Centered-grid transform: E_j = (dOmega/2pi) (-1)^j FFT[(-1)^k S_k]_j.
std::vector<cplx> centered_to_time(const std::vector<cplx>& s, double domega) {
  const std::size_t n = s.size();
  std::vector<cplx> a(n);
  for (std::size_t k = 0; k < n; ++k) a[k] = (k % 2 == 0) ? s[k] : -s[k];
  fft_pow2(a, /*inverse=*/false);
  const double scale = domega / kTwoPi;
  for (std::size_t j = 0; j < n; ++j) {
    a[j] *= scale;
    if (j % 2 != 0) a[j] = -a[j];
  }
  return a;
}

std::vector<cplx> centered_to_spectral(const std::vector<cplx>& e, double dt) {
  const std::size_t n = e.size();
  std::vector<cplx> a(n);
  for (std::size_t j = 0; j < n; ++j) a[j] = (j % 2 == 0) ? e[j] : -e[j];
  fft_pow2(a, /*inverse=*/true);
  for (std::size_t k = 0; k < n; ++k) {
    a[k] *= dt;
    if (k % 2 != 0) a[k] = -a[k];
  }
  return a;
}

} // namespace

VectorField to_time_domain(const SpectralField& f) {
  VectorField out;
  out.n = f.n;
  out.dt_fs = kTwoPi / (static_cast<double>(f.n) * f.domega_rad_fs);
  out.center_nm = f.center_nm;
  out.ex = centered_to_time(f.sx, f.domega_rad_fs);
  out.ey = centered_to_time(f.sy, f.domega_rad_fs);
  return out;
}

SpectralField to_spectral_domain(const VectorField& f) {
  SpectralField out;
  out.n = f.n;
  out.domega_rad_fs = kTwoPi / (static_cast<double>(f.n) * f.dt_fs);
  out.center_nm = f.center_nm;
  out.sx = centered_to_spectral(f.ex, f.dt_fs);
  out.sy = centered_to_spectral(f.ey, f.dt_fs);
  return out;
}

void apply_double_kick_mask(SpectralField& f, double tau_fs) {
  if (tau_fs < 0.0) throw ConfigError("pulse separation must be >= 0");
  for (std::size_t k = 0; k < f.n; ++k) {
    const double mask = std::cos(f.omega_at(k) * tau_fs / 2.0);
    f.sx[k] *= mask;
    f.sy[k] *= mask;
  }
}

void apply_chiral_mask(SpectralField& f, double tau_fs, double alpha, double mod_amp) {
  if (tau_fs < 0.0) throw ConfigError("train period must be >= 0");
  double ey_energy = 0.0;
  for (const auto& v : f.sy) ey_energy += std::norm(v);
  if (ey_energy > 1e-20 * f.n)
    throw ConfigError("chiral mask expects an x-polarized input field");

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (std::size_t k = 0; k < f.n; ++k) {
    const double w = f.omega_at(k);
    // circular eigen-modes: s+ = (sx - i sy)/sqrt2, s- = (sx + i sy)/sqrt2
    const cplx sp = (f.sx[k] - cplx(0.0, 1.0) * f.sy[k]) * inv_sqrt2;
    const cplx sm = (f.sx[k] + cplx(0.0, 1.0) * f.sy[k]) * inv_sqrt2;
    const cplx mp = std::polar(1.0, mod_amp * std::sin(w * tau_fs - alpha));
    const cplx mm = std::polar(1.0, mod_amp * std::sin(w * tau_fs + alpha));
    const cplx spp = sp * mp;
    const cplx smm = sm * mm;
    f.sx[k] = (spp + smm) * inv_sqrt2;
    f.sy[k] = cplx(0.0, 1.0) * (spp - smm) * inv_sqrt2;
  }
}

ReductionResult to_descriptor(const VectorField& field, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0))
    throw ConfigError("pulse threshold must be in (0,1)");

  const std::size_t n = field.n;
  double peak = 0.0;
  for (std::size_t j = 0; j < n; ++j) peak = std::max(peak, field.intensity_at(j));
  if (peak <= 0.0) throw ConfigError("field is empty; nothing to reduce");

  const double keep = threshold * peak;
  const double ripple = 1e-6 * peak;

  std::vector<std::size_t> peaks;
  int discarded = 0;
  for (std::size_t j = 1; j + 1 < n; ++j) {
    const double i0 = field.intensity_at(j);
    if (i0 > field.intensity_at(j - 1) && i0 >= field.intensity_at(j + 1)) {
      if (i0 > keep)
        peaks.push_back(j);
      else if (i0 > ripple)
        ++discarded;
    }
  }
  if (peaks.empty()) throw ConfigError("no pulses above threshold");

  // Isolation: the valley between adjacent pulses must stay well below the
  // larger of the two peaks, otherwise the pulses have merged and the
  // impulsive reduction is not meaningful. (A weak pulse sitting on the
  // wings of a strong neighbor is still reducible; its fluence integral
  // just inherits some wing contamination.)
  for (std::size_t p = 0; p + 1 < peaks.size(); ++p) {
    double valley = peak;
    for (std::size_t j = peaks[p]; j <= peaks[p + 1]; ++j)
      valley = std::min(valley, field.intensity_at(j));
    const double larger =
        std::max(field.intensity_at(peaks[p]), field.intensity_at(peaks[p + 1]));
    if (valley > 0.25 * larger)
      throw UnsupportedError(
          "pulses overlap (period comparable to the pulse length); "
          "impulsive reduction unavailable - propagate the field instead");
  }

  // Per-pulse windows: from each peak walk out to where the intensity has
  // dropped four decades below that pulse's own peak, capped at the midpoint
  // toward the neighbor. This keeps sub-threshold tail pulses out of the
  // fluence and Stokes integrals of the edge pulses.
  ReductionResult result;
  double kept_fluence = 0.0;
  for (std::size_t p = 0; p < peaks.size(); ++p) {
    const double own_cut = 1e-4 * field.intensity_at(peaks[p]);
    const std::size_t lo_lim = (p == 0) ? 0 : (peaks[p - 1] + peaks[p]) / 2;
    const std::size_t hi_lim =
        (p + 1 == peaks.size()) ? n - 1 : (peaks[p] + peaks[p + 1]) / 2;
    std::size_t lo = peaks[p], hi = peaks[p];
    while (lo > lo_lim && field.intensity_at(lo - 1) > own_cut) --lo;
    while (hi < hi_lim && field.intensity_at(hi + 1) > own_cut) ++hi;

    double fluence = 0.0, q = 0.0, u = 0.0, tw = 0.0;
    for (std::size_t j = lo; j <= hi; ++j) {
      const double w = field.intensity_at(j);
      fluence += w;
      q += std::norm(field.ex[j]) - std::norm(field.ey[j]);
      u += 2.0 * std::real(field.ex[j] * std::conj(field.ey[j]));
      tw += w * field.time_at(j);
    }
    fluence *= field.dt_fs;
    kept_fluence += fluence;
    KickEvent kick;
    kick.time_fs = tw * field.dt_fs / fluence; // intensity centroid
    kick.strength = fluence;
    kick.pol = PolarizationState::linear_in_plane(0.5 * std::atan2(u, q));
    result.train.kicks.push_back(kick);
  }
  result.discarded_pulses = discarded;
  result.discarded_fluence = field.energy() - kept_fluence;

  if (result.train.kicks.size() > 1) {
    std::vector<double> gaps;
    for (std::size_t p = 0; p + 1 < result.train.kicks.size(); ++p)
      gaps.push_back(result.train.kicks[p + 1].time_fs - result.train.kicks[p].time_fs);
    std::nth_element(gaps.begin(), gaps.begin() + gaps.size() / 2, gaps.end());
    result.train.tau_fs = gaps[gaps.size() / 2];
  }
  return result;
}

std::vector<double> cross_correlation(const VectorField& field, double gate_fwhm_fs) {
  if (!(gate_fwhm_fs > 0.0)) throw ConfigError("gate duration must be positive");
  const std::size_t n = field.n;
  // Gate support where exp(-4 ln2 x^2 / fwhm^2) > 1e-8.
  const double c = 4.0 * std::numbers::ln2 / (gate_fwhm_fs * gate_fwhm_fs);
  const std::size_t half =
      static_cast<std::size_t>(std::ceil(std::sqrt(18.5 / c) / field.dt_fs));
  std::vector<double> gate(2 * half + 1);
  for (std::size_t g = 0; g < gate.size(); ++g) {
    const double x = (static_cast<double>(g) - static_cast<double>(half)) * field.dt_fs;
    gate[g] = std::exp(-c * x * x);
  }
  std::vector<double> trace(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t g = 0; g < gate.size(); ++g) {
      const std::ptrdiff_t idx = static_cast<std::ptrdiff_t>(j + g) -
                                 static_cast<std::ptrdiff_t>(half);
      if (idx < 0 || idx >= static_cast<std::ptrdiff_t>(n)) continue;
      acc += gate[g] * field.intensity_at(static_cast<std::size_t>(idx));
    }
    trace[j] = acc * field.dt_fs;
  }
  return trace;
}

VectorField synthesize_field(const TrainRecipe& recipe) {
  SpectralField s = gaussian_spectrum(recipe.pulse_fwhm_fs, recipe.center_nm, recipe.grid);
  const double window = static_cast<double>(recipe.grid.samples) * recipe.grid.dt_fs;
  if (recipe.mode == TrainRecipe::Mode::DoubleKick) {
    if (recipe.tau_fs + 4.0 * recipe.pulse_fwhm_fs > window)
      throw ConfigError("time window too short for the double-kick separation");
    apply_double_kick_mask(s, recipe.tau_fs);
  } else {
    if (10.0 * recipe.tau_fs + 4.0 * recipe.pulse_fwhm_fs > window)
      throw ConfigError("time window too short for the chiral train span");
    const double a = recipe.handedness >= 0 ? recipe.alpha : -recipe.alpha;
    apply_chiral_mask(s, recipe.tau_fs, a, recipe.mod_amp);
  }
  VectorField f = to_time_domain(s);
  f.scale_energy(recipe.p_total / f.energy());
  return f;
}

ReductionResult synthesize_train(const TrainRecipe& recipe) {
  if (recipe.tau_fs < 2.0 * recipe.pulse_fwhm_fs)
    throw UnsupportedError(
        "train period is comparable to the pulse length; the impulsive "
        "reduction is unavailable - propagate the field instead");
  ReductionResult r = to_descriptor(synthesize_field(recipe), recipe.peak_threshold);
  r.train.alpha = recipe.handedness >= 0 ? recipe.alpha : -recipe.alpha;
  r.train.mod_amp = recipe.mode == TrainRecipe::Mode::Chiral ? recipe.mod_amp : 0.0;
  if (recipe.mode == TrainRecipe::Mode::DoubleKick) r.train.tau_fs = recipe.tau_fs;
  return r;
}

} // namespace rotsim
