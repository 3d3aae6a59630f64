#include "rotsim/extraction.hpp"

#include <cmath>

#include "rotsim/errors.hpp"
#include "rotsim/units.hpp"

namespace rotsim {

using cplx = std::complex<double>;

namespace {

std::vector<double> hann(std::size_t n) {
  std::vector<double> w(n);
  if (n == 1) {
    w[0] = 1.0;
    return w;
  }
  for (std::size_t j = 0; j < n; ++j)
    w[j] = 0.5 - 0.5 * std::cos(kTwoPi * static_cast<double>(j) /
                                static_cast<double>(n - 1));
  return w;
}

double mean_of(const std::vector<double>& s) {
  double m = 0.0;
  for (double v : s) m += v;
  return m / static_cast<double>(s.size());
}

} // namespace

CoherenceAmplitude extract_coherence_amplitude(const std::vector<double>& signal,
                                               const DtGrid& grid, double nu_thz,
                                               double phi_ref) {
  grid.validate();
  if (signal.size() != grid.count())
    throw ConfigError("signal length does not match the delay grid");
  if (!(nu_thz > 0.0)) throw ConfigError("extraction frequency must be positive");

  const double span_fs = grid.to_fs - grid.from_fs;
  const double periods = span_fs * nu_thz * kCyclesPerThzFs;
  if (periods < 5.0)
    throw ConfigError("delay grid spans " + std::to_string(periods) +
                      " periods of the extraction frequency; need at least 5");

  const std::size_t n = signal.size();
  const auto w = hann(n);
  const double mean = mean_of(signal);

  cplx acc{0.0, 0.0};
  double wsum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double t = grid.at(j);
    acc += w[j] * (signal[j] - mean) * std::polar(1.0, phase_rad(nu_thz, t));
    wsum += w[j];
  }

  CoherenceAmplitude out;
  out.z = 2.0 * acc / wsum;
  out.magnitude = std::abs(out.z);
  out.signed_value = std::real(out.z * std::polar(1.0, -phi_ref));
  out.phase = std::arg(out.z);
  out.nu_thz = nu_thz;
  out.phi_ref = phi_ref;
  return out;
}

void extract_into(DichroismTrace& trace, double nu_thz, double phi_ref) {
  const auto amp = extract_coherence_amplitude(trace.dichroism, trace.grid, nu_thz, phi_ref);
  trace.z = amp.z;
  trace.magnitude = amp.magnitude;
  trace.signed_value = amp.signed_value;
  trace.phase = amp.phase;
  trace.nu_thz = amp.nu_thz;
  trace.phi_ref = amp.phi_ref;
}

double dominant_frequency_thz(const std::vector<double>& signal, const DtGrid& grid) {
  grid.validate();
  const std::size_t n = signal.size();
  if (n < 8) throw ConfigError("signal too short for a spectrum");
  const auto w = hann(n);
  const double mean = mean_of(signal);
  const double span_fs = static_cast<double>(n) * grid.step_fs;

  double best_mag = -1.0;
  double best_nu = 0.0;
  for (std::size_t k = 1; k <= n / 2; ++k) {
    const double nu = static_cast<double>(k) / (span_fs * kCyclesPerThzFs);
    cplx acc{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j)
      acc += w[j] * (signal[j] - mean) *
             std::polar(1.0, kTwoPi * static_cast<double>(k * j) / static_cast<double>(n));
    const double mag = std::abs(acc);
    if (mag > best_mag) {
      best_mag = mag;
      best_nu = nu;
    }
  }
  return best_nu;
}

} // namespace rotsim
