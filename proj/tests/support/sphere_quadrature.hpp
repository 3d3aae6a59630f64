#pragma once

// Test-only oracle: spherical-harmonic matrix elements by numerical
// quadrature, independent of the Wigner-algebra production path.
// Gauss-Legendre in cos(theta) (exact for polynomial integrands of degree
// <= 2n-1) times a uniform trapezoid in phi (exact for the e^{i k phi}
// modes that appear here).

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

struct GaussLegendre {
  std::vector<double> x, w;

  explicit GaussLegendre(int n) {
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < n; ++i) {
      // Newton iteration from the Chebyshev estimate.
      double xi = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = 0.0;
        for (int j = 0; j < n; ++j) {
          const double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * j + 1.0) * xi * p1 - j * p2) / (j + 1.0);
        }
        dp = n * (xi * p0 - p1) / (xi * xi - 1.0);
        const double dx = p0 / dp;
        xi -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      x[i] = xi;
      w[i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
    }
  }
};

/// Normalized associated Legendre, m >= 0, Condon-Shortley included:
/// Y_lm(theta,phi) = norm_assoc_legendre(l, m, cos theta) e^{i m phi}.
inline double norm_assoc_legendre(int l, int m, double x) {
  double prod = 1.0;
  for (int i = 1; i <= m; ++i) prod *= (2.0 * i + 1.0) / (2.0 * i);
  double pmm = std::sqrt(prod / (4.0 * std::numbers::pi)) *
               std::pow((1.0 - x) * (1.0 + x), 0.5 * m);
  if (m % 2 == 1) pmm = -pmm;
  if (l == m) return pmm;

  double prev = pmm; // P~_{m,m}
  double cur = x * std::sqrt(2.0 * m + 3.0) * pmm; // P~_{m+1,m}
  if (l == m + 1) return cur;

  for (int ll = m + 2; ll <= l; ++ll) {
    const double ll2 = static_cast<double>(ll) * ll;
    const double lm2 = static_cast<double>(ll - 1) * (ll - 1);
    const double a = std::sqrt((4.0 * ll2 - 1.0) / (ll2 - static_cast<double>(m) * m));
    const double b = std::sqrt((lm2 - static_cast<double>(m) * m) / (4.0 * lm2 - 1.0));
    const double next = a * (x * cur - b * prev);
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Y_lm(theta, phi), any m.
inline cplx sph_harmonic(int l, int m, double costheta, double phi) {
  const int am = std::abs(m);
  const double p = norm_assoc_legendre(l, am, costheta);
  const cplx y = p * std::polar(1.0, am * phi);
  if (m >= 0) return y;
  const cplx conj_y = std::conj(y);
  return (am % 2 == 0) ? conj_y : -conj_y; // Y_{l,-m} = (-1)^m conj(Y_lm)
}

/// Integral of conj(Y_{jp,mp}) f(cos theta, phi) Y_{j,m} over the sphere.
inline cplx matrix_element(int jp, int mp, int j, int m,
                           const std::function<cplx(double, double)>& f,
                           int n_theta = 64, int n_phi = 128) {
  const GaussLegendre quad(n_theta);
  cplx total{0.0, 0.0};
  for (int it = 0; it < n_theta; ++it) {
    const double ct = quad.x[it];
    cplx phi_sum{0.0, 0.0};
    for (int ip = 0; ip < n_phi; ++ip) {
      const double phi = 2.0 * std::numbers::pi * ip / n_phi;
      phi_sum += std::conj(sph_harmonic(jp, mp, ct, phi)) * f(ct, phi) *
                 sph_harmonic(j, m, ct, phi);
    }
    total += quad.w[it] * phi_sum * (2.0 * std::numbers::pi / n_phi);
  }
  return total;
}

} // namespace oracle
