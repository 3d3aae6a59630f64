#include "rotsim/wigner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>

namespace rotsim {

namespace {

constexpr int kMaxFact = 129;

const std::array<long double, kMaxFact>& factorial_table() {
  static const std::array<long double, kMaxFact> table = [] {
    std::array<long double, kMaxFact> t{};
    t[0] = 1.0L;
    for (int i = 1; i < kMaxFact; ++i) t[i] = t[i - 1] * static_cast<long double>(i);
    return t;
  }();
  return table;
}

inline long double fact(int n) { return factorial_table()[static_cast<std::size_t>(n)]; }

} // namespace

double wigner3j(int j1, int j2, int j3, int m1, int m2, int m3) {
  if (m1 + m2 + m3 != 0) return 0.0;
  if (j3 < std::abs(j1 - j2) || j3 > j1 + j2) return 0.0;
  if (std::abs(m1) > j1 || std::abs(m2) > j2 || std::abs(m3) > j3) return 0.0;

  const int tmin = std::max({0, j2 - j3 - m1, j1 - j3 + m2});
  const int tmax = std::min({j1 + j2 - j3, j1 - m1, j2 + m2});
  if (tmin > tmax) return 0.0;

  long double sum = 0.0L;
  for (int t = tmin; t <= tmax; ++t) {
    long double den = fact(t) * fact(j3 - j2 + m1 + t) * fact(j3 - j1 - m2 + t) *
                      fact(j1 + j2 - j3 - t) * fact(j1 - m1 - t) * fact(j2 + m2 - t);
    long double term = 1.0L / den;
    sum += (t % 2 == 0) ? term : -term;
  }

  long double triangle = fact(j1 + j2 - j3) * fact(j1 - j2 + j3) *
                         fact(-j1 + j2 + j3) / fact(j1 + j2 + j3 + 1);
  long double norm = fact(j1 + m1) * fact(j1 - m1) * fact(j2 + m2) *
                     fact(j2 - m2) * fact(j3 + m3) * fact(j3 - m3);
  long double result = sum * std::sqrt(triangle * norm);
  if ((j1 - j2 - m3) % 2 != 0) result = -result;
  return static_cast<double>(result);
}

double racah_c_element(int jp, int mp, int k, int q, int j, int m) {
  if (mp != m + q) return 0.0;
  double value = wigner3j(jp, k, j, 0, 0, 0) * wigner3j(jp, k, j, -mp, q, m);
  value *= std::sqrt(static_cast<double>((2 * jp + 1) * (2 * j + 1)));
  if (mp % 2 != 0) value = -value; // (-1)^{m'}
  return value;
}

} // namespace rotsim
