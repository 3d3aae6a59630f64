#pragma once

namespace rotsim {

/// Wigner 3j symbol (j1 j2 j3; m1 m2 m3) for integer arguments.
/// Racah sum over long double factorials; adequate to ~1e-14 for the
/// j <= 30, k <= 2 range used here.
double wigner3j(int j1, int j2, int j3, int m1, int m2, int m3);

/// Matrix element of the Racah spherical tensor C^k_q = sqrt(4pi/(2k+1)) Y_kq
/// between spherical harmonics, Condon-Shortley convention:
///   <j' m'| C^k_q |j m> = (-1)^{m'} sqrt((2j'+1)(2j+1))
///                          (j' k j; 0 0 0) (j' k j; -m' q m)
double racah_c_element(int jp, int mp, int k, int q, int j, int m);

} // namespace rotsim
