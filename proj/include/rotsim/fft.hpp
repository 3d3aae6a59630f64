#pragma once

#include <complex>
#include <vector>

namespace rotsim {

/// In-place radix-2 DFT, length must be a power of two.
/// Forward kernel e^{-2 pi i jk/N}, inverse e^{+2 pi i jk/N}; both
/// unnormalized (caller applies 1/N where needed).
void fft_pow2(std::vector<std::complex<double>>& a, bool inverse);

bool is_pow2(std::size_t n);

} // namespace rotsim
