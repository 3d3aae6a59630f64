#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace rotsim {

/// Minimal dense row-major complex matrix; storage is kernel-friendly
/// (contiguous rows, std::complex<double> elements).
struct CMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::complex<double>> data;

  CMatrix() = default;
  CMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

  std::complex<double>& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const std::complex<double>& at(std::size_t r, std::size_t c) const {
    return data[r * cols + c];
  }
  const std::complex<double>* row(std::size_t r) const { return data.data() + r * cols; }
};

} // namespace rotsim
