#include "rotsim/kernels.hpp"

namespace rotsim::kernels::scalar {

void matvec(const cplx* a, const cplx* x, cplx* y, std::size_t rows, std::size_t cols) {
  for (std::size_t r = 0; r < rows; ++r) {
    cplx acc{0.0, 0.0};
    const cplx* row = a + r * cols;
    for (std::size_t c = 0; c < cols; ++c) acc += row[c] * x[c];
    y[r] = acc;
  }
}

void matvec_acc(const cplx* a, const cplx* x, cplx* y, std::size_t rows,
                std::size_t cols, cplx s) {
  for (std::size_t r = 0; r < rows; ++r) {
    cplx acc{0.0, 0.0};
    const cplx* row = a + r * cols;
    for (std::size_t c = 0; c < cols; ++c) acc += row[c] * x[c];
    y[r] += s * acc;
  }
}

void hadamard(const cplx* d, const cplx* x, cplx* z, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) z[i] = d[i] * x[i];
}

cplx dotc(const cplx* x, const cplx* y, std::size_t n) {
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

double norm2(const cplx* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return acc;
}

void axpy(cplx s, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += s * x[i];
}

void abs2_acc(const cplx* x, double w, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    out[i] += w * (x[i].real() * x[i].real() + x[i].imag() * x[i].imag());
}

const Backend backend = {matvec, matvec_acc, hadamard, dotc, norm2, axpy,
                         abs2_acc, "scalar"};

} // namespace rotsim::kernels::scalar
