#pragma once

#include <complex>
#include <cstddef>
#include <string>

// Dense complex vector kernels used by the propagators and detection code.
// Every kernel exists as a scalar reference implementation and, on x86-64,
// as an AVX2+FMA variant. The active set is chosen once at runtime from
// cpuid (overridable via ROTSIM_SIMD=scalar|avx2 or force_backend()).
// The two variants are equivalence-tested against each other; they are not
// bitwise identical (FMA contraction), but agree to ~1e-14 relative.

namespace rotsim::kernels {

using cplx = std::complex<double>;

struct Backend {
  // y = A x, A row-major (rows x cols), y length rows.
  void (*matvec)(const cplx* a, const cplx* x, cplx* y, std::size_t rows,
                 std::size_t cols);
  // y += s * (A x)
  void (*matvec_acc)(const cplx* a, const cplx* x, cplx* y, std::size_t rows,
                     std::size_t cols, cplx s);
  // z = d .* x (elementwise)
  void (*hadamard)(const cplx* d, const cplx* x, cplx* z, std::size_t n);
  // sum_i conj(x_i) * y_i
  cplx (*dotc)(const cplx* x, const cplx* y, std::size_t n);
  // sum_i |x_i|^2
  double (*norm2)(const cplx* x, std::size_t n);
  // y += s * x
  void (*axpy)(cplx s, const cplx* x, cplx* y, std::size_t n);
  // out_i += w * |x_i|^2
  void (*abs2_acc)(const cplx* x, double w, double* out, std::size_t n);
  const char* name;
};

namespace scalar {
void matvec(const cplx* a, const cplx* x, cplx* y, std::size_t rows, std::size_t cols);
void matvec_acc(const cplx* a, const cplx* x, cplx* y, std::size_t rows,
                std::size_t cols, cplx s);
void hadamard(const cplx* d, const cplx* x, cplx* z, std::size_t n);
cplx dotc(const cplx* x, const cplx* y, std::size_t n);
double norm2(const cplx* x, std::size_t n);
void axpy(cplx s, const cplx* x, cplx* y, std::size_t n);
void abs2_acc(const cplx* x, double w, double* out, std::size_t n);
extern const Backend backend;
} // namespace scalar

#if defined(ROTSIM_BUILD_AVX2)
namespace avx2 {
void matvec(const cplx* a, const cplx* x, cplx* y, std::size_t rows, std::size_t cols);
void matvec_acc(const cplx* a, const cplx* x, cplx* y, std::size_t rows,
                std::size_t cols, cplx s);
void hadamard(const cplx* d, const cplx* x, cplx* z, std::size_t n);
cplx dotc(const cplx* x, const cplx* y, std::size_t n);
double norm2(const cplx* x, std::size_t n);
void axpy(cplx s, const cplx* x, cplx* y, std::size_t n);
void abs2_acc(const cplx* x, double w, double* out, std::size_t n);
extern const Backend backend;
} // namespace avx2
#endif

/// The runtime-selected backend (cpuid + ROTSIM_SIMD override, resolved once).
const Backend& active();

/// Force a backend by name ("scalar", "avx2", "auto"). Throws
/// UnsupportedError if the CPU cannot run the requested one.
void force_backend(const std::string& name);

/// True if the AVX2 variant was compiled in and the CPU supports it.
bool avx2_available();

} // namespace rotsim::kernels
