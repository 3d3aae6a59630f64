#include "rotsim/kernels.hpp"

#include <immintrin.h>

// AVX2+FMA variants: one __m256d holds two complex<double>. Complex products
// use the movedup/permute + fmaddsub pattern. Reduction order differs from
// the scalar kernels (two interleaved partial sums), so results match the
// reference to rounding, not bitwise.

namespace rotsim::kernels::avx2 {

namespace {

inline __m256d cmul(__m256d a, __m256d b) {
  __m256d b_re = _mm256_movedup_pd(b);
  __m256d b_im = _mm256_permute_pd(b, 0xF);
  __m256d a_sw = _mm256_permute_pd(a, 0x5);
  return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

// a*b + c with one fmaddsub: (a.re*b.re -/+ ...) accumulated into c.
inline __m256d cmul_acc(__m256d a, __m256d b, __m256d c) {
  return _mm256_add_pd(c, cmul(a, b));
}

inline cplx hsum_complex(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d s = _mm_add_pd(lo, hi);
  alignas(16) double out[2];
  _mm_store_pd(out, s);
  return {out[0], out[1]};
}

const __m256d kConjMask =
    _mm256_castsi256_pd(_mm256_set_epi64x(0x8000000000000000LL, 0,
                                          0x8000000000000000LL, 0));

} // namespace

void matvec(const cplx* a, const cplx* x, cplx* y, std::size_t rows, std::size_t cols) {
  const double* xd = reinterpret_cast<const double*>(x);
  for (std::size_t r = 0; r < rows; ++r) {
    const double* row = reinterpret_cast<const double*>(a + r * cols);
    __m256d acc = _mm256_setzero_pd();
    std::size_t c = 0;
    for (; c + 2 <= cols; c += 2) {
      __m256d va = _mm256_loadu_pd(row + 2 * c);
      __m256d vx = _mm256_loadu_pd(xd + 2 * c);
      acc = cmul_acc(va, vx, acc);
    }
    cplx sum = hsum_complex(acc);
    if (c < cols) sum += a[r * cols + c] * x[c];
    y[r] = sum;
  }
}

void matvec_acc(const cplx* a, const cplx* x, cplx* y, std::size_t rows,
                std::size_t cols, cplx s) {
  const double* xd = reinterpret_cast<const double*>(x);
  for (std::size_t r = 0; r < rows; ++r) {
    const double* row = reinterpret_cast<const double*>(a + r * cols);
    __m256d acc = _mm256_setzero_pd();
    std::size_t c = 0;
    for (; c + 2 <= cols; c += 2) {
      __m256d va = _mm256_loadu_pd(row + 2 * c);
      __m256d vx = _mm256_loadu_pd(xd + 2 * c);
      acc = cmul_acc(va, vx, acc);
    }
    cplx sum = hsum_complex(acc);
    if (c < cols) sum += a[r * cols + c] * x[c];
    y[r] += s * sum;
  }
}

void hadamard(const cplx* d, const cplx* x, cplx* z, std::size_t n) {
  const double* dd = reinterpret_cast<const double*>(d);
  const double* xd = reinterpret_cast<const double*>(x);
  double* zd = reinterpret_cast<double*>(z);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vd = _mm256_loadu_pd(dd + 2 * i);
    __m256d vx = _mm256_loadu_pd(xd + 2 * i);
    _mm256_storeu_pd(zd + 2 * i, cmul(vd, vx));
  }
  if (i < n) z[i] = d[i] * x[i];
}

cplx dotc(const cplx* x, const cplx* y, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_xor_pd(_mm256_loadu_pd(xd + 2 * i), kConjMask);
    __m256d vy = _mm256_loadu_pd(yd + 2 * i);
    acc = cmul_acc(vx, vy, acc);
  }
  cplx sum = hsum_complex(acc);
  if (i < n) sum += std::conj(x[i]) * y[i];
  return sum;
}

double norm2(const cplx* x, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(xd + 2 * i);
    acc = _mm256_fmadd_pd(vx, vx, acc);
  }
  __m128d lo = _mm256_castpd256_pd128(acc);
  __m128d hi = _mm256_extractf128_pd(acc, 1);
  __m128d s = _mm_add_pd(lo, hi);
  s = _mm_hadd_pd(s, s);
  double sum = _mm_cvtsd_f64(s);
  if (i < n) sum += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return sum;
}

void axpy(cplx s, const cplx* x, cplx* y, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  alignas(16) double sb[2] = {s.real(), s.imag()};
  __m256d vs = _mm256_broadcast_pd(reinterpret_cast<const __m128d*>(sb));
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(xd + 2 * i);
    __m256d vy = _mm256_loadu_pd(yd + 2 * i);
    _mm256_storeu_pd(yd + 2 * i, cmul_acc(vx, vs, vy));
  }
  if (i < n) y[i] += s * x[i];
}

void abs2_acc(const cplx* x, double w, double* out, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  std::size_t i = 0;
  alignas(32) double buf[4];
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(xd + 2 * i);
    __m256d t = _mm256_mul_pd(vx, vx);
    __m256d h = _mm256_hadd_pd(t, t); // (p0, p0, p1, p1)
    _mm256_store_pd(buf, h);
    out[i] += w * buf[0];
    out[i + 1] += w * buf[2];
  }
  if (i < n)
    out[i] += w * (x[i].real() * x[i].real() + x[i].imag() * x[i].imag());
}

const Backend backend = {matvec, matvec_acc, hadamard, dotc, norm2, axpy,
                         abs2_acc, "avx2"};

} // namespace rotsim::kernels::avx2
