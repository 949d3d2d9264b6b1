// AVX2 kernels. Compiled with -mavx2 on x86-64 only; dispatch.cpp performs the
// runtime CPU check before handing out this table.

#include "hamest/kernels.hpp"

#if defined(HAMEST_BUILD_AVX2) && (defined(__x86_64__) || defined(_M_X64))

#include <immintrin.h>

namespace hamest::kernels {
namespace {

// One register holds two complex doubles as [re0, im0, re1, im1].
// (s + i*t) * (br + i*bi) with the classic mul/permute/addsub sequence:
//   even lanes: s*br - t*bi, odd lanes: s*bi + t*br
inline __m256d cmul_broadcast(__m256d ar, __m256d ai, __m256d b) {
  __m256d t0 = _mm256_mul_pd(ar, b);
  __m256d bswap = _mm256_permute_pd(b, 0x5);
  __m256d t1 = _mm256_mul_pd(ai, bswap);
  return _mm256_addsub_pd(t0, t1);
}

// Lanewise complex product of two packed pairs.
inline __m256d cmul_packed(__m256d a, __m256d b) {
  __m256d bre = _mm256_movedup_pd(b);                 // [br0,br0,br1,br1]
  __m256d bim = _mm256_permute_pd(b, 0xF);            // [bi0,bi0,bi1,bi1]
  __m256d aswap = _mm256_permute_pd(a, 0x5);          // [ai0,ar0,ai1,ar1]
  return _mm256_addsub_pd(_mm256_mul_pd(a, bre), _mm256_mul_pd(aswap, bim));
}

inline cplx reduce_pairs(__m256d acc) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  return {lanes[0] + lanes[2], lanes[1] + lanes[3]};
}

void matmul_avx2(const cplx* a, const cplx* b, cplx* c, std::size_t n) {
  const double* bd = reinterpret_cast<const double*>(b);
  double* cd = reinterpret_cast<double*>(c);
  const std::size_t pairs = n / 2;
  for (std::size_t i = 0; i < n; ++i) {
    double* crow = cd + 2 * i * n;
    for (std::size_t j = 0; j < 2 * n; ++j) crow[j] = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const cplx aik = a[i * n + k];
      const __m256d ar = _mm256_set1_pd(aik.real());
      const __m256d ai = _mm256_set1_pd(aik.imag());
      const double* brow = bd + 2 * k * n;
      std::size_t j = 0;
      for (; j < 2 * pairs; j += 2) {
        __m256d bv = _mm256_loadu_pd(brow + 2 * j);
        __m256d cv = _mm256_loadu_pd(crow + 2 * j);
        cv = _mm256_add_pd(cv, cmul_broadcast(ar, ai, bv));
        _mm256_storeu_pd(crow + 2 * j, cv);
      }
      if (j < n) {  // odd tail column
        const double br = brow[2 * j], bi = brow[2 * j + 1];
        crow[2 * j] += aik.real() * br - aik.imag() * bi;
        crow[2 * j + 1] += aik.real() * bi + aik.imag() * br;
      }
    }
  }
}

void matvec_avx2(const cplx* a, const cplx* x, cplx* y, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  const std::size_t pairs = n / 2;
  for (std::size_t i = 0; i < n; ++i) {
    const double* arow = reinterpret_cast<const double*>(a + i * n);
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j < 2 * pairs; j += 2) {
      __m256d av = _mm256_loadu_pd(arow + 2 * j);
      __m256d xv = _mm256_loadu_pd(xd + 2 * j);
      acc = _mm256_add_pd(acc, cmul_packed(av, xv));
    }
    cplx r = reduce_pairs(acc);
    if (j < n) {
      const cplx aij = a[i * n + j];
      const cplx xj = x[j];
      r += cplx{aij.real() * xj.real() - aij.imag() * xj.imag(),
                aij.real() * xj.imag() + aij.imag() * xj.real()};
    }
    y[i] = r;
  }
}

cplx dotc_avx2(const cplx* x, const cplx* y, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  const __m256d sign = _mm256_set_pd(-1.0, 1.0, -1.0, 1.0);
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  const std::size_t pairs = n / 2;
  std::size_t i = 0;
  for (; i < 2 * pairs; i += 2) {
    __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    acc_re = _mm256_add_pd(acc_re, _mm256_mul_pd(xv, yv));
    __m256d yswap = _mm256_permute_pd(yv, 0x5);
    acc_im =
        _mm256_add_pd(acc_im, _mm256_mul_pd(sign, _mm256_mul_pd(xv, yswap)));
  }
  alignas(32) double lr[4], li[4];
  _mm256_store_pd(lr, acc_re);
  _mm256_store_pd(li, acc_im);
  double re = lr[0] + lr[1] + lr[2] + lr[3];
  double im = li[0] + li[1] + li[2] + li[3];
  for (; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

void axpy_avx2(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  const std::size_t pairs = n / 2;
  std::size_t i = 0;
  for (; i < 2 * pairs; i += 2) {
    __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    yv = _mm256_add_pd(yv, cmul_broadcast(ar, ai, xv));
    _mm256_storeu_pd(yd + 2 * i, yv);
  }
  for (; i < n; ++i) {
    const cplx xi = x[i];
    y[i] += cplx{alpha.real() * xi.real() - alpha.imag() * xi.imag(),
                 alpha.real() * xi.imag() + alpha.imag() * xi.real()};
  }
}

cplx weighted_sum_avx2(const double* w, const cplx* x, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  __m256d acc = _mm256_setzero_pd();
  const std::size_t pairs = n / 2;
  std::size_t i = 0;
  for (; i < 2 * pairs; i += 2) {
    __m256d wv = _mm256_set_pd(w[i + 1], w[i + 1], w[i], w[i]);
    __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(wv, xv));
  }
  cplx r = reduce_pairs(acc);
  for (; i < n; ++i) r += cplx{w[i] * x[i].real(), w[i] * x[i].imag()};
  return r;
}

}  // namespace

const Ops* avx2_ops() {
  static const Ops ops{"avx2",    matmul_avx2, matvec_avx2,
                       dotc_avx2, axpy_avx2,   weighted_sum_avx2};
  return &ops;
}

}  // namespace hamest::kernels

#else

namespace hamest::kernels {
const Ops* avx2_ops() { return nullptr; }
}  // namespace hamest::kernels

#endif
