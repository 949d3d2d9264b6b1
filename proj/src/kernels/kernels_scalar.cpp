#include "hamest/kernels.hpp"

// Reference kernels. Complex products are written out by hand so the SIMD
// variants (same mul/addsub sequence) match these bit-for-bit on finite data.

namespace hamest::kernels {
namespace {

inline cplx cmul(cplx a, cplx b) {
  return {a.real() * b.real() - a.imag() * b.imag(),
          a.real() * b.imag() + a.imag() * b.real()};
}

void matmul_scalar(const cplx* a, const cplx* b, cplx* c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    cplx* crow = c + i * n;
    for (std::size_t j = 0; j < n; ++j) crow[j] = {0.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
      const cplx aik = a[i * n + k];
      const cplx* brow = b + k * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += cmul(aik, brow[j]);
    }
  }
}

void matvec_scalar(const cplx* a, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    cplx acc{0.0, 0.0};
    const cplx* arow = a + i * n;
    for (std::size_t j = 0; j < n; ++j) acc += cmul(arow[j], x[j]);
    y[i] = acc;
  }
}

cplx dotc_scalar(const cplx* x, const cplx* y, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

void axpy_scalar(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += cmul(alpha, x[i]);
}

cplx weighted_sum_scalar(const double* w, const cplx* x, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += w[i] * x[i].real();
    im += w[i] * x[i].imag();
  }
  return {re, im};
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops{"scalar",       matmul_scalar, matvec_scalar,
                       dotc_scalar,    axpy_scalar,   weighted_sum_scalar};
  return ops;
}

}  // namespace hamest::kernels
