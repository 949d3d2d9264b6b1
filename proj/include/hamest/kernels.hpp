#pragma once

#include <complex>
#include <cstddef>

namespace hamest::kernels {

using cplx = std::complex<double>;

// Dense complex kernels over row-major interleaved (re,im) storage. These are
// the data-parallel inner loops of the library; everything above them goes
// through the dispatch table so scalar and SIMD builds stay interchangeable.
//
// All variants of one entry point accumulate in the same index order up to
// lane-local regrouping, so results agree to a few ulp across backends.
struct Ops {
  const char* name;

  // c = a * b, square n x n
  void (*matmul)(const cplx* a, const cplx* b, cplx* c, std::size_t n);

  // y = a * x, a square n x n, x/y length n (y must not alias x)
  void (*matvec)(const cplx* a, const cplx* x, cplx* y, std::size_t n);

  // sum_i conj(x[i]) * y[i]
  cplx (*dotc)(const cplx* x, const cplx* y, std::size_t n);

  // y[i] += alpha * x[i]
  void (*axpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);

  // sum_i w[i] * x[i], real weights
  cplx (*weighted_sum)(const double* w, const cplx* x, std::size_t n);
};

const Ops& scalar_ops();

// nullptr when the build target or the running CPU lacks AVX2.
const Ops* avx2_ops();

// Backend picked once at first use: HAMEST_KERNELS=scalar|avx2 overrides,
// otherwise the widest supported variant wins.
const Ops& active();

}  // namespace hamest::kernels
