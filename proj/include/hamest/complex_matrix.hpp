#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace hamest {

using cplx = std::complex<double>;

inline constexpr std::size_t kMaxMatrixDim = 1024;

/// Dense square complex matrix, row-major storage. The universal carrier for
/// operators in this library. Immutable use is the norm: operations return
/// new values instead of mutating shared state.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;  // empty sentinel, dim() == 0
  explicit ComplexMatrix(std::size_t dim);
  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const cplx> entries);

  std::size_t dim() const { return dim_; }
  bool empty() const { return dim_ == 0; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return data_[i * dim_ + j];
  }
  cplx* data() { return data_.data(); }
  const cplx* data() const { return data_.data(); }

  ComplexMatrix adjoint() const;

  bool is_finite() const;
  bool is_hermitian(double tol) const;
  bool is_unitary(double tol) const;
  bool is_anti_hermitian(double tol) const;

  double frobenius_norm() const;
  double max_abs() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(cplx scale);

  friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) {
    lhs += rhs;
    return lhs;
  }
  friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) {
    lhs -= rhs;
    return lhs;
  }
  friend ComplexMatrix operator*(cplx scale, ComplexMatrix m) {
    m *= scale;
    return m;
  }
  friend ComplexMatrix operator*(const ComplexMatrix& a,
                                 const ComplexMatrix& b);

 private:
  std::size_t dim_ = 0;
  std::vector<cplx> data_;
};

/// y = a * x
std::vector<cplx> mat_vec(const ComplexMatrix& a, std::span<const cplx> x);

/// Unit-norm complex amplitude vector. The constructor enforces the L2
/// normalization invariant (within 1e-12); use normalized() to build from
/// arbitrary nonzero amplitudes.
class StateVector {
 public:
  explicit StateVector(std::vector<cplx> amplitudes);
  static StateVector basis_state(std::size_t dim, std::size_t index);
  static StateVector normalized(std::vector<cplx> amplitudes);

  std::size_t dim() const { return amplitudes_.size(); }
  const cplx& operator[](std::size_t i) const { return amplitudes_[i]; }
  std::span<const cplx> entries() const { return amplitudes_; }

 private:
  struct unchecked_tag {};
  StateVector(std::vector<cplx> amplitudes, unchecked_tag);
  std::vector<cplx> amplitudes_;
};

/// <bra|ket>
cplx inner_product(const StateVector& bra, const StateVector& ket);
cplx inner_product(const StateVector& bra, std::span<const cplx> ket);

double vector_norm(std::span<const cplx> v);

}  // namespace hamest
