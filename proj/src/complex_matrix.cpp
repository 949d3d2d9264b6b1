#include "hamest/complex_matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hamest/kernels.hpp"

namespace hamest {

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw std::invalid_argument("ComplexMatrix: dim must be >= 1");
  if (dim > kMaxMatrixDim)
    throw std::invalid_argument("ComplexMatrix: dim " + std::to_string(dim) +
                                " exceeds the desk-scale cap " +
                                std::to_string(kMaxMatrixDim));
  data_.assign(dim * dim, cplx{0.0, 0.0});
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> entries) {
  ComplexMatrix m(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      m(j, i) = std::conj((*this)(i, j));
  return m;
}

bool ComplexMatrix::is_finite() const {
  for (const cplx& z : data_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

bool ComplexMatrix::is_hermitian(double tol) const {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i; j < dim_; ++j)
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol)
        return false;
  return true;
}

bool ComplexMatrix::is_anti_hermitian(double tol) const {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i; j < dim_; ++j)
      if (std::abs((*this)(i, j) + std::conj((*this)(j, i))) > tol)
        return false;
  return true;
}

bool ComplexMatrix::is_unitary(double tol) const {
  if (dim_ == 0) return false;
  // direct entry check of U^H U = I, row by row
  const ComplexMatrix& u = *this;
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i; j < dim_; ++j) {
      cplx acc{0.0, 0.0};
      for (std::size_t k = 0; k < dim_; ++k)
        acc += std::conj(u(k, i)) * u(k, j);
      if (i == j) acc -= 1.0;
      if (std::abs(acc) > tol) return false;
    }
  }
  return true;
}

double ComplexMatrix::frobenius_norm() const {
  double acc = 0.0;
  for (const cplx& z : data_) acc += std::norm(z);
  return std::sqrt(acc);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const cplx& z : data_) m = std::max(m, std::abs(z));
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  if (dim_ != rhs.dim_)
    throw std::invalid_argument("ComplexMatrix: dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  if (dim_ != rhs.dim_)
    throw std::invalid_argument("ComplexMatrix: dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx scale) {
  for (cplx& z : data_) z *= scale;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim_ != b.dim_)
    throw std::invalid_argument("ComplexMatrix: dimension mismatch");
  if (a.dim_ == 0) throw std::invalid_argument("ComplexMatrix: empty operand");
  ComplexMatrix c(a.dim_);
  kernels::active().matmul(a.data(), b.data(), c.data(), a.dim_);
  return c;
}

std::vector<cplx> mat_vec(const ComplexMatrix& a, std::span<const cplx> x) {
  if (a.dim() != x.size())
    throw std::invalid_argument("mat_vec: dimension mismatch");
  std::vector<cplx> y(x.size());
  kernels::active().matvec(a.data(), x.data(), y.data(), a.dim());
  return y;
}

double vector_norm(std::span<const cplx> v) {
  double acc = 0.0;
  for (const cplx& z : v) acc += std::norm(z);
  return std::sqrt(acc);
}

StateVector::StateVector(std::vector<cplx> amplitudes)
    : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.empty())
    throw std::invalid_argument("StateVector: empty amplitude list");
  const double n = vector_norm(amplitudes_);
  if (std::abs(n - 1.0) > 1e-12)
    throw std::invalid_argument(
        "StateVector: amplitudes not normalized (|norm-1| = " +
        std::to_string(std::abs(n - 1.0)) + ")");
}

StateVector::StateVector(std::vector<cplx> amplitudes, unchecked_tag)
    : amplitudes_(std::move(amplitudes)) {}

StateVector StateVector::basis_state(std::size_t dim, std::size_t index) {
  if (dim == 0 || index >= dim)
    throw std::invalid_argument("StateVector: basis index out of range");
  std::vector<cplx> amps(dim, cplx{0.0, 0.0});
  amps[index] = 1.0;
  return StateVector(std::move(amps), unchecked_tag{});
}

StateVector StateVector::normalized(std::vector<cplx> amplitudes) {
  const double n = vector_norm(amplitudes);
  if (!(n > 0.0) || !std::isfinite(n))
    throw std::invalid_argument("StateVector: cannot normalize zero vector");
  for (cplx& z : amplitudes) z /= n;
  return StateVector(std::move(amplitudes), unchecked_tag{});
}

cplx inner_product(const StateVector& bra, const StateVector& ket) {
  return inner_product(bra, ket.entries());
}

cplx inner_product(const StateVector& bra, std::span<const cplx> ket) {
  if (bra.dim() != ket.size())
    throw std::invalid_argument("inner_product: dimension mismatch");
  return kernels::active().dotc(bra.entries().data(), ket.data(), ket.size());
}

}  // namespace hamest
