#pragma once

#include <random>
#include <vector>

#include "hamest/complex_matrix.hpp"
#include "hamest/linalg.hpp"
#include "hamest/trotter.hpp"

namespace hamest::testing {

inline std::mt19937_64 rng_for(std::uint64_t seed) {
  return std::mt19937_64(seed);
}

inline ComplexMatrix random_matrix(std::size_t dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = cplx{u(rng), u(rng)};
  return m;
}

inline ComplexMatrix random_hermitian(std::size_t dim, std::mt19937_64& rng) {
  const ComplexMatrix a = random_matrix(dim, rng);
  ComplexMatrix h(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
  return h;
}

// Hermitian with operator norm scaled to exactly `norm`.
inline ComplexMatrix random_hermitian_scaled(std::size_t dim, double norm,
                                             std::mt19937_64& rng) {
  ComplexMatrix h = random_hermitian(dim, rng);
  h *= cplx{norm / operator_norm(h), 0.0};
  return h;
}

inline ComplexMatrix random_unitary(std::size_t dim, std::mt19937_64& rng,
                                    double scale = 1.5) {
  ComplexMatrix h = random_hermitian_scaled(dim, scale, rng);
  h *= cplx{0.0, 1.0};
  return matrix_exp(h);
}

// Two-term decomposition with norm budget split evenly; generically
// non-commuting.
inline DecomposedHamiltonian random_two_term(std::size_t dim,
                                             std::mt19937_64& rng,
                                             double budget = 1.0) {
  std::vector<ComplexMatrix> terms;
  terms.push_back(random_hermitian_scaled(dim, budget / 2.0, rng));
  terms.push_back(random_hermitian_scaled(dim, budget / 2.0, rng));
  return DecomposedHamiltonian(std::move(terms));
}

inline ComplexMatrix pauli_x() {
  ComplexMatrix m(2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

inline ComplexMatrix pauli_y() {
  ComplexMatrix m(2);
  m(0, 1) = cplx{0.0, -1.0};
  m(1, 0) = cplx{0.0, 1.0};
  return m;
}

inline ComplexMatrix pauli_z() {
  ComplexMatrix m(2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

inline double matrix_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).max_abs();
}

}  // namespace hamest::testing
