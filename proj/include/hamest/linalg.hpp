#pragma once

#include <stdexcept>
#include <vector>

#include "hamest/complex_matrix.hpp"

namespace hamest {

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kUnitaryTol = 1e-8;
inline constexpr double kBranchCutGuard = 1e-6;  // radians away from -1

/// Thrown when a principal logarithm would hit the branch cut: some
/// eigenvalue phase lies within kBranchCutGuard of +-pi.
class BranchCutError : public std::domain_error {
 public:
  explicit BranchCutError(double phase_radians)
      : std::domain_error("matrix_log_principal: eigenvalue phase " +
                          std::to_string(phase_radians) +
                          " rad is within the branch-cut guard of +-pi"),
        phase(phase_radians) {}
  double phase;
};

struct HermitianEigen {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // columns, unitary
};

struct UnitaryEigen {
  std::vector<cplx> eigenvalues;  // unit modulus
  ComplexMatrix eigenvectors;     // columns, unitary
};

/// A = Q diag(lambda) Q^H for Hermitian A (checked within kHermitianTol).
HermitianEigen eig_hermitian(const ComplexMatrix& a);

/// U = Q diag(lambda) Q^H for unitary U. Diagonalizes the commuting Hermitian
/// pair (U+U^H)/2 and (U-U^H)/(2i); clusters of the first are resolved by the
/// second, so near-coincident cosines of distinct phases stay accurate.
UnitaryEigen eig_unitary(const ComplexMatrix& u, double tol = kUnitaryTol);

/// exp(A). Hermitian and anti-Hermitian generators go through the exact
/// eigendecomposition route; anything else uses scaling-and-squaring with a
/// Taylor core.
ComplexMatrix matrix_exp(const ComplexMatrix& a);

/// Principal logarithm of a unitary: eigenphases mapped to (-pi, pi).
/// Throws BranchCutError when a phase falls inside the guard band.
ComplexMatrix matrix_log_principal(const ComplexMatrix& u);

/// Principal logarithm of a general invertible matrix with no eigenvalue on
/// the closed negative real axis, via inverse scaling-and-squaring (repeated
/// Denman-Beavers square roots, then a log(I+X) series). Used for
/// complex-time product formulas, where the input is not unitary.
ComplexMatrix matrix_log_general(const ComplexMatrix& a);

/// Largest singular value (spectral norm).
double operator_norm(const ComplexMatrix& a);

/// Solves a x = b by LU with partial pivoting (dense, desk scale).
std::vector<cplx> solve_linear(const ComplexMatrix& a,
                               std::span<const cplx> b);
ComplexMatrix matrix_inverse(const ComplexMatrix& a);

}  // namespace hamest
