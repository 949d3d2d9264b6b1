#pragma once

#include <string>
#include <vector>

#include "hamest/complex_matrix.hpp"
#include "hamest/linalg.hpp"

namespace hamest {

/// Thrown when an exact computation is refused because it would blow up
/// combinatorially; the message names the documented fallback.
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Product-formula order: 1 or any even integer.
struct FormulaOrder {
  int p = 2;

  static FormulaOrder of(int p);
  bool operator==(const FormulaOrder&) const = default;
};

/// One exponential factor of an expanded product formula:
/// exp(i * coeff * t * H_term).
struct Stage {
  std::size_t term;
  double coeff;
};

/// Flat stage list for the order-p formula on m terms, adjacent same-term
/// factors merged. Sizes: m for p=1, 2m-1 for p=2, 2*5^(p/2-1)*(m-1)+1 above.
std::vector<Stage> suzuki_stages(FormulaOrder order, std::size_t m);
std::size_t suzuki_stage_count(FormulaOrder order, std::size_t m);

/// u_k = (4 - 4^(1/(2k-1)))^(-1), the recursion coefficient of the order-2k
/// symmetric formula.
double suzuki_u(int k);

/// Hermitian terms H_gamma with sum of operator norms <= 1. Term
/// eigendecompositions are precomputed so stage exponentials are exact for
/// any complex time.
class DecomposedHamiltonian {
 public:
  DecomposedHamiltonian(std::vector<ComplexMatrix> terms,
                        std::string label = "");

  std::size_t term_count() const { return terms_.size(); }
  std::size_t dim() const { return terms_.front().dim(); }
  const std::string& label() const { return label_; }
  const std::vector<ComplexMatrix>& terms() const { return terms_; }
  const ComplexMatrix& term(std::size_t g) const { return terms_[g]; }
  double term_norm(std::size_t g) const { return term_norms_[g]; }
  double norm_sum() const { return norm_sum_; }
  const ComplexMatrix& total() const { return total_; }
  const HermitianEigen& term_eigen(std::size_t g) const {
    return term_eigs_[g];
  }

 private:
  std::vector<ComplexMatrix> terms_;
  std::string label_;
  std::vector<double> term_norms_;
  std::vector<HermitianEigen> term_eigs_;
  ComplexMatrix total_;
  double norm_sum_ = 0.0;
};

/// S_p(t): ordered product of stage exponentials. Unitary for real t.
/// Requires |t| <= pi (single-valuedness of the effective generator).
ComplexMatrix suzuki_formula(const DecomposedHamiltonian& h,
                             FormulaOrder order, cplx t);

struct EffectiveHamiltonianResult {
  ComplexMatrix h_tilde;
  cplx tau;
  double defect_norm;  // ||h_tilde - sum_g H_g||
};

/// H~(tau) = log(S_p(tau)) / (i tau), with the tau = 0 limit handled
/// explicitly. Real tau goes through the unitary principal log; complex tau
/// through the general one.
EffectiveHamiltonianResult effective_hamiltonian(const DecomposedHamiltonian& h,
                                                 FormulaOrder order, cplx tau);

/// Nested-commutator quantity: over every ordering of the terms (first entry
/// taken as the seed B, the rest as A_1..A_s applied innermost-first) and
/// every composition q_1+...+q_s = p with q_i >= 0, accumulates
/// multinomial(p; q) * || ad_{A_s}^{q_s} ... ad_{A_1}^{q_1} (B) ||.
/// Guarded to term_count <= 6 and p <= 4; beyond that a CapabilityError
/// points at alpha_fallback_bound.
double alpha_commutator(const DecomposedHamiltonian& h, FormulaOrder order);

/// Loose bound 2^p * (sum_g ||H_g||)^(p+1) * m, usable whenever the exact
/// enumeration is refused.
double alpha_fallback_bound(const DecomposedHamiltonian& h, int p);

}  // namespace hamest
