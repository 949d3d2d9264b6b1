#include "hamest/trotter.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hamest {

namespace {

constexpr double kPi = 3.14159265358979323846;

void append_merged(std::vector<Stage>& out, const Stage& st) {
  if (!out.empty() && out.back().term == st.term)
    out.back().coeff += st.coeff;
  else
    out.push_back(st);
}

std::vector<Stage> stages_even(int p, std::size_t m) {
  if (p == 2) {
    std::vector<Stage> out;
    out.reserve(2 * m);
    for (std::size_t g = 0; g < m; ++g) append_merged(out, {g, 0.5});
    for (std::size_t g = m; g-- > 0;) append_merged(out, {g, 0.5});
    return out;
  }
  const std::vector<Stage> sub = stages_even(p - 2, m);
  const double u = suzuki_u(p / 2);
  const double scales[5] = {u, u, 1.0 - 4.0 * u, u, u};
  std::vector<Stage> out;
  out.reserve(5 * sub.size());
  for (double sc : scales)
    for (const Stage& st : sub) append_merged(out, {st.term, st.coeff * sc});
  return out;
}

}  // namespace

FormulaOrder FormulaOrder::of(int p) {
  if (p != 1 && (p < 2 || p % 2 != 0))
    throw std::invalid_argument("FormulaOrder: order must be 1 or even, got " +
                                std::to_string(p));
  return FormulaOrder{p};
}

double suzuki_u(int k) {
  if (k < 2) throw std::invalid_argument("suzuki_u: k must be >= 2");
  return 1.0 / (4.0 - std::pow(4.0, 1.0 / (2.0 * k - 1.0)));
}

std::vector<Stage> suzuki_stages(FormulaOrder order, std::size_t m) {
  FormulaOrder::of(order.p);  // validate
  if (m == 0) throw std::invalid_argument("suzuki_stages: no terms");
  if (order.p == 1) {
    std::vector<Stage> out;
    out.reserve(m);
    for (std::size_t g = 0; g < m; ++g) out.push_back({g, 1.0});
    return out;
  }
  return stages_even(order.p, m);
}

std::size_t suzuki_stage_count(FormulaOrder order, std::size_t m) {
  if (order.p == 1) return m;
  if (m == 1) return 1;  // everything merges into one exponential
  std::size_t count = 2 * m - 1;
  for (int p = 4; p <= order.p; p += 2) count = 5 * count - 4;
  return count;
}

DecomposedHamiltonian::DecomposedHamiltonian(std::vector<ComplexMatrix> terms,
                                             std::string label)
    : terms_(std::move(terms)), label_(std::move(label)) {
  if (terms_.empty())
    throw std::invalid_argument("DecomposedHamiltonian: no terms");
  const std::size_t d = terms_.front().dim();
  if (d == 0)
    throw std::invalid_argument("DecomposedHamiltonian: empty term matrix");
  term_norms_.reserve(terms_.size());
  term_eigs_.reserve(terms_.size());
  total_ = ComplexMatrix(d);
  for (const ComplexMatrix& t : terms_) {
    if (t.dim() != d)
      throw std::invalid_argument(
          "DecomposedHamiltonian: term dimension mismatch");
    if (!t.is_finite())
      throw std::invalid_argument("DecomposedHamiltonian: non-finite term");
    if (!t.is_hermitian(kHermitianTol))
      throw std::invalid_argument(
          "DecomposedHamiltonian: term not Hermitian within 1e-10");
    term_eigs_.push_back(eig_hermitian(t));
    const auto& ev = term_eigs_.back().eigenvalues;
    const double nrm =
        std::max(std::abs(ev.front()), std::abs(ev.back()));
    term_norms_.push_back(nrm);
    norm_sum_ += nrm;
    total_ += t;
  }
  if (norm_sum_ > 1.0 + 1e-9)
    throw std::invalid_argument(
        "DecomposedHamiltonian: sum of term norms " +
        std::to_string(norm_sum_) + " exceeds 1 (normalization)");
}

ComplexMatrix suzuki_formula(const DecomposedHamiltonian& h,
                             FormulaOrder order, cplx t) {
  if (std::abs(t) > kPi + 1e-12)
    throw std::domain_error("suzuki_formula: |t| > pi breaks the principal "
                            "branch of the effective generator");
  const std::vector<Stage> stages = suzuki_stages(order, h.term_count());
  const std::size_t d = h.dim();

  ComplexMatrix result;
  bool first = true;
  for (const Stage& st : stages) {
    const HermitianEigen& eig = h.term_eigen(st.term);
    const cplx z = cplx{0.0, 1.0} * (st.coeff * t);
    std::vector<cplx> dexp(d);
    for (std::size_t k = 0; k < d; ++k)
      dexp[k] = std::exp(z * eig.eigenvalues[k]);
    // Q * diag * Q^H
    ComplexMatrix scaled(d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        scaled(i, j) = eig.eigenvectors(i, j) * dexp[j];
    ComplexMatrix factor = scaled * eig.eigenvectors.adjoint();
    if (first) {
      result = std::move(factor);
      first = false;
    } else {
      result = result * factor;
    }
  }
  return result;
}

EffectiveHamiltonianResult effective_hamiltonian(const DecomposedHamiltonian& h,
                                                 FormulaOrder order, cplx tau) {
  if (tau == cplx{0.0, 0.0}) {
    // limiting value: the formula generator converges to the plain sum
    return {h.total(), tau, 0.0};
  }
  const ComplexMatrix s = suzuki_formula(h, order, tau);
  ComplexMatrix logm = (tau.imag() == 0.0) ? matrix_log_principal(s)
                                           : matrix_log_general(s);
  logm *= cplx{1.0, 0.0} / (cplx{0.0, 1.0} * tau);
  const double defect = operator_norm(logm - h.total());
  return {std::move(logm), tau, defect};
}

double alpha_fallback_bound(const DecomposedHamiltonian& h, int p) {
  return std::pow(2.0, p) * std::pow(h.norm_sum(), p + 1) *
         static_cast<double>(h.term_count());
}

double alpha_commutator(const DecomposedHamiltonian& h, FormulaOrder order) {
  const std::size_t m = h.term_count();
  const int p = order.p;
  if (m > 6 || p > 4)
    throw CapabilityError(
        "alpha_commutator: exact enumeration limited to <= 6 terms and order "
        "<= 4; use alpha_fallback_bound (2^p * (sum ||H||)^(p+1) * m)");
  if (m == 1) return 0.0;

  const std::size_t s = m - 1;
  std::vector<double> fact(p + 2, 1.0);
  for (int k = 1; k <= p + 1; ++k) fact[k] = fact[k - 1] * k;

  // compositions of p into s nonnegative parts
  std::vector<std::vector<int>> comps;
  std::vector<int> cur(s, 0);
  auto rec = [&](auto&& self, std::size_t idx, int left) -> void {
    if (idx + 1 == s) {
      cur[idx] = left;
      comps.push_back(cur);
      return;
    }
    for (int take = 0; take <= left; ++take) {
      cur[idx] = take;
      self(self, idx + 1, left - take);
    }
  };
  rec(rec, 0, p);

  double alpha = 0.0;
  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    for (const std::vector<int>& q : comps) {
      double weight = fact[p];
      for (int qi : q) weight /= fact[qi];

      ComplexMatrix x = h.term(perm[0]);
      bool vanished = false;
      for (std::size_t i = 0; i < s && !vanished; ++i) {
        const ComplexMatrix& a = h.term(perm[i + 1]);
        for (int rep = 0; rep < q[i]; ++rep) {
          x = a * x - x * a;
          if (x.max_abs() < 1e-15) {
            vanished = true;
            break;
          }
        }
      }
      if (!vanished) alpha += weight * operator_norm(x);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return alpha;
}

}  // namespace hamest
