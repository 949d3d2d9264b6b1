#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hamest/chebyshev.hpp"
#include "hamest/complex_matrix.hpp"
#include "hamest/sinc.hpp"
#include "hamest/trotter.hpp"

namespace hamest {

/// One factor V_j e^(i T_j H_j) of the target product.
struct EvolutionStage {
  ComplexMatrix v;
  DecomposedHamiltonian h;
  double t_evolution;  // T_j > 0 allowed to be 0 for identity factors
};

/// The estimation target <psi1| prod_j V_j e^(i T_j H_j) |psi2>.
class EvolutionProblem {
 public:
  EvolutionProblem(std::vector<EvolutionStage> stages, StateVector psi1,
                   StateVector psi2);

  std::size_t stage_count() const { return stages_.size(); }
  const std::vector<EvolutionStage>& stages() const { return stages_; }
  const EvolutionStage& stage(std::size_t j) const { return stages_[j]; }
  const StateVector& psi1() const { return psi1_; }
  const StateVector& psi2() const { return psi2_; }
  std::size_t dim() const { return psi1_.dim(); }
  double t_max() const;
  double t_sum() const;

 private:
  std::vector<EvolutionStage> stages_;
  StateVector psi1_;
  StateVector psi2_;
};

struct ParameterChoice {
  FormulaOrder order{1};
  std::int64_t g = 1;  // integer time subdivision, t_j = T_j / g
  int n = 2;           // Chebyshev node count (even)
  int q = 1;           // sinc window half-width
  std::vector<double> t_js;
  std::vector<double> alphas;
  double alpha_max = 0.0;
  double t_max = 0.0;
  double eps = 0.0;
  double eps_cheb = 0.0;
  double eps_sinc = 0.0;
  double r_disc = 2.0;
  double rho = 0.0;
  double predicted_cheb_error = 0.0;
  bool g_from_constraint = false;  // optimal-g formula degenerate (alpha = 0
                                   // or p = 1); g set by sum|t_j| <= pi/2
  bool alpha_fallback = false;     // loose alpha bound used for some stage
  bool q_bound_valid = true;
};

struct EstimateOptions {
  bool adaptive = false;
  std::optional<int> override_p;
  std::optional<std::int64_t> override_g;
  std::optional<int> override_n;
  std::optional<int> override_q;
  double r_disc = 2.0;
  bool compute_exact = true;
  std::size_t exact_dim_cap = 256;
};

struct EstimateReport {
  cplx value{0.0, 0.0};
  std::optional<cplx> exact_value;
  double eps = 0.0;
  ParameterChoice parameters;
  std::uint64_t query_count = 0;  // product-formula stage applications,
                                  // summed over everything evaluated
  std::uint64_t max_depth = 0;    // deepest single circuit
  int n_final = 0;                // node count of the reported estimate
  bool adaptive = false;
  bool converged = true;  // false only when the adaptive cap was hit
  double sinc_error_bound = 0.0;  // Theorem-style bound implied by q
};

/// Resolves (p, g, n, q) for a target algorithmic error, splitting the budget
/// evenly between the two interpolation stages. Overrides are validated
/// against the same constraints the automatic choices obey.
ParameterChoice choose_parameters(const EvolutionProblem& problem, double eps,
                                  const EstimateOptions& options = {});

/// Ground truth by exact eigendecomposition of each stage Hamiltonian.
cplx exact_amplitude(const EvolutionProblem& problem);

/// Amplitude <psi1| prod_j V_j S_j^(m_k+o) |psi2> at Chebyshev node
/// node_index (0-based) and window offset o in [-q, q]. Negative powers use
/// the inverse (adjoint) formula unitaries. If ledger is non-null it is
/// incremented by the stage applications this sample would cost.
cplx sample_amplitude(const EvolutionProblem& problem,
                      const ParameterChoice& params, int node_index, int offset,
                      std::uint64_t* ledger = nullptr);

/// The analytic value of the query counter for one full n-node pass:
/// sum_k sum_o sum_j stage_count(p, m_j) * |m_k + o|.
std::uint64_t predicted_query_count(const EvolutionProblem& problem,
                                    const ParameterChoice& params, int n);

/// Deepest single circuit of an n-node pass:
/// max_k sum_j stage_count(p, m_j) * (|m_k| + q).
std::uint64_t predicted_max_depth(const EvolutionProblem& problem,
                                  const ParameterChoice& params, int n);

/// Full double-interpolation estimate: per node, a windowed-sinc fractional
/// query assembled from integer-power amplitudes; across nodes, Chebyshev
/// extrapolation to zero step size. Adaptive mode doubles n (cap 64) until
/// two successive estimates differ by less than eps/4.
EstimateReport full_estimate(const EvolutionProblem& problem, double eps,
                             const EstimateOptions& options = {});

struct NoiseStudy {
  std::size_t trials = 0;
  double sigma_noise = 0.0;
  cplx clean_value{0.0, 0.0};
  cplx mean{0.0, 0.0};
  double variance = 0.0;  // E |X - mean|^2 over trials
  double std_dev = 0.0;
  double composed_std_bound = 0.0;  // sigma * (sum|d_k| / w_min) * sqrt(3+4/pi^2)
  double composed_linf_bound = 0.0;
  double weight_l1 = 0.0;  // sum_k |d_k|
  double w_min = 0.0;      // min_k w(r_k)
};

/// Monte-Carlo study: i.i.d. complex Gaussian noise (each component with
/// variance sigma_noise^2) on every amplitude sample, assembly re-run per
/// trial. Deterministic for a fixed seed; trial streams are seeded from
/// (seed, trial index).
NoiseStudy noise_study(const EvolutionProblem& problem,
                       const ParameterChoice& params, double sigma_noise,
                       std::size_t trials, std::uint64_t seed);

}  // namespace hamest
