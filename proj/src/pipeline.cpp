#include "hamest/pipeline.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace hamest {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr std::int64_t kPowerEigThreshold = 64;
constexpr int kAdaptiveNodeCap = 64;

double ln_factorial(int k) {
  double acc = 0.0;
  for (int i = 2; i <= k; ++i) acc += std::log(static_cast<double>(i));
  return acc;
}

// Applies S^w (or its adjoint powers for w < 0) to a vector. Small powers go
// by repeated multiplication, large ones through one eigendecomposition.
class StagePower {
 public:
  StagePower(const DecomposedHamiltonian& h, FormulaOrder order, double tau,
             bool want_eigen)
      : s_(suzuki_formula(h, order, cplx{tau, 0.0})) {
    if (want_eigen) eigen_ = eig_unitary(s_);
    else s_adj_ = s_.adjoint();
  }

  void apply(std::int64_t w, std::vector<cplx>& v) const {
    if (w == 0) return;
    if (eigen_.has_value()) {
      const ComplexMatrix& qmat = eigen_->eigenvectors;
      const std::size_t d = qmat.dim();
      std::vector<cplx> coeffs(d);
      for (std::size_t k = 0; k < d; ++k) {
        cplx acc{0.0, 0.0};
        for (std::size_t i = 0; i < d; ++i)
          acc += std::conj(qmat(i, k)) * v[i];
        const double theta = std::atan2(eigen_->eigenvalues[k].imag(),
                                        eigen_->eigenvalues[k].real());
        const double phi = theta * static_cast<double>(w);
        acc *= cplx{std::cos(phi), std::sin(phi)};
        coeffs[k] = acc;
      }
      for (std::size_t i = 0; i < d; ++i) {
        cplx acc{0.0, 0.0};
        for (std::size_t k = 0; k < d; ++k) acc += qmat(i, k) * coeffs[k];
        v[i] = acc;
      }
      return;
    }
    const ComplexMatrix& op = (w > 0) ? s_ : s_adj_;
    const std::int64_t reps = std::llabs(w);
    for (std::int64_t r = 0; r < reps; ++r) v = mat_vec(op, v);
  }

 private:
  ComplexMatrix s_;
  ComplexMatrix s_adj_;
  std::optional<UnitaryEigen> eigen_;
};

// All per-node machinery for one Chebyshev node: the formula unitaries at
// s*t_j and the power applicator per stage.
class NodeEvaluator {
 public:
  NodeEvaluator(const EvolutionProblem& problem, const ParameterChoice& params,
                double s_node, std::int64_t max_abs_power) {
    stages_.reserve(problem.stage_count());
    for (std::size_t j = 0; j < problem.stage_count(); ++j) {
      const double tau = s_node * params.t_js[j];
      stages_.emplace_back(problem.stage(j).h, params.order, tau,
                           max_abs_power > kPowerEigThreshold);
    }
    problem_ = &problem;
  }

  cplx amplitude(std::int64_t power) const {
    std::vector<cplx> v(problem_->psi2().entries().begin(),
                        problem_->psi2().entries().end());
    for (std::size_t j = problem_->stage_count(); j-- > 0;) {
      stages_[j].apply(power, v);
      v = mat_vec(problem_->stage(j).v, v);
    }
    return inner_product(problem_->psi1(), v);
  }

 private:
  const EvolutionProblem* problem_ = nullptr;
  std::vector<StagePower> stages_;
};

std::uint64_t stage_application_sum(const EvolutionProblem& problem,
                                    FormulaOrder order) {
  std::uint64_t acc = 0;
  for (const EvolutionStage& st : problem.stages())
    acc += suzuki_stage_count(order, st.h.term_count());
  return acc;
}

int nearest_admissible_order(double p_real) {
  static constexpr int candidates[] = {1, 2, 4, 6, 8};
  int best = 1;
  double best_gap = std::abs(p_real - 1.0);
  for (int c : candidates) {
    const double gap = std::abs(p_real - c);
    if (gap < best_gap - 1e-12) {
      best = c;
      best_gap = gap;
    }
  }
  return best;
}

}  // namespace

EvolutionProblem::EvolutionProblem(std::vector<EvolutionStage> stages,
                                   StateVector psi1, StateVector psi2)
    : stages_(std::move(stages)),
      psi1_(std::move(psi1)),
      psi2_(std::move(psi2)) {
  if (stages_.empty())
    throw std::invalid_argument("EvolutionProblem: no stages");
  const std::size_t d = psi1_.dim();
  if (psi2_.dim() != d)
    throw std::invalid_argument("EvolutionProblem: state dimension mismatch");
  for (const EvolutionStage& st : stages_) {
    if (st.v.dim() != d || st.h.dim() != d)
      throw std::invalid_argument("EvolutionProblem: stage dimension mismatch");
    if (!st.v.is_unitary(1e-10))
      throw std::invalid_argument(
          "EvolutionProblem: V_j not unitary within 1e-10");
    if (!(st.t_evolution >= 0.0) || !std::isfinite(st.t_evolution))
      throw std::invalid_argument("EvolutionProblem: invalid T_j");
  }
}

double EvolutionProblem::t_max() const {
  double m = 0.0;
  for (const EvolutionStage& st : stages_) m = std::max(m, st.t_evolution);
  return m;
}

double EvolutionProblem::t_sum() const {
  double s = 0.0;
  for (const EvolutionStage& st : stages_) s += st.t_evolution;
  return s;
}

ParameterChoice choose_parameters(const EvolutionProblem& problem, double eps,
                                  const EstimateOptions& options) {
  if (!(eps > 0.0) || !(eps < 1.0))
    throw std::invalid_argument("choose_parameters: eps must be in (0,1)");

  ParameterChoice pc;
  pc.eps = eps;
  pc.eps_cheb = eps / 2.0;
  pc.eps_sinc = eps / 2.0;
  pc.r_disc = options.r_disc;
  pc.t_max = problem.t_max();

  const double m_stages = static_cast<double>(problem.stage_count());
  const double log_inv_eps = std::log(1.0 / eps);

  if (options.override_p.has_value()) {
    pc.order = FormulaOrder::of(*options.override_p);
  } else if (m_stages * pc.t_max <= log_inv_eps || pc.t_max <= 0.0) {
    pc.order = FormulaOrder{1};
  } else {
    const double p_real =
        std::sqrt(std::log(m_stages * pc.t_max / log_inv_eps) / std::log(5.0));
    pc.order = FormulaOrder{nearest_admissible_order(p_real)};
  }

  pc.alphas.reserve(problem.stage_count());
  for (const EvolutionStage& st : problem.stages()) {
    double a;
    if (st.h.term_count() <= 6 && pc.order.p <= 4) {
      a = alpha_commutator(st.h, pc.order);
    } else {
      a = alpha_fallback_bound(st.h, pc.order.p);
      pc.alpha_fallback = true;
    }
    pc.alphas.push_back(a);
    pc.alpha_max = std::max(pc.alpha_max, a);
  }

  // hard constraint sum|t_j| <= pi/2 (strictest of the spectral conditions)
  const std::int64_t g_constraint = static_cast<std::int64_t>(
      std::max(1.0, std::ceil(2.0 * problem.t_sum() / kPi)));

  std::int64_t g_formula = 0;
  if (pc.alpha_max > 0.0 && pc.order.p >= 2) {
    const int p = pc.order.p;
    const double log_arg =
        std::log(static_cast<double>(p - 1)) + std::log(m_stages) +
        std::log(pc.alpha_max) + (p + 1) * std::log(std::max(pc.t_max, 1e-300)) -
        ln_factorial(p + 1) - std::log(std::log(1.0 / pc.eps_cheb));
    g_formula = static_cast<std::int64_t>(
        std::ceil(options.r_disc * std::exp(log_arg / p)));
  } else {
    pc.g_from_constraint = true;
  }

  if (options.override_g.has_value()) {
    pc.g = *options.override_g;
    if (pc.g < 1)
      throw std::invalid_argument("choose_parameters: g override must be >= 1");
    if (problem.t_sum() / static_cast<double>(pc.g) > kPi / 2.0 + 1e-12)
      throw std::invalid_argument(
          "choose_parameters: g override violates sum|t_j| <= pi/2");
  } else {
    pc.g = std::max<std::int64_t>({1, g_constraint, g_formula});
    if (g_formula <= g_constraint) pc.g_from_constraint = true;
  }

  pc.t_js.reserve(problem.stage_count());
  for (const EvolutionStage& st : problem.stages())
    pc.t_js.push_back(st.t_evolution / static_cast<double>(pc.g));

  if (options.override_q.has_value()) {
    pc.q = *options.override_q;
    if (pc.q < 1)
      throw std::invalid_argument("choose_parameters: q override must be >= 1");
  } else {
    const QChoice qc = choose_q(pc.eps_sinc);
    pc.q = qc.q;
    pc.q_bound_valid = qc.bound_valid;
  }

  const NodeBudget budget = choose_n(pc.eps_cheb, static_cast<double>(pc.g),
                                     pc.order, pc.alphas, pc.t_js, pc.r_disc);
  pc.rho = budget.rho;
  if (options.override_n.has_value()) {
    pc.n = *options.override_n;
    if (pc.n < 2 || pc.n % 2 != 0)
      throw std::invalid_argument(
          "choose_parameters: n override must be even and >= 2");
    pc.predicted_cheb_error = 0.0;
  } else {
    pc.n = budget.n;
    pc.predicted_cheb_error = budget.predicted_error;
  }
  return pc;
}

cplx exact_amplitude(const EvolutionProblem& problem) {
  std::vector<cplx> v(problem.psi2().entries().begin(),
                      problem.psi2().entries().end());
  const std::size_t d = problem.dim();
  for (std::size_t j = problem.stage_count(); j-- > 0;) {
    const EvolutionStage& st = problem.stage(j);
    const HermitianEigen eig = eig_hermitian(st.h.total());
    std::vector<cplx> coeffs(d);
    for (std::size_t k = 0; k < d; ++k) {
      cplx acc{0.0, 0.0};
      for (std::size_t i = 0; i < d; ++i)
        acc += std::conj(eig.eigenvectors(i, k)) * v[i];
      const double phi = st.t_evolution * eig.eigenvalues[k];
      coeffs[k] = acc * cplx{std::cos(phi), std::sin(phi)};
    }
    for (std::size_t i = 0; i < d; ++i) {
      cplx acc{0.0, 0.0};
      for (std::size_t k = 0; k < d; ++k)
        acc += eig.eigenvectors(i, k) * coeffs[k];
      v[i] = acc;
    }
    v = mat_vec(st.v, v);
  }
  return inner_product(problem.psi1(), v);
}

namespace {

struct NodeGeometry {
  double s = 0.0;
  std::int64_t m = 0;
  double r = 0.0;
};

NodeGeometry node_geometry(const ParameterChoice& params, double s_node) {
  const double gos = static_cast<double>(params.g) / s_node;
  const double fl = std::floor(gos);
  return {s_node, static_cast<std::int64_t>(fl), gos - fl};
}

cplx evaluate_at_n(const EvolutionProblem& problem,
                   const ParameterChoice& params, int n,
                   std::uint64_t* ledger) {
  const ChebPlan cheb = ChebPlan::build(n);
  const std::uint64_t stage_apps =
      stage_application_sum(problem, params.order);
  std::vector<cplx> node_values(n);
  for (int k = 0; k < n; ++k) {
    const double s = cheb.nodes[k];
    const double gos = static_cast<double>(params.g) / s;
    const SincPlan plan = build_sinc_plan(params.q, gos);
    const std::int64_t max_abs_power =
        std::max(std::llabs(plan.m - params.q), std::llabs(plan.m + params.q));
    const NodeEvaluator eval(problem, params, s, max_abs_power);
    AmplitudeSeries series;
    series.base_power = plan.m;
    series.samples.resize(2 * params.q + 1);
    for (int o = -params.q; o <= params.q; ++o) {
      series.samples[o + params.q] = eval.amplitude(plan.m + o);
      if (ledger != nullptr)
        *ledger += stage_apps *
                   static_cast<std::uint64_t>(std::llabs(plan.m + o));
    }
    node_values[k] = sinc_estimate(series, plan);
  }
  return extrapolate_to_zero(node_values, cheb);
}

}  // namespace

cplx sample_amplitude(const EvolutionProblem& problem,
                      const ParameterChoice& params, int node_index, int offset,
                      std::uint64_t* ledger) {
  if (node_index < 0 || node_index >= params.n)
    throw std::invalid_argument("sample_amplitude: node index out of range");
  if (offset < -params.q || offset > params.q)
    throw std::invalid_argument("sample_amplitude: offset outside [-q, q]");
  const std::vector<double> nodes = cheb_nodes(params.n);
  const NodeGeometry geo = node_geometry(params, nodes[node_index]);
  const std::int64_t power = geo.m + offset;
  const NodeEvaluator eval(problem, params, geo.s, std::llabs(power));
  if (ledger != nullptr)
    *ledger += stage_application_sum(problem, params.order) *
               static_cast<std::uint64_t>(std::llabs(power));
  return eval.amplitude(power);
}

std::uint64_t predicted_query_count(const EvolutionProblem& problem,
                                    const ParameterChoice& params, int n) {
  const std::vector<double> nodes = cheb_nodes(n);
  const std::uint64_t stage_apps =
      stage_application_sum(problem, params.order);
  std::uint64_t total = 0;
  for (double s : nodes) {
    const NodeGeometry geo = node_geometry(params, s);
    for (int o = -params.q; o <= params.q; ++o)
      total += stage_apps * static_cast<std::uint64_t>(std::llabs(geo.m + o));
  }
  return total;
}

std::uint64_t predicted_max_depth(const EvolutionProblem& problem,
                                  const ParameterChoice& params, int n) {
  const std::vector<double> nodes = cheb_nodes(n);
  const std::uint64_t stage_apps =
      stage_application_sum(problem, params.order);
  std::uint64_t depth = 0;
  for (double s : nodes) {
    const NodeGeometry geo = node_geometry(params, s);
    depth = std::max(depth, stage_apps * static_cast<std::uint64_t>(
                                             std::llabs(geo.m) + params.q));
  }
  return depth;
}

EstimateReport full_estimate(const EvolutionProblem& problem, double eps,
                             const EstimateOptions& options) {
  EstimateReport report;
  report.eps = eps;
  report.adaptive = options.adaptive;
  report.parameters = choose_parameters(problem, eps, options);
  report.sinc_error_bound = sinc_error_bound_from_q(report.parameters.q);

  std::uint64_t ledger = 0;
  const ParameterChoice& pc = report.parameters;

  if (!options.adaptive) {
    report.value = evaluate_at_n(problem, pc, pc.n, &ledger);
    report.n_final = pc.n;
    report.converged = true;
  } else {
    int n_cur = std::min(pc.n, kAdaptiveNodeCap);
    if (n_cur >= kAdaptiveNodeCap) n_cur = kAdaptiveNodeCap / 2;
    cplx prev = evaluate_at_n(problem, pc, n_cur, &ledger);
    report.converged = false;
    report.value = prev;
    report.n_final = n_cur;
    while (n_cur < kAdaptiveNodeCap) {
      const int n_next = std::min(2 * n_cur, kAdaptiveNodeCap);
      const cplx next = evaluate_at_n(problem, pc, n_next, &ledger);
      report.value = next;
      report.n_final = n_next;
      if (std::abs(next - prev) < eps / 4.0) {
        report.converged = true;
        break;
      }
      prev = next;
      n_cur = n_next;
    }
  }

  report.query_count = ledger;
  report.max_depth = predicted_max_depth(problem, pc, report.n_final);
  if (options.compute_exact && problem.dim() <= options.exact_dim_cap)
    report.exact_value = exact_amplitude(problem);
  return report;
}

NoiseStudy noise_study(const EvolutionProblem& problem,
                       const ParameterChoice& params, double sigma_noise,
                       std::size_t trials, std::uint64_t seed) {
  if (trials < 100)
    throw std::invalid_argument("noise_study: needs at least 100 trials");
  if (!(sigma_noise >= 0.0))
    throw std::invalid_argument("noise_study: negative noise level");

  const ChebPlan cheb = ChebPlan::build(params.n);
  std::vector<SincPlan> plans;
  std::vector<AmplitudeSeries> clean;
  plans.reserve(params.n);
  clean.reserve(params.n);
  for (int k = 0; k < params.n; ++k) {
    const double s = cheb.nodes[k];
    const double gos = static_cast<double>(params.g) / s;
    SincPlan plan = build_sinc_plan(params.q, gos);
    const std::int64_t max_abs_power =
        std::max(std::llabs(plan.m - params.q), std::llabs(plan.m + params.q));
    const NodeEvaluator eval(problem, params, s, max_abs_power);
    AmplitudeSeries series;
    series.base_power = plan.m;
    series.samples.resize(2 * params.q + 1);
    for (int o = -params.q; o <= params.q; ++o)
      series.samples[o + params.q] = eval.amplitude(plan.m + o);
    plans.push_back(std::move(plan));
    clean.push_back(std::move(series));
  }

  NoiseStudy study;
  study.trials = trials;
  study.sigma_noise = sigma_noise;

  std::vector<cplx> node_values(params.n);
  for (int k = 0; k < params.n; ++k)
    node_values[k] = sinc_estimate(clean[k], plans[k]);
  study.clean_value = extrapolate_to_zero(node_values, cheb);

  double wmin = std::numeric_limits<double>::infinity();
  double d_l1 = 0.0;
  for (int k = 0; k < params.n; ++k) {
    wmin = std::min(wmin, plans[k].window(plans[k].r));
    d_l1 += std::abs(cheb.weights[k]);
  }
  study.w_min = wmin;
  study.weight_l1 = d_l1;
  study.composed_std_bound =
      sigma_noise * (d_l1 / wmin) * std::sqrt(3.0 + 4.0 / (kPi * kPi));
  study.composed_linf_bound =
      uncertainty_bound_linf(params.q, sigma_noise) * d_l1 / wmin;

  std::vector<cplx> estimates(trials);
  AmplitudeSeries noisy;
  noisy.samples.resize(2 * params.q + 1);
  cplx mean_acc{0.0, 0.0};
  for (std::size_t t = 0; t < trials; ++t) {
    std::seed_seq sseq{static_cast<std::uint64_t>(seed),
                       static_cast<std::uint64_t>(t)};
    std::mt19937_64 rng(sseq);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int k = 0; k < params.n; ++k) {
      noisy.base_power = clean[k].base_power;
      for (std::size_t i = 0; i < clean[k].samples.size(); ++i)
        noisy.samples[i] =
            clean[k].samples[i] +
            cplx{sigma_noise * gauss(rng), sigma_noise * gauss(rng)};
      node_values[k] = sinc_estimate(noisy, plans[k]);
    }
    estimates[t] = extrapolate_to_zero(node_values, cheb);
    mean_acc += estimates[t];
  }
  study.mean = mean_acc / static_cast<double>(trials);
  double var_acc = 0.0;
  for (const cplx& e : estimates) var_acc += std::norm(e - study.mean);
  study.variance = trials > 1 ? var_acc / static_cast<double>(trials - 1) : 0.0;
  study.std_dev = std::sqrt(study.variance);
  return study;
}

}  // namespace hamest
