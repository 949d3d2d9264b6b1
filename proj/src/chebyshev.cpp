#include "hamest/chebyshev.hpp"

#include <cmath>
#include <stdexcept>

#include "hamest/kernels.hpp"

namespace hamest {

namespace {
constexpr double kPi = 3.14159265358979323846;

void require_even(int n, const char* who) {
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument(std::string(who) +
                                ": node count must be even and >= 2, got " +
                                std::to_string(n));
}
}  // namespace

std::vector<double> cheb_nodes(int n) {
  require_even(n, "cheb_nodes");
  std::vector<double> s(n);
  for (int k = 1; k <= n; ++k) s[k - 1] = std::cos((2 * k - 1) * kPi / (2 * n));
  return s;
}

std::vector<double> cheb_weights_at_zero(int n) {
  require_even(n, "cheb_weights_at_zero");
  std::vector<double> d(n);
  for (int k = 1; k <= n; ++k) {
    const double sign = ((k + n / 2) % 2 == 0) ? 1.0 : -1.0;
    d[k - 1] = sign * std::tan((2 * k - 1) * kPi / (2 * n)) / n;
  }
  return d;
}

ChebPlan ChebPlan::build(int n) {
  ChebPlan plan;
  plan.n = n;
  plan.nodes = cheb_nodes(n);
  plan.weights = cheb_weights_at_zero(n);
  return plan;
}

cplx extrapolate_to_zero(std::span<const cplx> samples, const ChebPlan& plan) {
  if (samples.size() != plan.weights.size())
    throw std::invalid_argument(
        "extrapolate_to_zero: sample count does not match plan");
  return kernels::active().weighted_sum(plan.weights.data(), samples.data(),
                                        samples.size());
}

double bernstein_error_bound(double c_bound, double rho, int n) {
  if (!(rho > 1.0))
    throw std::domain_error("bernstein_error_bound: requires rho > 1");
  if (c_bound < 0.0)
    throw std::invalid_argument("bernstein_error_bound: negative C");
  return 4.0 * c_bound * std::pow(rho, -n) / (rho - 1.0);
}

NodeBudget choose_n(double eps_cheb, double g, FormulaOrder order,
                    std::span<const double> alphas, std::span<const double> ts,
                    double r_disc) {
  if (!(eps_cheb > 0.0))
    throw std::invalid_argument("choose_n: eps_cheb must be positive");
  if (!(r_disc > 1.0))
    throw std::invalid_argument("choose_n: r_disc must exceed 1");
  if (alphas.size() != ts.size())
    throw std::invalid_argument("choose_n: alphas/ts length mismatch");
  for (double t : ts)
    if (!(t >= 0.0) || t > kPi)
      throw std::invalid_argument("choose_n: each t_j must lie in [0, pi]");

  double fact = 1.0;
  for (int k = 2; k <= order.p + 1; ++k) fact *= k;

  double growth = 0.0;
  for (std::size_t j = 0; j < ts.size(); ++j)
    growth += alphas[j] * ts[j] * std::pow(r_disc * ts[j], order.p);
  const double c_est = std::exp(g * growth / fact);

  const double rho = r_disc + std::sqrt(r_disc * r_disc - 1.0);
  const double half =
      std::log(4.0 * c_est / ((rho - 1.0) * eps_cheb)) / (2.0 * std::log(rho));
  int n = 2 * std::max(1, static_cast<int>(std::ceil(half)));

  NodeBudget budget;
  budget.n = n;
  budget.rho = rho;
  budget.r_disc = r_disc;
  budget.predicted_error = bernstein_error_bound(c_est, rho, n);
  return budget;
}

}  // namespace hamest
