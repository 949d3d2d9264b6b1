#include "hamest/sinc.hpp"

#include <cmath>
#include <stdexcept>

#include "hamest/kernels.hpp"

namespace hamest {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kWindowConstant = 18.026513098524002;  // 4 sqrt(2 pi) + 8
constexpr double kDenomConstant = 5.696560701235362;    // pi e^(1/3 + pi/12)
}  // namespace

double sinc(double x) {
  if (x == std::floor(x)) return x == 0.0 ? 1.0 : 0.0;
  const double px = kPi * x;
  return std::sin(px) / px;
}

QChoice choose_q(double eps_interp) {
  if (!(eps_interp > 0.0) || !std::isfinite(eps_interp))
    throw std::invalid_argument("choose_q: eps_interp must be positive");
  if (eps_interp >= 1.0) return {1, false};

  const double bound = (6.0 / kPi) * std::log(kWindowConstant /
                                              (kDenomConstant * eps_interp));
  int q = static_cast<int>(std::ceil(bound));
  if (q < 1) q = 1;

  // validity condition of the Lambert-W step behind the closed form
  const double w_arg = kPi * kPi * eps_interp * eps_interp /
                       (std::exp(kPi / 2.0) * kWindowConstant * kWindowConstant);
  const bool valid = w_arg <= 1.0 / std::exp(1.0);
  return {q, valid};
}

double sinc_error_bound_from_q(int q) {
  if (q < 0) throw std::invalid_argument("sinc_error_bound_from_q: q >= 0");
  return (kWindowConstant / kDenomConstant) * std::exp(-kPi * q / 6.0);
}

double SincPlan::window(double t) const {
  return std::exp(-t * t / (2.0 * sigma * sigma)) /
         (sigma * std::sqrt(2.0 * kPi));
}

SincPlan build_sinc_plan(int q, double g_over_sk) {
  if (q < 1) throw std::invalid_argument("build_sinc_plan: q must be >= 1");
  if (!std::isfinite(g_over_sk))
    throw std::invalid_argument("build_sinc_plan: non-finite power");

  SincPlan plan;
  plan.q = q;
  plan.sigma = std::sqrt((q + 2) / kPi);
  plan.sigma_f = 1.0 / (4.0 * kPi * plan.sigma);
  const double fl = std::floor(g_over_sk);
  plan.m = static_cast<std::int64_t>(fl);
  plan.r = g_over_sk - fl;

  // weights[n] = sinc(r-n) w(n)/w(r); the window ratio collapses to one
  // exponential so there is a single rounding site and w(0)/w(0) == 1 exactly
  plan.weights.resize(2 * q + 1);
  const double inv2s2 = 1.0 / (2.0 * plan.sigma * plan.sigma);
  for (int n = -q; n <= q; ++n) {
    const double ratio = std::exp((plan.r * plan.r - double(n) * n) * inv2s2);
    plan.weights[n + q] = sinc(plan.r - n) * ratio;
  }
  return plan;
}

cplx sinc_estimate(const AmplitudeSeries& series, const SincPlan& plan) {
  if (series.samples.size() != plan.weights.size())
    throw std::invalid_argument(
        "sinc_estimate: sample count does not match plan window (need 2q+1)");
  if (series.base_power != plan.m)
    throw std::invalid_argument(
        "sinc_estimate: series base power does not match plan.m");
  return kernels::active().weighted_sum(plan.weights.data(),
                                        series.samples.data(),
                                        plan.weights.size());
}

double spectral_error_bound(double sigma) {
  if (!(sigma >= 1.0 / (4.0 * kPi)))
    throw std::domain_error("spectral_error_bound: requires sigma >= 1/(4 pi)");
  return (8.0 / std::sqrt(2.0 * kPi) + 2.0) *
         std::exp(-kPi * kPi * sigma * sigma / 2.0);
}

double truncation_error_bound(int q, double sigma) {
  if (q < 0 || !(sigma > 0.0))
    throw std::invalid_argument("truncation_error_bound: need q >= 0, sigma > 0");
  const double qe = q + 2.0;
  return 2.0 * std::exp(-qe * qe / (2.0 * sigma * sigma));
}

double uncertainty_bound_linf(int q, double eps_estimate) {
  if (q < 1) throw std::invalid_argument("uncertainty_bound_linf: q >= 1");
  if (eps_estimate < 0.0)
    throw std::invalid_argument("uncertainty_bound_linf: negative eps");
  return eps_estimate * (3.0 + (2.0 / kPi) * std::log(2.0 * q));
}

double variance_bound(double max_variance) {
  if (max_variance < 0.0)
    throw std::invalid_argument("variance_bound: negative variance");
  return (3.0 + 4.0 / (kPi * kPi)) * max_variance;
}

}  // namespace hamest
