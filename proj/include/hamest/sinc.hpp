#pragma once

#include <cstdint>
#include <vector>

#include "hamest/complex_matrix.hpp"

namespace hamest {

/// sin(pi x)/(pi x) with exact integer handling: integer arguments give
/// exactly 0 (or 1 at x = 0), so degenerate weight vectors come out exact.
double sinc(double x);

struct QChoice {
  int q;
  bool bound_valid;  // false: the closed-form bound's validity condition or
                     // the eps < 1 assumption failed; q is still usable
};

/// Smallest q with q >= (6/pi) * log((4 sqrt(2 pi) + 8)/(pi e^(1/3+pi/12) eps)),
/// clamped to >= 1.
QChoice choose_q(double eps_interp);

/// The closed form of choose_q solved for eps: the interpolation error
/// guaranteed by a window half-width q.
double sinc_error_bound_from_q(int q);

/// Gaussian-windowed cardinal-sine interpolation plan for one fractional
/// power g_over_sk = m + r. Stored weights are already divided through by the
/// window value at r (folded into a single exponent), so the estimate is a
/// plain weighted sum and an integer query (r = 0) degenerates to exactly one
/// unit weight.
struct SincPlan {
  int q = 0;
  double sigma = 0.0;    // sqrt((q+2)/pi)
  double sigma_f = 0.0;  // 1/(4 pi sigma)
  std::int64_t m = 0;    // floor(g_over_sk)
  double r = 0.0;        // frac(g_over_sk), in [0,1)
  std::vector<double> weights;  // index n+q holds sinc(r-n) w(n)/w(r)

  double window(double t) const;  // w(t), the normalized Gaussian
};

SincPlan build_sinc_plan(int q, double g_over_sk);

/// Amplitude samples x(n) at powers base_power + n, n = -q..q.
struct AmplitudeSeries {
  std::int64_t base_power = 0;
  std::vector<cplx> samples;
  std::vector<double> variances;  // optional, empty or matching samples
};

/// Sum over n of plan weight times sample; exact pass-through at r = 0.
cplx sinc_estimate(const AmplitudeSeries& series, const SincPlan& plan);

/// (8/sqrt(2 pi) + 2) exp(-pi^2 sigma^2 / 2); requires sigma >= 1/(4 pi).
double spectral_error_bound(double sigma);

/// 2 exp(-(q+2)^2 / (2 sigma^2)).
double truncation_error_bound(int q, double sigma);

/// eps * (3 + (2/pi) log(2q)): worst-case propagation of an L-infinity
/// sample-error budget through the truncated sinc kernel.
double uncertainty_bound_linf(int q, double eps_estimate);

/// (3 + 4/pi^2) * max_variance: variance of the interpolant under
/// independent per-sample noise.
double variance_bound(double max_variance);

}  // namespace hamest
