#pragma once

#include <span>
#include <vector>

#include "hamest/complex_matrix.hpp"
#include "hamest/trotter.hpp"

namespace hamest {

/// First-kind Chebyshev nodes cos((2k-1) pi / (2n)), k = 1..n. Even n only:
/// the extrapolation weights below need integer (-1)^(k+n/2).
std::vector<double> cheb_nodes(int n);

/// Extrapolation-to-zero weights d_k = (1/n)(-1)^(k+n/2) tan((2k-1) pi/(2n)).
/// They reproduce P(0) exactly from node samples of any polynomial P of
/// degree < n.
std::vector<double> cheb_weights_at_zero(int n);

struct ChebPlan {
  int n = 0;
  std::vector<double> nodes;
  std::vector<double> weights;

  static ChebPlan build(int n);
};

/// sum_k d_k f(s_k): value of the degree-(n-1) Chebyshev interpolant at 0.
cplx extrapolate_to_zero(std::span<const cplx> samples, const ChebPlan& plan);

/// 4 C rho^(-n) / (rho - 1): interpolation error of an analytic function
/// bounded by C on the Bernstein ellipse with parameter rho > 1.
double bernstein_error_bound(double c_bound, double rho, int n);

struct NodeBudget {
  int n = 0;
  double predicted_error = 0.0;
  double rho = 0.0;     // r_disc + sqrt(r_disc^2 - 1)
  double r_disc = 0.0;  // radius of the disc enclosing the ellipse
};

/// Node count meeting eps_cheb against the Bernstein bound with the growth
/// envelope C_est = exp((g/(p+1)!) sum_j alpha_j t_j (r t_j)^p). The result
/// is an initial budget; adaptive callers may still escalate it.
NodeBudget choose_n(double eps_cheb, double g, FormulaOrder order,
                    std::span<const double> alphas, std::span<const double> ts,
                    double r_disc);

}  // namespace hamest
