#include "hamest/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hamest {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_square_finite(const ComplexMatrix& a, const char* who) {
  if (a.empty())
    throw std::invalid_argument(std::string(who) + ": empty (dim 0) matrix");
  if (!a.is_finite())
    throw std::invalid_argument(std::string(who) + ": non-finite entries");
}

// Cyclic complex Jacobi. Each rotation zeroes one off-diagonal pair; the
// phase factor reduces the 2x2 block to a real symmetric one first.
void jacobi_hermitian(ComplexMatrix& a, ComplexMatrix& q) {
  const std::size_t n = a.dim();
  q = ComplexMatrix::identity(n);
  if (n == 1) return;

  const double frob = std::max(a.frobenius_norm(), 1e-300);
  const double stop = 1e-15 * frob;
  const int max_sweeps = 60;

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t r = p + 1; r < n; ++r) off += std::norm(a(p, r));
    if (std::sqrt(2.0 * off) <= stop) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t r = p + 1; r < n; ++r) {
        const cplx g = a(p, r);
        const double ag = std::abs(g);
        if (ag <= 1e-300) continue;
        const cplx phase = g / ag;  // e^{i phi}

        const double alpha = a(p, p).real();
        const double beta = a(r, r).real();
        const double theta = (beta - alpha) / (2.0 * ag);
        // small-magnitude root of t^2 - 2*theta*t - 1 = 0
        double t;
        if (theta == 0.0) {
          t = 1.0;
        } else {
          t = -std::copysign(1.0, theta) /
              (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const cplx ep = std::conj(phase);  // e^{-i phi}

        // columns: col_p' = c*col_p + s*conj(phase)*col_q
        //          col_r' = -s*col_p + c*conj(phase)*col_q
        for (std::size_t i = 0; i < n; ++i) {
          const cplx aip = a(i, p), air = a(i, r);
          a(i, p) = c * aip + s * (ep * air);
          a(i, r) = -s * aip + c * (ep * air);
        }
        // rows: row_p' = c*row_p + s*phase*row_q
        //       row_r' = -s*row_p + c*phase*row_q
        for (std::size_t j = 0; j < n; ++j) {
          const cplx apj = a(p, j), arj = a(r, j);
          a(p, j) = c * apj + s * (phase * arj);
          a(r, j) = -s * apj + c * (phase * arj);
        }
        a(p, r) = 0.0;
        a(r, p) = 0.0;
        a(p, p) = cplx{a(p, p).real(), 0.0};
        a(r, r) = cplx{a(r, r).real(), 0.0};

        for (std::size_t i = 0; i < n; ++i) {
          const cplx qip = q(i, p), qir = q(i, r);
          q(i, p) = c * qip + s * (ep * qir);
          q(i, r) = -s * qip + c * (ep * qir);
        }
      }
    }
  }
}

ComplexMatrix columns_times_diag_exp(const ComplexMatrix& q,
                                     const std::vector<cplx>& d) {
  // Q * diag(d) * Q^H
  const std::size_t n = q.dim();
  ComplexMatrix scaled(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scaled(i, j) = q(i, j) * d[j];
  return scaled * q.adjoint();
}

double inf_norm(const ComplexMatrix& a) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < a.dim(); ++j) row += std::abs(a(i, j));
    best = std::max(best, row);
  }
  return best;
}

ComplexMatrix exp_taylor_scaled(const ComplexMatrix& a) {
  const std::size_t n = a.dim();
  const double nrm = inf_norm(a);
  int s = 0;
  if (nrm > 0.5) s = static_cast<int>(std::ceil(std::log2(nrm / 0.5)));
  ComplexMatrix b = a;
  b *= cplx{std::ldexp(1.0, -s), 0.0};

  ComplexMatrix x = ComplexMatrix::identity(n);
  ComplexMatrix term = ComplexMatrix::identity(n);
  for (int k = 1; k <= 40; ++k) {
    term = term * b;
    term *= cplx{1.0 / k, 0.0};
    x += term;
    if (term.frobenius_norm() <= 1e-17 * std::max(1.0, x.frobenius_norm()))
      break;
  }
  for (int i = 0; i < s; ++i) x = x * x;
  return x;
}

}  // namespace

HermitianEigen eig_hermitian(const ComplexMatrix& a) {
  require_square_finite(a, "eig_hermitian");
  if (!a.is_hermitian(kHermitianTol))
    throw std::invalid_argument("eig_hermitian: matrix not Hermitian");

  const std::size_t n = a.dim();
  // symmetrize away the allowed 1e-10 slack before iterating
  ComplexMatrix w(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      w(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));

  ComplexMatrix q;
  jacobi_hermitian(w, q);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return w(x, x).real() < w(y, y).real();
  });

  HermitianEigen out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = w(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i)
      out.eigenvectors(i, k) = q(i, order[k]);
  }
  return out;
}

UnitaryEigen eig_unitary(const ComplexMatrix& u, double tol) {
  require_square_finite(u, "eig_unitary");
  if (!u.is_unitary(tol))
    throw std::invalid_argument("eig_unitary: matrix not unitary within tol");

  const std::size_t n = u.dim();
  const ComplexMatrix uh = u.adjoint();
  ComplexMatrix re(n), im(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      re(i, j) = 0.5 * (u(i, j) + uh(i, j));
      im(i, j) = cplx{0.0, -0.5} * (u(i, j) - uh(i, j));
    }

  HermitianEigen ea = eig_hermitian(re);
  ComplexMatrix q = std::move(ea.eigenvectors);

  // resolve clusters of (U+U^H)/2 with the imaginary part
  const double cluster_tol = 1e-6;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && ea.eigenvalues[j] - ea.eigenvalues[j - 1] <= cluster_tol)
      ++j;
    const std::size_t c = j - i;
    if (c > 1) {
      // b_sub = Qc^H * Im * Qc
      std::vector<cplx> tmp(n * c);
      for (std::size_t row = 0; row < n; ++row)
        for (std::size_t col = 0; col < c; ++col) {
          cplx acc{0.0, 0.0};
          for (std::size_t k = 0; k < n; ++k)
            acc += im(row, k) * q(k, i + col);
          tmp[row * c + col] = acc;
        }
      ComplexMatrix bsub(c);
      for (std::size_t row = 0; row < c; ++row)
        for (std::size_t col = 0; col < c; ++col) {
          cplx acc{0.0, 0.0};
          for (std::size_t k = 0; k < n; ++k)
            acc += std::conj(q(k, i + row)) * tmp[k * c + col];
          bsub(row, col) = acc;
        }
      for (std::size_t row = 0; row < c; ++row)
        for (std::size_t col = row; col < c; ++col) {
          const cplx h = 0.5 * (bsub(row, col) + std::conj(bsub(col, row)));
          bsub(row, col) = h;
          bsub(col, row) = std::conj(h);
        }
      HermitianEigen eb = eig_hermitian(bsub);
      // q_cols[i..j) <- q_cols[i..j) * eb.eigenvectors
      std::vector<cplx> mixed(n * c);
      for (std::size_t row = 0; row < n; ++row)
        for (std::size_t col = 0; col < c; ++col) {
          cplx acc{0.0, 0.0};
          for (std::size_t k = 0; k < c; ++k)
            acc += q(row, i + k) * eb.eigenvectors(k, col);
          mixed[row * c + col] = acc;
        }
      for (std::size_t row = 0; row < n; ++row)
        for (std::size_t col = 0; col < c; ++col)
          q(row, i + col) = mixed[row * c + col];
    }
    i = j;
  }

  UnitaryEigen out;
  out.eigenvalues.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    // Rayleigh quotient q_k^H U q_k, exact for exact eigenvectors
    cplx acc{0.0, 0.0};
    for (std::size_t row = 0; row < n; ++row) {
      cplx uv{0.0, 0.0};
      for (std::size_t col = 0; col < n; ++col) uv += u(row, col) * q(col, k);
      acc += std::conj(q(row, k)) * uv;
    }
    const double mod = std::abs(acc);
    out.eigenvalues[k] = mod > 0.0 ? acc / mod : cplx{1.0, 0.0};
  }
  out.eigenvectors = std::move(q);
  return out;
}

ComplexMatrix matrix_exp(const ComplexMatrix& a) {
  require_square_finite(a, "matrix_exp");
  const std::size_t n = a.dim();

  if (a.is_hermitian(kHermitianTol)) {
    HermitianEigen e = eig_hermitian(a);
    std::vector<cplx> d(n);
    for (std::size_t k = 0; k < n; ++k) d[k] = std::exp(e.eigenvalues[k]);
    return columns_times_diag_exp(e.eigenvectors, d);
  }
  if (a.is_anti_hermitian(kHermitianTol)) {
    // a = i*h with h Hermitian
    ComplexMatrix h(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) h(i, j) = cplx{0.0, -1.0} * a(i, j);
    HermitianEigen e = eig_hermitian(h);
    std::vector<cplx> d(n);
    for (std::size_t k = 0; k < n; ++k)
      d[k] = std::exp(cplx{0.0, e.eigenvalues[k]});
    return columns_times_diag_exp(e.eigenvectors, d);
  }
  return exp_taylor_scaled(a);
}

ComplexMatrix matrix_log_principal(const ComplexMatrix& u) {
  require_square_finite(u, "matrix_log_principal");
  if (!u.is_unitary(kUnitaryTol))
    throw std::invalid_argument(
        "matrix_log_principal: input not unitary within 1e-8");

  UnitaryEigen e = eig_unitary(u);
  const std::size_t n = u.dim();
  std::vector<cplx> d(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double theta =
        std::atan2(e.eigenvalues[k].imag(), e.eigenvalues[k].real());
    if (kPi - std::abs(theta) < kBranchCutGuard) throw BranchCutError(theta);
    d[k] = cplx{0.0, theta};
  }
  return columns_times_diag_exp(e.eigenvectors, d);
}

std::vector<cplx> solve_linear(const ComplexMatrix& a,
                               std::span<const cplx> b) {
  require_square_finite(a, "solve_linear");
  const std::size_t n = a.dim();
  if (b.size() != n) throw std::invalid_argument("solve_linear: size mismatch");

  ComplexMatrix lu = a;
  std::vector<cplx> x(b.begin(), b.end());
  std::vector<std::size_t> piv(n);
  std::iota(piv.begin(), piv.end(), 0);

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = col;
    double mag = std::abs(lu(col, col));
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(lu(r, col)) > mag) {
        mag = std::abs(lu(r, col));
        best = r;
      }
    if (mag == 0.0) throw std::domain_error("solve_linear: singular matrix");
    if (best != col) {
      for (std::size_t j = 0; j < n; ++j)
        std::swap(lu(col, j), lu(best, j));
      std::swap(x[col], x[best]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const cplx f = lu(r, col) / lu(col, col);
      lu(r, col) = f;
      for (std::size_t j = col + 1; j < n; ++j) lu(r, j) -= f * lu(col, j);
      x[r] -= f * x[col];
    }
  }
  for (std::size_t ri = n; ri-- > 0;) {
    cplx acc = x[ri];
    for (std::size_t j = ri + 1; j < n; ++j) acc -= lu(ri, j) * x[j];
    x[ri] = acc / lu(ri, ri);
  }
  return x;
}

ComplexMatrix matrix_inverse(const ComplexMatrix& a) {
  require_square_finite(a, "matrix_inverse");
  const std::size_t n = a.dim();
  ComplexMatrix inv(n);
  std::vector<cplx> e(n, cplx{0.0, 0.0});
  for (std::size_t col = 0; col < n; ++col) {
    e[col] = 1.0;
    std::vector<cplx> x = solve_linear(a, e);
    for (std::size_t i = 0; i < n; ++i) inv(i, col) = x[i];
    e[col] = 0.0;
  }
  return inv;
}

ComplexMatrix matrix_log_general(const ComplexMatrix& a) {
  require_square_finite(a, "matrix_log_general");
  const std::size_t n = a.dim();
  const ComplexMatrix id = ComplexMatrix::identity(n);

  // inverse scaling: take square roots until close to the identity
  ComplexMatrix x = a;
  int sqrts = 0;
  const int max_sqrts = 40;
  while (inf_norm(x - id) > 0.2 && sqrts < max_sqrts) {
    // Denman-Beavers: y <- (y + z^{-1})/2, z <- (z + y^{-1})/2, y -> sqrt(a)
    ComplexMatrix y = x;
    ComplexMatrix z = id;
    for (int it = 0; it < 60; ++it) {
      ComplexMatrix yn = y + matrix_inverse(z);
      yn *= cplx{0.5, 0.0};
      ComplexMatrix zn = z + matrix_inverse(y);
      zn *= cplx{0.5, 0.0};
      const double delta = inf_norm(yn - y);
      y = std::move(yn);
      z = std::move(zn);
      if (delta <= 1e-15 * std::max(1.0, inf_norm(y))) break;
    }
    x = std::move(y);
    ++sqrts;
  }
  if (inf_norm(x - id) > 0.3)
    throw std::domain_error(
        "matrix_log_general: square-root iteration did not contract "
        "(eigenvalue near the negative real axis?)");

  // log(I + E) by the Mercator series; ||E|| <= 0.2 so ~25 terms suffice
  const ComplexMatrix e = x - id;
  ComplexMatrix power = e;
  ComplexMatrix acc = e;
  for (int k = 2; k <= 48; ++k) {
    power = power * e;
    ComplexMatrix term = power;
    term *= cplx{(k % 2 == 0 ? -1.0 : 1.0) / k, 0.0};
    acc += term;
    if (power.frobenius_norm() / k <= 1e-18 * std::max(1.0, acc.frobenius_norm()))
      break;
  }
  acc *= cplx{std::ldexp(1.0, sqrts), 0.0};
  return acc;
}

double operator_norm(const ComplexMatrix& a) {
  require_square_finite(a, "operator_norm");
  const std::size_t n = a.dim();
  if (n == 1) return std::abs(a(0, 0));
  // largest eigenvalue of A^H A
  const ComplexMatrix g = a.adjoint() * a;
  ComplexMatrix h(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      h(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
  HermitianEigen e = eig_hermitian(h);
  return std::sqrt(std::max(e.eigenvalues.back(), 0.0));
}

}  // namespace hamest
