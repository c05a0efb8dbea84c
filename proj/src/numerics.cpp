#include "betascore/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace betascore {

Matrix cholesky_factor(const Matrix& A, double pivot_tol) {
  const Eigen::Index n = A.rows();
  if (A.cols() != n) throw DataError("cholesky_factor: matrix is not square");
  if (!A.isApprox(A.transpose(), 1e-12)) {
    throw DataError("cholesky_factor: matrix is not symmetric");
  }
  const double max_diag = A.diagonal().maxCoeff();
  if (!(max_diag > 0.0)) throw SingularMatrixError("cholesky: nonpositive diagonal");

  Matrix L = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double d = A(j, j);
    for (Eigen::Index k = 0; k < j; ++k) d -= L(j, k) * L(j, k);
    if (d <= pivot_tol * max_diag) {
      throw SingularMatrixError("cholesky: pivot " + std::to_string(j) +
                                " below tolerance (singular cross-product matrix)");
    }
    L(j, j) = std::sqrt(d);
    for (Eigen::Index i = j + 1; i < n; ++i) {
      double s = A(i, j);
      for (Eigen::Index k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
      L(i, j) = s / L(j, j);
    }
  }
  return L;
}

Vector cholesky_solve(const Matrix& A, const Vector& b, double pivot_tol) {
  if (A.rows() != b.size()) throw DataError("cholesky_solve: dimension mismatch");
  const Matrix L = cholesky_factor(A, pivot_tol);
  // forward substitution, then backward substitution
  Vector x = L.triangularView<Eigen::Lower>().solve(b);
  return L.transpose().triangularView<Eigen::Upper>().solve(x);
}

ProjectionSums projection_quadratic_form(const Matrix& Zb, const Vector& v) {
  if (Zb.rows() != v.size()) throw DataError("projection_quadratic_form: dimension mismatch");
  Matrix Q = Zb;
  for (Eigen::Index j = 0; j < Q.cols(); ++j) {
    const double norm = Q.col(j).norm();
    if (!(norm > 0.0)) throw SingularMatrixError("projection: zero column");
    Q.col(j) /= norm;
  }
  const Matrix L = cholesky_factor(Q.transpose() * Q);
  const Vector t = L.triangularView<Eigen::Lower>().solve(Q.transpose() * v);
  ProjectionSums out;
  out.tss = v.squaredNorm();
  out.ess = std::min(t.squaredNorm(), out.tss);
  return out;
}

namespace {

// Regularized lower incomplete gamma P(a, x) by its power series.
double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int k = 1; k < 10000; ++k) {
    term *= x / (a + k);
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma Q(a, x) by modified Lentz continued fraction.
double gamma_q_cf(double a, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int k = 1; k < 10000; ++k) {
    const double an = -k * (k - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q(double a, double x) {
  if (x <= 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

}  // namespace

double chi_square_sf(double x, int df) {
  if (df < 1) throw DataError("chi_square_sf: df must be >= 1");
  if (!(x >= 0.0)) throw DataError("chi_square_sf: x must be >= 0");
  if (std::isinf(x)) return 0.0;
  return gamma_q(0.5 * df, 0.5 * x);
}

double chi_square_quantile(double prob, int df) {
  if (df < 1) throw DataError("chi_square_quantile: df must be >= 1");
  if (!(prob >= 0.0 && prob < 1.0)) throw DataError("chi_square_quantile: prob outside [0,1)");
  if (prob == 0.0) return 0.0;
  const double target = 1.0 - prob;  // survival value at the quantile
  double lo = 0.0, hi = 1.0;
  while (chi_square_sf(hi, df) > target) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (chi_square_sf(mid, df) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-13 * std::max(1.0, hi)) break;
  }
  return 0.5 * (lo + hi);
}

double noncentral_chi_square_sf(double x, int df, double ncp) {
  if (df < 1) throw DataError("noncentral_chi_square_sf: df must be >= 1");
  if (!(x >= 0.0)) throw DataError("noncentral_chi_square_sf: x must be >= 0");
  if (!(ncp >= 0.0)) throw DataError("noncentral_chi_square_sf: ncp must be >= 0");
  if (ncp == 0.0) return chi_square_sf(x, df);
  if (x == 0.0) return 1.0;

  const double lambda = 0.5 * ncp;
  // Skip the negligible lower Poisson tail, then sweep upward. The chi-square
  // survival for df + 2k is advanced by the recurrence
  //   Q(a+1, y) = Q(a, y) + y^a e^{-y} / Gamma(a+1),  a = df/2 + k, y = x/2.
  constexpr double mass_tol = 1e-12;
  long k0 = 0;
  if (lambda > 30.0) {
    // Chernoff-style lower bound: mass below lambda - m is tiny for m ~ c*sqrt
    k0 = static_cast<long>(std::floor(lambda - 9.0 * std::sqrt(lambda) - 5.0));
    if (k0 < 0) k0 = 0;
  }
  const double y = 0.5 * x;
  double log_pois = -lambda + k0 * std::log(lambda) - std::lgamma(k0 + 1.0);
  double pois = std::exp(log_pois);
  double a = 0.5 * df + k0;
  double sf = gamma_q(a, y);
  // log of the recurrence increment y^a e^{-y} / Gamma(a+1)
  double log_inc = a * std::log(y) - y - std::lgamma(a + 1.0);

  double total = 0.0;
  double mass = 0.0;
  for (long k = k0; k < k0 + 1000000; ++k) {
    total += pois * sf;
    mass += pois;
    if (1.0 - mass < mass_tol) break;
    // advance Poisson weight and chi-square survival to k+1
    pois *= lambda / (k + 1.0);
    sf += std::exp(log_inc);
    if (sf > 1.0) sf = 1.0;
    log_inc += std::log(y) - std::log(a + 1.0);
    a += 1.0;
  }
  // the skipped and truncated Poisson mass carries sf values in [0, 1]
  return std::min(1.0, total + (1.0 - mass));
}

double lambda_min_estimate(const Matrix& A) {
  const Eigen::Index n = A.rows();
  if (A.cols() != n) throw DataError("lambda_min_estimate: matrix is not square");
  if (n == 1) return A(0, 0);

  auto power_iterate = [n](const Matrix& M) {
    Vector u = Vector::Ones(n);
    for (Eigen::Index i = 0; i < n; ++i) u[i] += 1e-3 * static_cast<double>(i + 1);
    u.normalize();
    double lambda = 0.0;
    for (int it = 0; it < 1000; ++it) {
      Vector w = M * u;
      const double norm = w.norm();
      if (norm == 0.0) return 0.0;
      w /= norm;
      const double next = w.dot(M * w);
      if (std::abs(next - lambda) <= 1e-14 * std::max(1.0, std::abs(next)) && it > 3) {
        return next;
      }
      lambda = next;
      u = w;
    }
    return lambda;
  };

  const double lambda_max = power_iterate(A);
  if (!(lambda_max > 0.0)) return 0.0;
  const Matrix shifted = lambda_max * Matrix::Identity(n, n) - A;
  const double shifted_max = power_iterate(shifted);
  return std::max(0.0, lambda_max - shifted_max);
}

}  // namespace betascore
