#pragma once

#include <Eigen/Dense>

#include "betascore/errors.hpp"

namespace betascore {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Relative pivot tolerance used to declare a cross-product matrix singular.
inline constexpr double kPivotTol = 1e-8;

/// Lower-triangular Cholesky factor of a symmetric positive definite matrix.
/// A pivot d_j = A_jj - sum_k L_jk^2 is compared against pivot_tol times the
/// largest diagonal entry of A; at or below that it throws SingularMatrixError.
Matrix cholesky_factor(const Matrix& A, double pivot_tol = kPivotTol);

/// Solves A x = b for symmetric positive definite A via L L^T factorization,
/// one forward and one backward triangular substitution.
Vector cholesky_solve(const Matrix& A, const Vector& b, double pivot_tol = kPivotTol);

struct ProjectionSums {
  double ess = 0.0;  ///< v' Zb (Zb'Zb)^{-1} Zb' v
  double tss = 0.0;  ///< v'v
};

/// Quadratic form of v under the orthogonal projector onto span(Zb), plus v'v.
/// Columns of Zb are equilibrated to unit norm before the cross-product is
/// factorized; the projector is invariant under that rescaling.
ProjectionSums projection_quadratic_form(const Matrix& Zb, const Vector& v);

/// Survival function of the central chi-square distribution, P(X > x),
/// through the regularized incomplete gamma function: series expansion for
/// x < df + 1, continued fraction otherwise. Absolute accuracy ~1e-14.
double chi_square_sf(double x, int df);

/// Upper-tail inverse: smallest x with CDF(x) = prob. Used for rejection
/// thresholds chi^2_{r,alpha} via chi_square_quantile(1 - alpha, df).
double chi_square_quantile(double prob, int df);

/// Survival function of the noncentral chi-square distribution with `df`
/// degrees of freedom and noncentrality `ncp`, evaluated as a Poisson(ncp/2)
/// mixture of central chi-square survival probabilities. The series is
/// truncated once the unaccounted Poisson mass drops below 1e-12. Reduces to
/// chi_square_sf exactly at ncp = 0.
double noncentral_chi_square_sf(double x, int df, double ncp);

/// Estimate of the smallest eigenvalue of a symmetric positive semidefinite
/// matrix by power iteration on (lambda_max I - A).
double lambda_min_estimate(const Matrix& A);

}  // namespace betascore
