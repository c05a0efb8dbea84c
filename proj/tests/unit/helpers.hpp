#pragma once

#include <cmath>
#include <stdexcept>

#include "betascore/model.hpp"
#include "betascore/rng.hpp"

namespace betascore::test {

/// Dense solve by Gauss-Jordan elimination with partial pivoting. Kept
/// deliberately separate from the library's Cholesky path so that oracle
/// regressions do not share code with the implementation they check.
inline Vector gauss_solve(Matrix A, Vector b) {
  const Eigen::Index n = A.rows();
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    for (Eigen::Index row = col + 1; row < n; ++row) {
      if (std::abs(A(row, col)) > std::abs(A(pivot, col))) pivot = row;
    }
    if (A(pivot, col) == 0.0) throw std::runtime_error("gauss_solve: singular");
    A.row(col).swap(A.row(pivot));
    std::swap(b[col], b[pivot]);
    for (Eigen::Index row = 0; row < n; ++row) {
      if (row == col) continue;
      const double factor = A(row, col) / A(col, col);
      A.row(row) -= factor * A.row(col);
      b[row] -= factor * b[col];
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) b[i] /= A(i, i);
  return b;
}

/// OLS coefficients of y on the columns of X, via gauss_solve.
inline Vector ols_coefficients(const Matrix& X, const Vector& y) {
  return gauss_solve(X.transpose() * X, X.transpose() * y);
}

struct ClassicalBp {
  double bp = 0.0;       ///< ESS/2 of the regression of g-1 on [1 | Z]
  double koenker = 0.0;  ///< n R^2 of the same regression
};

/// Two-regression oracle for the classical (beta = 0) tests.
inline ClassicalBp classical_bp_oracle(const Vector& y, const Matrix& X, const Matrix& Z) {
  const Eigen::Index n = y.size();
  const Vector resid = y - X * ols_coefficients(X, y);
  const double s2 = resid.squaredNorm() / static_cast<double>(n);
  const Vector target = resid.array().square() / s2 - 1.0;

  Matrix Zb(n, Z.cols() + 1);
  Zb.col(0).setOnes();
  Zb.rightCols(Z.cols()) = Z;
  const Vector gamma = ols_coefficients(Zb, target);
  const Vector fitted = Zb * gamma;
  const double target_mean = target.mean();
  const double ess = (fitted.array() - target_mean).square().sum();
  const double tss = (target.array() - target_mean).square().sum();
  return {ess / 2.0, static_cast<double>(n) * ess / tss};
}

/// Random regression instance with standard normal regressors and N(0, s2)
/// errors, valid as RegressionData.
inline RegressionData random_instance(Rng& rng, int n, int p, int r, double noise_sd = 1.0) {
  Matrix X(n, p + 1);
  X.col(0).setOnes();
  for (int j = 1; j <= p; ++j) {
    for (int i = 0; i < n; ++i) X(i, j) = rng.next_normal();
  }
  Matrix Z(n, r);
  for (int j = 0; j < r; ++j) {
    for (int i = 0; i < n; ++i) Z(i, j) = rng.next_normal();
  }
  Vector coef(p + 1);
  for (int j = 0; j <= p; ++j) coef[j] = rng.next_normal();
  Vector y = X * coef;
  for (int i = 0; i < n; ++i) y[i] += noise_sd * rng.next_normal();
  return RegressionData(y, X, Z);
}

}  // namespace betascore::test
