#pragma once

#include <optional>

#include "betascore/model.hpp"

namespace betascore {

struct FitOptions {
  double tol_eq = 1e-8;           ///< tolerance on the two estimating equations
  int max_outer_iterations = 100;
  double newton_tol = 1e-12;      ///< |f(sigma2)| tolerance of the scale solve
  int newton_max_iter = 50;
};

/// Restricted minimum density-power-divergence fit under the homoscedastic
/// null, theta = (0_r, sigma2, coefficients).
struct DpdFit {
  double beta_tuning = 0.0;
  Vector coefficients;   ///< fitted regression coefficients (p+1)
  double sigma2 = 0.0;   ///< fitted scale
  Vector residuals;      ///< y - X coefficients
  Vector g;              ///< squared standardized residuals, residuals^2 / sigma2
  Vector v;              ///< exp(-(beta/2) g) (g - 1) + beta/(beta+1)^{3/2}
  Vector weights;        ///< exp(-(beta/2) g)
  int iterations = 0;
  bool converged = false;
  double final_gradient_norm = 0.0;  ///< max(|1'v|, ||X' diag(w) residuals||_inf)
};

/// Transformed residual vector of the estimating equations,
/// v = diag(exp(-(beta/2) g)) (g - 1) + beta/(beta+1)^{3/2} 1.
/// At beta = 0 this is g - 1.
Vector v_vector(const Vector& g, double beta_tuning);

/// The scale estimating equation
///   f(s) = (1/n) sum exp(-(beta/2) g_i) (g_i - 1) + beta/(beta+1)^{3/2},
///   g_i = residuals_i^2 / s,
/// whose root is the fitted sigma2, and its analytic derivative
///   df/ds = (1/(n s)) sum exp(-(beta/2) g_i) ((beta/2) g_i^2 - (1+beta/2) g_i).
double sigma2_equation(const Vector& residuals, double beta_tuning, double sigma2);
double sigma2_equation_derivative(const Vector& residuals, double beta_tuning, double sigma2);

/// Solves sigma2_equation = 0 by Newton iteration with the analytic
/// derivative, safeguarded by bisection on a sign-changing bracket. Throws
/// NoRootError when no bracket exists in (1e-300, 1e300).
double solve_sigma2(const Vector& residuals, double beta_tuning, double sigma2_init,
                    const FitOptions& opts = {});

/// Fits the restricted minimum DPD estimator by iteratively reweighted least
/// squares: alternates the weighted normal equations
///   X' diag(w) X b = X' diag(w) y,  w = exp(-(beta/2) g),
/// with the one-dimensional scale solve, starting from the OLS fit.
/// At beta_tuning = 0 the result is exactly the OLS fit with
/// sigma2 = mean squared residual.
DpdFit fit_null_dpd(const RegressionData& data, double beta_tuning,
                    const FitOptions& opts = {});

/// Warm-started variant used by grid scans: starts the iteration from the
/// given fit's coefficients and sigma2 instead of the OLS solution.
DpdFit fit_null_dpd(const RegressionData& data, double beta_tuning, const FitOptions& opts,
                    const DpdFit& warm_start);

}  // namespace betascore
