#pragma once

#include "betascore/estimation.hpp"

namespace betascore {

/// Asymptotic relative efficiency of the beta-score test against the
/// classical (beta = 0) test under Gaussian data:
///   ARE(beta) = 8 (beta+1)^5 / (beta^2+2)^2
///               * [ (2 beta^2+1) / (2 (2 beta+1)^{5/2}) - beta^2 / (4 (beta+1)^3) ].
/// ARE(0) = 1 and the function increases on the usual tuning range.
double are(double beta_tuning);

/// Shared constant (2 beta^2+1)/(2(2 beta+1)^{5/2}) - beta^2/(4(beta+1)^3);
/// equals bp_denominator(beta) / 4.
double a1_numerator(double beta_tuning);

/// Block sandwich matrices of the score under the homoscedastic null.
/// Kbar = diag(a1 W, a2 X'X/n), Jbar = diag(b1 W, b2 X'X/n) with
/// W = [[s^4 h'(0)^2 Z'Z/n, s^2 h'(0) zbar], [s^2 h'(0) zbar', 1]].
struct NullSandwich {
  Matrix W;
  Matrix Kbar;
  Matrix Jbar;
  double a1 = 0.0;
  double a2 = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
  double hprime0 = 1.0;
  double sigma2 = 0.0;
  double beta_tuning = 0.0;
  int r = 0;
  int p = 0;
};

/// X is the regression design of the fit; it enters only the coefficient
/// blocks of Kbar and Jbar.
NullSandwich null_sandwich(const DpdFit& fit, const Matrix& Z, const Matrix& X,
                           double hprime0 = 1.0);

/// Null parameter value at which influence diagnostics are evaluated.
struct Theta0 {
  Vector coefficients;
  double sigma2 = 1.0;
};

/// Second-order influence function of the Breusch-Pagan beta-score statistic
/// for contamination of observation i at y_probe[i]:
///   IF2_i(y) = exp(-beta g) (g - 1)^2 / (4 a1_numerator(beta))
///              * z_i' (Z'Z)^{-1} z_i,   g = (y - x_i' coef)^2 / sigma2.
/// Bounded in y exactly when beta > 0.
Vector if2_per_observation(const RegressionData& data, const Theta0& theta0,
                           double beta_tuning, const Vector& y_probe);

struct InfluenceReport {
  Vector per_observation_if2;    ///< IF2_i evaluated at the probe points
  Vector ges_per_observation;    ///< sup over y of IF2_i
  double ges = 0.0;              ///< max over observations
  bool unbounded = false;        ///< true at beta = 0, where the sup diverges
};

/// Evaluates the per-observation influence curve at y_probe and the supremum
/// over contamination location (analytic stationary point plus a log-spaced
/// probe grid). For beta = 0 the supremum is the grid value with the
/// `unbounded` flag set; it is not a finite GES.
InfluenceReport influence_report(const RegressionData& data, const Theta0& theta0,
                                 double beta_tuning, const Vector& y_probe);

/// Closed-form gross-error sensitivity for the simple linear regression
/// example with x_i1 = z_i1 = i:
///   GES = 6 [beta^2 e^{beta+2} a1_numerator(beta)]^{-1} n^2/((2n+1)(n^2-1)).
/// Diverges as beta -> 0+; returns +infinity for beta < 1e-12.
double ges_simple_linear(double beta_tuning, int n);

struct PowerReport {
  double ncp = 0.0;                 ///< noncentrality under the local alternative
  double power = 0.0;               ///< asymptotic power at level alpha
  double contaminated_ncp = 0.0;    ///< noncentrality under epsilon-contamination
  double contaminated_power = 0.0;
  double pif = 0.0;                 ///< derivative of power in epsilon at 0
};

/// Asymptotic power of the test against the local alternative alpha = delta/sqrt(n):
/// ncp = delta' [M' V M]^{-1} delta with V = Jbar^{-1} Kbar Jbar^{-1} and M the
/// h'(0)-scaled selector of the alpha block; power is the noncentral chi-square
/// survival at the chi^2_{r,alpha} threshold. The h'(0) factors cancel between
/// M and W, so the report does not depend on the sandwich's hprime0.
PowerReport pitman_power(const Vector& delta, const NullSandwich& sandwich, const Matrix& Z,
                         double alpha);

/// Power under epsilon-contamination at the points y_contam (one per
/// observation): the noncentrality becomes
///   ncp + 2 eps delta' IF_lambda + eps^2 mean_i IF2_i(y_contam_i),
/// with IF_lambda the influence function of the Lagrange-multiplier estimate
/// summed over observations. pif is the exact derivative of the contaminated
/// power in epsilon at 0.
PowerReport contaminated_power(const Vector& delta, double epsilon, const Vector& y_contam,
                               const NullSandwich& sandwich, const RegressionData& data,
                               const Theta0& theta0, double alpha);

}  // namespace betascore
