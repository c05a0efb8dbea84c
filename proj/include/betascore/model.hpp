#pragma once

#include <string>

#include "betascore/numerics.hpp"

namespace betascore {

/// Fixed-design data for the heteroscedastic linear model. X carries the
/// intercept as its first column; Z holds the heteroscedasticity regressors
/// and never contains an intercept (it is prepended internally where needed).
class RegressionData {
 public:
  RegressionData(Vector y, Matrix X, Matrix Z);

  const Vector& y() const noexcept { return y_; }
  const Matrix& X() const noexcept { return X_; }
  const Matrix& Z() const noexcept { return Z_; }

  Eigen::Index n() const noexcept { return y_.size(); }
  Eigen::Index p() const noexcept { return X_.cols() - 1; }
  Eigen::Index r() const noexcept { return Z_.cols(); }

  /// Z with the intercept column prepended.
  Matrix Zb() const;

 private:
  Vector y_;
  Matrix X_;
  Matrix Z_;
};

enum class ScedasticKind {
  Additive,        ///< h(eta) = 1 + eta
  Multiplicative,  ///< h(eta) = exp(eta)
};

/// Variance scheme sigma_i^2 = sigma2 * h(z_i' alpha); h(0) = 1 for both kinds.
struct ScedasticModel {
  ScedasticKind kind = ScedasticKind::Additive;
  Vector alpha;
  double sigma2 = 1.0;
};

/// Evaluates sigma2 * h(z' alpha). Throws NonPositiveVarianceError for the
/// additive kind when 1 + z' alpha <= 0.
double scedastic_variance(const ScedasticModel& model, const Vector& z);

/// Heteroscedasticity design of White's test: per row, the regressors
/// followed by the half-vectorization of their outer product,
/// z_i = (x_i1..x_ip, x_i1^2, x_i1 x_i2, .., x_i1 x_ip, x_i2^2, .., x_ip^2),
/// giving r = p + p(p+1)/2 columns. Throws RankDeficientError when the
/// augmented design [1 | Z] is singular (e.g. a binary regressor).
Matrix build_white_design(const Matrix& X);

struct DesignDiagnostics {
  double lambda_min_X = 0.0;        ///< smallest eigenvalue of X'X/n
  double lambda_min_Zb = 0.0;       ///< smallest eigenvalue of Zb'Zb/n
  double leverage_ratio_X = 0.0;    ///< max_i ||x_i|| / sqrt(n * lambda_min_X)
  double leverage_ratio_Zb = 0.0;   ///< max_i ||zb_i|| / sqrt(n * lambda_min_Zb)
};

/// Finite-sample versions of the eigenvalue/leverage conditions behind the
/// asymptotics. Diagnostics only; the caller decides whether to warn.
DesignDiagnostics check_design_conditions(const RegressionData& data);

}  // namespace betascore
