#include "betascore/model.hpp"

#include <cmath>
#include <limits>

namespace betascore {

namespace {

bool full_column_rank(const Matrix& M) {
  Matrix Q = M;
  for (Eigen::Index j = 0; j < Q.cols(); ++j) {
    const double norm = Q.col(j).norm();
    if (!(norm > 0.0)) return false;
    Q.col(j) /= norm;
  }
  try {
    cholesky_factor(Q.transpose() * Q);
  } catch (const SingularMatrixError&) {
    return false;
  }
  return true;
}

}  // namespace

RegressionData::RegressionData(Vector y, Matrix X, Matrix Z)
    : y_(std::move(y)), X_(std::move(X)), Z_(std::move(Z)) {
  const Eigen::Index n = y_.size();
  if (n < 1 || X_.cols() < 1 || Z_.cols() < 1) {
    throw DataError("RegressionData: empty design");
  }
  if (X_.rows() != n) throw DataError("RegressionData: rows(X) != length(y)");
  if (Z_.rows() != n) throw DataError("RegressionData: rows(Z) != length(y)");
  if (!y_.allFinite() || !X_.allFinite() || !Z_.allFinite()) {
    throw DataError("RegressionData: non-finite entries");
  }
  if ((X_.col(0).array() != 1.0).any()) {
    throw DataError("RegressionData: first column of X must be the intercept (all ones)");
  }
  if ((Z_.cols() + 1) + X_.cols() >= n) {
    throw DataError("RegressionData: requires (r+1)+(p+1) < n");
  }
  for (Eigen::Index j = 0; j < Z_.cols(); ++j) {
    const double mean = Z_.col(j).mean();
    const double sd = std::sqrt((Z_.col(j).array() - mean).square().sum() /
                                static_cast<double>(n - 1));
    if (sd < 1e-12 * (1.0 + std::abs(mean))) {
      throw DataError("RegressionData: column " + std::to_string(j + 1) +
                      " of Z is constant; Z must not contain an intercept");
    }
  }
  if (!full_column_rank(X_)) {
    throw RankDeficientError("RegressionData: X is rank deficient");
  }
  if (!full_column_rank(Zb())) {
    throw RankDeficientError("RegressionData: [1 | Z] is rank deficient");
  }
}

Matrix RegressionData::Zb() const {
  Matrix out(Z_.rows(), Z_.cols() + 1);
  out.col(0).setOnes();
  out.rightCols(Z_.cols()) = Z_;
  return out;
}

double scedastic_variance(const ScedasticModel& model, const Vector& z) {
  if (z.size() != model.alpha.size()) throw DataError("scedastic_variance: dimension mismatch");
  if (!(model.sigma2 > 0.0)) throw DataError("scedastic_variance: sigma2 must be > 0");
  const double eta = z.dot(model.alpha);
  double h = 0.0;
  switch (model.kind) {
    case ScedasticKind::Additive:
      h = 1.0 + eta;
      if (h <= 0.0) {
        throw NonPositiveVarianceError("additive scedastic function 1 + z'alpha <= 0");
      }
      break;
    case ScedasticKind::Multiplicative:
      h = std::exp(eta);
      break;
  }
  return model.sigma2 * h;
}

Matrix build_white_design(const Matrix& X) {
  if (X.cols() < 2) throw DataError("build_white_design: X needs at least one regressor");
  if ((X.col(0).array() != 1.0).any()) {
    throw DataError("build_white_design: first column of X must be the intercept");
  }
  const Eigen::Index n = X.rows();
  const Eigen::Index p = X.cols() - 1;
  const Eigen::Index r = p + p * (p + 1) / 2;
  Matrix Z(n, r);
  Z.leftCols(p) = X.rightCols(p);
  Eigen::Index col = p;
  for (Eigen::Index j = 0; j < p; ++j) {
    for (Eigen::Index i = j; i < p; ++i) {
      Z.col(col++) = X.col(1 + j).cwiseProduct(X.col(1 + i));
    }
  }
  Matrix Zb(n, r + 1);
  Zb.col(0).setOnes();
  Zb.rightCols(r) = Z;
  if (!full_column_rank(Zb)) {
    throw RankDeficientError(
        "build_white_design: [1 | Z] is singular (duplicated or collinear columns, "
        "e.g. a binary regressor)");
  }
  return Z;
}

DesignDiagnostics check_design_conditions(const RegressionData& data) {
  const double n = static_cast<double>(data.n());
  DesignDiagnostics out;
  const Matrix& X = data.X();
  const Matrix Zb = data.Zb();
  out.lambda_min_X = lambda_min_estimate(X.transpose() * X / n);
  out.lambda_min_Zb = lambda_min_estimate(Zb.transpose() * Zb / n);
  const double max_row_X = X.rowwise().norm().maxCoeff();
  const double max_row_Zb = Zb.rowwise().norm().maxCoeff();
  out.leverage_ratio_X =
      out.lambda_min_X > 0.0 ? max_row_X / std::sqrt(n * out.lambda_min_X)
                             : std::numeric_limits<double>::infinity();
  out.leverage_ratio_Zb =
      out.lambda_min_Zb > 0.0 ? max_row_Zb / std::sqrt(n * out.lambda_min_Zb)
                              : std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace betascore
