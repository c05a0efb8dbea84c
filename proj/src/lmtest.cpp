#include "betascore/lmtest.hpp"

#include <cmath>

namespace betascore {

std::string to_string(TestKind kind) {
  switch (kind) {
    case TestKind::BreuschPaganBeta:
      return "breusch_pagan_beta";
    case TestKind::KoenkerBeta:
      return "koenker_beta";
  }
  return "unknown";
}

double bp_denominator(double beta_tuning) {
  if (!(beta_tuning >= 0.0)) throw DataError("bp_denominator: beta_tuning must be >= 0");
  const double b = beta_tuning;
  return 2.0 * (2.0 * b * b + 1.0) / std::pow(2.0 * b + 1.0, 2.5) -
         b * b / std::pow(b + 1.0, 3.0);
}

namespace {

Matrix with_intercept(const Matrix& Z) {
  Matrix Zb(Z.rows(), Z.cols() + 1);
  Zb.col(0).setOnes();
  Zb.rightCols(Z.cols()) = Z;
  return Zb;
}

ProjectionSums checked_projection(const DpdFit& fit, const Matrix& Z) {
  if (!fit.converged) throw NotConvergedError("test requires a converged fit");
  if (Z.rows() != fit.v.size()) throw DataError("test: rows(Z) does not match the fit");
  const double ones_v = fit.v.sum();
  if (std::abs(ones_v) > 1e-6) {
    throw NotConvergedError("test: estimating equation 1'v = 0 violated (1'v = " +
                            std::to_string(ones_v) + ")");
  }
  return projection_quadratic_form(with_intercept(Z), fit.v);
}

}  // namespace

TestResult bp_beta_test(const DpdFit& fit, const Matrix& Z) {
  const ProjectionSums sums = checked_projection(fit, Z);
  TestResult out;
  out.kind = TestKind::BreuschPaganBeta;
  out.beta_tuning = fit.beta_tuning;
  out.df = static_cast<int>(Z.cols());
  out.ess = sums.ess;
  out.tss = sums.tss;
  out.denominator = bp_denominator(fit.beta_tuning);
  out.statistic = sums.ess / *out.denominator;
  out.p_value = chi_square_sf(out.statistic, out.df);
  return out;
}

TestResult koenker_beta_test(const DpdFit& fit, const Matrix& Z) {
  const ProjectionSums sums = checked_projection(fit, Z);
  const double n = static_cast<double>(fit.v.size());
  if (sums.tss / n < 1e-300) throw ZeroVarianceError("koenker_beta_test: v'v/n ~ 0");
  TestResult out;
  out.kind = TestKind::KoenkerBeta;
  out.beta_tuning = fit.beta_tuning;
  out.df = static_cast<int>(Z.cols());
  out.ess = sums.ess;
  out.tss = sums.tss;
  out.statistic = sums.ess / (sums.tss / n);
  out.p_value = chi_square_sf(out.statistic, out.df);
  return out;
}

std::vector<double> default_beta_grid() {
  std::vector<double> grid;
  for (int k = 0; k <= 15; ++k) grid.push_back(0.05 * k);
  return grid;
}

BetaScan scan_beta(const RegressionData& data, const std::vector<double>& grid, double alpha,
                   bool white, const FitOptions& opts) {
  if (grid.empty()) throw DataError("scan_beta: empty grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0 && grid[i] <= 2.0)) {
      throw DataError("scan_beta: grid values must lie in [0, 2]");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw DataError("scan_beta: grid must be strictly increasing");
    }
  }
  if (!(alpha > 0.0 && alpha < 1.0)) throw DataError("scan_beta: alpha outside (0, 1)");

  const Matrix Z = white ? build_white_design(data.X()) : data.Z();
  BetaScan scan;
  scan.grid = grid;
  scan.df = static_cast<int>(Z.cols());
  scan.alpha = alpha;
  scan.threshold = chi_square_quantile(1.0 - alpha, scan.df);

  const DpdFit* warm = nullptr;
  DpdFit last;
  for (const double beta : grid) {
    ScanEntry entry;
    entry.beta_tuning = beta;
    try {
      DpdFit fit = warm != nullptr ? fit_null_dpd(data, beta, opts, *warm)
                                   : fit_null_dpd(data, beta, opts);
      entry.bp = bp_beta_test(fit, Z);
      entry.koenker = koenker_beta_test(fit, Z);
      entry.fit_iterations = fit.iterations;
      last = std::move(fit);
      warm = &last;
    } catch (const Error& err) {
      entry.error = err.what();
    }
    scan.entries.push_back(std::move(entry));
  }
  return scan;
}

}  // namespace betascore
