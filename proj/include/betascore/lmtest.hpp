#pragma once

#include <optional>
#include <string>
#include <vector>

#include "betascore/estimation.hpp"

namespace betascore {

enum class TestKind {
  BreuschPaganBeta,
  KoenkerBeta,
};

std::string to_string(TestKind kind);

struct TestResult {
  TestKind kind = TestKind::BreuschPaganBeta;
  double beta_tuning = 0.0;
  double statistic = 0.0;
  int df = 0;             ///< r, the number of heteroscedasticity regressors
  double p_value = 1.0;   ///< chi_square_sf(statistic, df)
  double ess = 0.0;       ///< explained sum of squares of v on [1 | Z]
  double tss = 0.0;       ///< v'v
  std::optional<double> denominator;  ///< d(beta); Breusch-Pagan only
};

/// Denominator of the Breusch-Pagan beta-score statistic,
/// d(beta) = 2(2 beta^2 + 1)/(2 beta + 1)^{5/2} - beta^2/(beta + 1)^3.
/// d(0) = 2; strictly positive on [0, 2].
double bp_denominator(double beta_tuning);

/// Breusch-Pagan beta-score statistic R = ess / d(beta), where ess is the
/// explained sum of squares of the regression of v on [1 | Z]. Requires a
/// converged fit with 1'v = 0 (the projection onto the intercept is then
/// null, so the uncentered quadratic form equals the centered ESS).
TestResult bp_beta_test(const DpdFit& fit, const Matrix& Z);

/// Koenker beta-score statistic Q = ess / (v'v / n) = n R^2 of the same
/// auxiliary regression.
TestResult koenker_beta_test(const DpdFit& fit, const Matrix& Z);

struct ScanEntry {
  double beta_tuning = 0.0;
  std::optional<TestResult> bp;
  std::optional<TestResult> koenker;
  int fit_iterations = 0;
  std::string error;  ///< non-empty when this grid point failed
  bool ok() const { return error.empty(); }
};

struct BetaScan {
  std::vector<double> grid;
  std::vector<ScanEntry> entries;
  int df = 0;
  double alpha = 0.05;
  double threshold = 0.0;  ///< chi^2_{r, alpha} rejection threshold
};

/// Default scan grid: 0 to 0.75 in steps of 0.05.
std::vector<double> default_beta_grid();

/// Evaluates both statistics over a strictly increasing grid of tuning
/// parameters in [0, 2]. Fits are warm-started from the previous grid point;
/// a failed point is recorded in its entry without aborting the scan.
/// With white = true the heteroscedasticity design is built from X by
/// build_white_design, otherwise data.Z is used.
BetaScan scan_beta(const RegressionData& data, const std::vector<double>& grid, double alpha,
                   bool white, const FitOptions& opts = {});

}  // namespace betascore
