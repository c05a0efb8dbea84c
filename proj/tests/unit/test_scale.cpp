#include "doctest.h"

#include <cmath>

#include "betascore/lmtest.hpp"
#include "helpers.hpp"

using namespace betascore;

namespace {

// Synthetic data at housing-data magnitudes: a response in the hundreds,
// regressors spanning 1e0 to 1e5 with a long-tailed column. Exercises the
// solver and the projection at the raw scales real econometrics CSVs carry.
RegressionData housing_scale_instance(std::uint64_t seed, int n) {
  Rng rng(seed, 0);
  Matrix X(n, 4);
  X.col(0).setOnes();
  for (int i = 0; i < n; ++i) {
    X(i, 1) = 3.0 + static_cast<double>(rng.next_below(4));          // bedrooms
    X(i, 2) = 9000.0 + 4000.0 * rng.next_normal();                    // lot size
    if (rng.next_below(12) == 0) X(i, 2) += 30000.0 + 50000.0 * rng.next_double();
    X(i, 2) = std::abs(X(i, 2)) + 1000.0;
    X(i, 3) = 2000.0 + 550.0 * rng.next_normal();                     // floor area
  }
  Vector y(n);
  for (int i = 0; i < n; ++i) {
    y[i] = -20.0 + 14.0 * X(i, 1) + 0.002 * X(i, 2) + 0.12 * X(i, 3) +
           60.0 * rng.next_normal();
  }
  return RegressionData(y, X, X.rightCols(3));
}

}  // namespace

TEST_CASE("fits and tests behave at raw housing-data magnitudes") {
  const RegressionData data = housing_scale_instance(20260810, 88);
  const Matrix Zw = build_white_design(data.X());
  CHECK(Zw.cols() == 9);

  for (const double beta : {0.0, 0.3, 0.6}) {
    const DpdFit fit = fit_null_dpd(data, beta);
    CHECK(fit.converged);
    CHECK(std::abs(fit.v.sum()) <= 1e-8);

    const TestResult bp = bp_beta_test(fit, data.Z());
    const TestResult bpw = bp_beta_test(fit, Zw);
    const TestResult kow = koenker_beta_test(fit, Zw);
    CHECK(bp.p_value >= 0.0);
    CHECK(bp.p_value <= 1.0);
    CHECK(bpw.df == 9);
    CHECK(kow.statistic <= 88.0 + 1e-9);

    // column rescaling of X and Z is a pure reparametrization: residuals, g,
    // v, and both statistics must not move
    Matrix Xs = data.X();
    Xs.col(2) /= 1000.0;
    Xs.col(3) /= 100.0;
    Matrix Zs = Xs.rightCols(3);
    const RegressionData scaled(data.y(), Xs, Zs);
    const DpdFit sfit = fit_null_dpd(scaled, beta);
    CHECK((sfit.g - fit.g).cwiseAbs().maxCoeff() < 1e-7);
    const TestResult bp_s = bp_beta_test(sfit, Zs);
    CHECK(bp_s.statistic == doctest::Approx(bp.statistic).epsilon(1e-7));
    const TestResult bpw_s = bp_beta_test(sfit, build_white_design(Xs));
    CHECK(bpw_s.statistic == doctest::Approx(bpw.statistic).epsilon(1e-7));
  }
}

TEST_CASE("scan runs clean on housing-scale data with the white design") {
  const RegressionData data = housing_scale_instance(99, 88);
  const BetaScan scan = scan_beta(data, default_beta_grid(), 0.05, true);
  CHECK(scan.df == 9);
  for (const auto& e : scan.entries) {
    CHECK(e.ok());
  }
}
