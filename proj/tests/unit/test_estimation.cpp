#include "doctest.h"

#include <cmath>

#include "betascore/estimation.hpp"
#include "helpers.hpp"

using namespace betascore;
using betascore::test::random_instance;

namespace {

RegressionData intercept_only_data() {
  Vector y(4);
  y << 1, 2, 3, 4;
  Matrix X = Matrix::Ones(4, 1);
  Matrix Z(4, 1);
  Z << 0, 1, 0, 1;
  return RegressionData(y, X, Z);
}

// Empirical DPD objective under the null (all variances equal), up to an
// additive constant: per observation E[f^beta] - (beta+1)/beta f^beta(Y_i),
// with f = N(x_i'b, s2). Minimized by the restricted fit.
double dpd_objective(const Vector& y, const Matrix& X, const Vector& coef, double s2,
                     double beta) {
  const double kappa = std::pow(2.0 * M_PI * s2, -0.5 * beta);
  const Vector resid = y - X * coef;
  const double n = static_cast<double>(y.size());
  const double model_term = n * kappa / std::sqrt(beta + 1.0);
  const double data_term =
      kappa * (-0.5 * beta / s2 * resid.array().square()).exp().sum();
  return model_term - (beta + 1.0) / beta * data_term;
}

struct BruteResult {
  double intercept = 0.0;
  double sigma2 = 0.0;
};

// grid search over (b0, s2) refined around the optimum; intercept-only designs
BruteResult brute_force_intercept_fit(const Vector& y, double beta) {
  const Matrix X = Matrix::Ones(y.size(), 1);
  double lo_b = y.minCoeff(), hi_b = y.maxCoeff();
  const double var0 = (y.array() - y.mean()).square().mean();
  double lo_s = var0 / 20.0, hi_s = var0 * 20.0;
  double best_b = 0.0, best_s = var0;
  for (int round = 0; round < 12; ++round) {
    double best = std::numeric_limits<double>::infinity();
    const int nb = 41, ns = 41;
    for (int i = 0; i < nb; ++i) {
      const double b0 = lo_b + (hi_b - lo_b) * i / (nb - 1.0);
      Vector coef(1);
      coef << b0;
      for (int j = 0; j < ns; ++j) {
        const double s2 = lo_s * std::pow(hi_s / lo_s, j / (ns - 1.0));
        const double value = dpd_objective(y, X, coef, s2, beta);
        if (value < best) {
          best = value;
          best_b = b0;
          best_s = s2;
        }
      }
    }
    const double span_b = (hi_b - lo_b) / (nb - 1.0);
    lo_b = best_b - 2.0 * span_b;
    hi_b = best_b + 2.0 * span_b;
    const double ratio = std::pow(hi_s / lo_s, 1.0 / (ns - 1.0));
    lo_s = best_s / (ratio * ratio);
    hi_s = best_s * ratio * ratio;
  }
  return {best_b, best_s};
}

}  // namespace

TEST_CASE("v_vector") {
  Vector g(2);
  g << 2, 0;
  const Vector v0 = v_vector(g, 0.0);
  CHECK(v0[0] == 1.0);
  CHECK(v0[1] == -1.0);

  const Vector v1 = v_vector(Vector::Ones(5), 1.0);
  for (int i = 0; i < 5; ++i) {
    CHECK(v1[i] == doctest::Approx(1.0 / std::pow(2.0, 1.5)).epsilon(1e-15));
  }

  Vector g3(2);
  g3 << 0.5, 1.5;
  const Vector v3 = v_vector(g3, 0.3);
  for (int i = 0; i < 2; ++i) {
    const double expected =
        std::exp(-0.15 * g3[i]) * (g3[i] - 1.0) + 0.3 / std::pow(1.3, 1.5);
    CHECK(v3[i] == doctest::Approx(expected).epsilon(1e-15));
  }
}

TEST_CASE("solve_sigma2 limits and bisection oracle") {
  Vector r(4);
  r << 1, -1, 1, -1;

  // beta -> 0+ root approaches mean squared residual
  CHECK(solve_sigma2(r, 1e-10, 0.5) == doctest::Approx(1.0).epsilon(1e-6));

  // independent bisection oracle at beta = 0.5
  {
    const double beta = 0.5;
    auto f = [&](double s2) {
      double sum = 0.0;
      for (int i = 0; i < 4; ++i) {
        const double g = r[i] * r[i] / s2;
        sum += std::exp(-0.5 * beta * g) * (g - 1.0);
      }
      return sum / 4.0 + beta / std::pow(beta + 1.0, 1.5);
    };
    double lo = 1e-6, hi = 1e6;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (f(mid) > 0.0 ? lo : hi) = mid;
    }
    CHECK(solve_sigma2(r, beta, 2.0) == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-10));
  }

  // residuals all equal: the root solves the scalar equation exactly
  {
    const double beta = 0.4, c = 0.7;
    const double s2 = solve_sigma2(Vector::Constant(6, c), beta, 1.0);
    const double g = c * c / s2;
    CHECK(std::exp(-0.5 * beta * g) * (g - 1.0) ==
          doctest::Approx(-beta / std::pow(beta + 1.0, 1.5)).epsilon(1e-10));
  }
}

TEST_CASE("sigma2 equation derivative matches finite differences") {
  Rng rng(31, 0);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 3 + static_cast<int>(rng.next_below(20));
    Vector r(n);
    for (int i = 0; i < n; ++i) r[i] = rng.next_normal() * (0.2 + rng.next_double());
    if (r.squaredNorm() == 0.0) continue;
    const double beta = 0.05 + rng.next_double() * 1.2;
    const double s2 = 0.2 + rng.next_double() * 3.0;
    const double h = s2 * 1e-6;
    const double fd = (sigma2_equation(r, beta, s2 + h) - sigma2_equation(r, beta, s2 - h)) /
                      (2.0 * h);
    const double an = sigma2_equation_derivative(r, beta, s2);
    CHECK(an == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("ols fit at beta = 0 on the intercept example") {
  const RegressionData data = intercept_only_data();
  const DpdFit fit = fit_null_dpd(data, 0.0);
  CHECK(fit.converged);
  CHECK(fit.coefficients[0] == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(fit.sigma2 == doctest::Approx(1.25).epsilon(1e-14));
  Vector expected_g(4);
  expected_g << 1.8, 0.2, 0.2, 1.8;
  CHECK((fit.g - expected_g).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((fit.v - (fit.g - Vector::Ones(4))).cwiseAbs().maxCoeff() == 0.0);
  CHECK((fit.weights - Vector::Ones(4)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("fit matches brute-force DPD minimization (intercept example)") {
  const RegressionData data = intercept_only_data();
  const double beta = 0.3;
  const DpdFit fit = fit_null_dpd(data, beta);
  const BruteResult brute = brute_force_intercept_fit(data.y(), beta);
  CHECK(fit.coefficients[0] == doctest::Approx(brute.intercept).epsilon(1e-6));
  CHECK(fit.sigma2 == doctest::Approx(brute.sigma2).epsilon(1e-6));
}

TEST_CASE("degenerate fit on exact interpolation") {
  Vector y(6);
  Matrix X(6, 2);
  X.col(0).setOnes();
  X.col(1) << 1, 2, 3, 4, 5, 6;
  y = 2.0 * X.col(1) + Vector::Ones(6);
  Matrix Z(6, 1);
  Z << 1, -1, 1, -1, 1, -1;
  const RegressionData data(y, X, Z);
  CHECK_THROWS_AS(fit_null_dpd(data, 0.0), DegenerateFitError);
  CHECK_THROWS_AS(fit_null_dpd(data, 0.4), DegenerateFitError);
}

TEST_CASE("estimating equations and cross-product identity at convergence") {
  Rng rng(404, 0);
  for (int rep = 0; rep < 25; ++rep) {
    const int n = 20 + static_cast<int>(rng.next_below(40));
    const int p = 1 + static_cast<int>(rng.next_below(3));
    const int r = 1 + static_cast<int>(rng.next_below(3));
    const RegressionData data = random_instance(rng, n, p, r);
    const double beta = rng.next_double() * 0.8;
    const DpdFit fit = fit_null_dpd(data, beta);
    CHECK(fit.converged);
    CHECK(std::abs(fit.v.sum()) <= 1e-8);
    const Vector grad = data.X().transpose() * fit.weights.cwiseProduct(fit.residuals);
    CHECK(grad.cwiseAbs().maxCoeff() <= 1e-8);

    // (1/n) v'v = (1/n)(g-1)' diag(exp(-beta g)) (g-1) - beta^2/(beta+1)^3
    const double n_d = static_cast<double>(n);
    const double lhs = fit.v.squaredNorm() / n_d;
    const double rhs = ((fit.g.array() - 1.0).square() * (-beta * fit.g.array()).exp()).sum() /
                           n_d -
                       beta * beta / std::pow(beta + 1.0, 3.0);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("scale equivariance of the fit") {
  Rng rng(555, 0);
  const RegressionData data = random_instance(rng, 40, 2, 2);
  for (const double beta : {0.0, 0.35}) {
    const DpdFit base = fit_null_dpd(data, beta);
    for (const double c : {0.1, 3.0, 100.0}) {
      const RegressionData scaled(c * data.y(), data.X(), data.Z());
      const DpdFit fit = fit_null_dpd(scaled, beta);
      CHECK((fit.coefficients - c * base.coefficients).cwiseAbs().maxCoeff() <=
            1e-8 * c * base.coefficients.cwiseAbs().maxCoeff());
      CHECK(fit.sigma2 == doctest::Approx(c * c * base.sigma2).epsilon(1e-8));
      CHECK((fit.g - base.g).cwiseAbs().maxCoeff() < 1e-7);
      CHECK((fit.v - base.v).cwiseAbs().maxCoeff() < 1e-7);
      CHECK((fit.weights - base.weights).cwiseAbs().maxCoeff() < 1e-7);
    }
  }
}

TEST_CASE("beta continuity at zero") {
  Rng rng(717, 0);
  const RegressionData data = random_instance(rng, 35, 1, 1);
  const DpdFit f0 = fit_null_dpd(data, 0.0);
  const DpdFit f_eps = fit_null_dpd(data, 1e-6);
  CHECK((f_eps.coefficients - f0.coefficients).cwiseAbs().maxCoeff() < 1e-4);
  CHECK(std::abs(f_eps.sigma2 - f0.sigma2) < 1e-4);
}

TEST_CASE("warm start reproduces the cold-start fit") {
  Rng rng(818, 0);
  const RegressionData data = random_instance(rng, 50, 2, 2);
  const DpdFit f03 = fit_null_dpd(data, 0.3);
  const DpdFit warm = fit_null_dpd(data, 0.35, {}, f03);
  const DpdFit cold = fit_null_dpd(data, 0.35);
  CHECK((warm.coefficients - cold.coefficients).cwiseAbs().maxCoeff() < 1e-7);
  CHECK(warm.sigma2 == doctest::Approx(cold.sigma2).epsilon(1e-7));
}
