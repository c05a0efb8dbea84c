#include "betascore/estimation.hpp"

#include <cmath>
#include <limits>

namespace betascore {

namespace {

constexpr double kSigmaFloor = 1e-300;
constexpr double kExpClamp = -700.0;  // exp underflows to 0 a bit below this

double offset_const(double beta) { return beta / std::pow(beta + 1.0, 1.5); }

Vector weights_of(const Vector& g, double beta) {
  return (-0.5 * beta * g.array()).max(kExpClamp).exp().matrix();
}

}  // namespace

double sigma2_equation(const Vector& residuals, double beta_tuning, double sigma2) {
  const auto g = residuals.array().square() / sigma2;
  const auto w = (-0.5 * beta_tuning * g).max(kExpClamp).exp();
  return (w * (g - 1.0)).mean() + offset_const(beta_tuning);
}

double sigma2_equation_derivative(const Vector& residuals, double beta_tuning, double sigma2) {
  const auto g = residuals.array().square() / sigma2;
  const auto w = (-0.5 * beta_tuning * g).max(kExpClamp).exp();
  const double n = static_cast<double>(residuals.size());
  return (w * (0.5 * beta_tuning * g.square() - (1.0 + 0.5 * beta_tuning) * g)).sum() /
         (n * sigma2);
}

Vector v_vector(const Vector& g, double beta_tuning) {
  if ((g.array() < 0.0).any()) throw DataError("v_vector: g entries must be >= 0");
  const Vector w = weights_of(g, beta_tuning);
  return (w.array() * (g.array() - 1.0) + offset_const(beta_tuning)).matrix();
}

double solve_sigma2(const Vector& residuals, double beta_tuning, double sigma2_init,
                    const FitOptions& opts) {
  if (!(beta_tuning > 0.0)) throw DataError("solve_sigma2: beta_tuning must be > 0");
  if (!(sigma2_init > 0.0)) throw DataError("solve_sigma2: sigma2_init must be > 0");
  if (residuals.squaredNorm() == 0.0) throw DegenerateFitError("solve_sigma2: zero residuals");

  // f(0+) >= 0 >= f(inf); expand a sign-changing bracket around the warm start.
  double lo = sigma2_init, hi = sigma2_init;
  while (sigma2_equation(residuals, beta_tuning, lo) < 0.0) {
    lo /= 8.0;
    if (lo < kSigmaFloor) throw NoRootError("solve_sigma2: no sign change below start");
  }
  while (sigma2_equation(residuals, beta_tuning, hi) > 0.0) {
    hi *= 8.0;
    if (hi > 1e300) throw NoRootError("solve_sigma2: no sign change above start");
  }

  double x = std::clamp(sigma2_init, lo, hi);
  for (int it = 0; it < opts.newton_max_iter; ++it) {
    const double fx = sigma2_equation(residuals, beta_tuning, x);
    if (std::abs(fx) <= opts.newton_tol) return x;
    if (fx > 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    const double dfx = sigma2_equation_derivative(residuals, beta_tuning, x);
    double next = dfx != 0.0 ? x - fx / dfx : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    x = next;
  }
  // pure bisection fallback on the remaining bracket
  for (int it = 0; it < 200; ++it) {
    if (std::abs(sigma2_equation(residuals, beta_tuning, x)) <= opts.newton_tol) return x;
    const double fx = sigma2_equation(residuals, beta_tuning, x);
    if (fx > 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    x = 0.5 * (lo + hi);
    if (hi - lo <= std::numeric_limits<double>::epsilon() * hi) break;
  }
  if (std::abs(sigma2_equation(residuals, beta_tuning, x)) <= opts.newton_tol) return x;
  throw NoRootError("solve_sigma2: Newton and bisection both failed to reach tolerance");
}

namespace {

struct Equilibrated {
  Matrix X;       // columns scaled to unit norm
  Vector scale;   // original column norms
};

Equilibrated equilibrate(const Matrix& X) {
  Equilibrated out{X, Vector(X.cols())};
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    const double norm = X.col(j).norm();
    if (!(norm > 0.0)) throw SingularMatrixError("fit: zero design column");
    out.scale[j] = norm;
    out.X.col(j) /= norm;
  }
  return out;
}

Vector solve_weighted_ls(const Equilibrated& eq, const Vector& w, const Vector& y) {
  const Matrix Xw = w.asDiagonal() * eq.X;
  const Matrix XtX = eq.X.transpose() * Xw;
  const Vector rhs = Xw.transpose() * y;
  const Vector b_scaled = cholesky_solve(XtX, rhs);
  return b_scaled.cwiseQuotient(eq.scale);
}

DpdFit finish_fit(const RegressionData& data, double beta, const Vector& coef, double s2,
                  int iterations, bool converged, double grad_norm) {
  DpdFit fit;
  fit.beta_tuning = beta;
  fit.coefficients = coef;
  fit.sigma2 = s2;
  fit.residuals = data.y() - data.X() * coef;
  fit.g = fit.residuals.array().square() / s2;
  fit.v = v_vector(fit.g, beta);
  fit.weights = weights_of(fit.g, beta);
  fit.iterations = iterations;
  fit.converged = converged;
  fit.final_gradient_norm = grad_norm;
  return fit;
}

DpdFit fit_impl(const RegressionData& data, double beta, const FitOptions& opts,
                const Vector* warm_coef, const double* warm_sigma2) {
  if (!(beta >= 0.0)) throw DataError("fit_null_dpd: beta_tuning must be >= 0");
  const Matrix& X = data.X();
  const Vector& y = data.y();
  const double n = static_cast<double>(data.n());
  const Equilibrated eq = equilibrate(X);

  Vector coef;
  double s2 = 0.0;
  if (warm_coef != nullptr) {
    coef = *warm_coef;
    s2 = *warm_sigma2;
  } else {
    coef = solve_weighted_ls(eq, Vector::Ones(y.size()), y);
    const Vector resid = y - X * coef;
    s2 = resid.squaredNorm() / n;
  }
  // exact interpolation leaves residuals at roundoff level; compare sigma^2
  // against the response scale as well as the hard floor
  const double degenerate_floor =
      std::max(kSigmaFloor, 1e-24 * y.squaredNorm() / n);
  if (!(s2 > degenerate_floor)) {
    throw DegenerateFitError("fit_null_dpd: exact interpolation, sigma^2 ~ 0");
  }

  if (beta == 0.0) {
    if (warm_coef != nullptr) {
      // beta = 0 has a closed form; ignore the warm start
      coef = solve_weighted_ls(eq, Vector::Ones(y.size()), y);
      s2 = (y - X * coef).squaredNorm() / n;
      if (!(s2 > kSigmaFloor)) throw DegenerateFitError("fit_null_dpd: sigma^2 ~ 0");
    }
    DpdFit fit = finish_fit(data, beta, coef, s2, 0, true, 0.0);
    const Vector grad = X.transpose() * fit.residuals;
    fit.final_gradient_norm = std::max(std::abs(fit.v.sum()), grad.cwiseAbs().maxCoeff());
    return fit;
  }

  const double eps_mach = std::numeric_limits<double>::epsilon();
  // once inside the tolerance band, run a few polish sweeps and keep the best
  // iterate, so results do not depend on exactly where in the band we stopped
  int polish_left = -1;
  bool have_best = false;
  Vector best_coef;
  double best_s2 = 0.0, best_grad = 0.0;
  int best_it = 0;

  for (int it = 1; it <= opts.max_outer_iterations; ++it) {
    Vector resid = y - X * coef;
    Vector g = resid.array().square() / s2;
    Vector w = weights_of(g, beta);
    coef = solve_weighted_ls(eq, w, y);
    resid = y - X * coef;
    s2 = solve_sigma2(resid, beta, s2, opts);
    if (!(s2 > degenerate_floor)) throw DegenerateFitError("fit_null_dpd: sigma^2 ~ 0");

    g = resid.array().square() / s2;
    w = weights_of(g, beta);
    const Vector v = v_vector(g, beta);
    const Vector grad = X.transpose() * w.cwiseProduct(resid).matrix();
    const double grad1 = std::abs(v.sum());
    const double grad2 = grad.cwiseAbs().maxCoeff();
    // absolute tolerance plus a backward-error allowance: the gradient cannot
    // be evaluated below roundoff of its own terms on large-magnitude designs
    const double term_scale =
        (X.cwiseAbs().transpose() * w.cwiseProduct(resid.cwiseAbs()).matrix()).maxCoeff();
    const double allowance = 64.0 * eps_mach * term_scale;
    const double grad_norm = std::max(grad1, grad2);
    const bool within = grad1 <= opts.tol_eq && grad2 <= opts.tol_eq + allowance;

    if (within && (!have_best || grad_norm <= best_grad)) {
      have_best = true;
      best_coef = coef;
      best_s2 = s2;
      best_grad = grad_norm;
      best_it = it;
    }
    if (within && polish_left < 0) polish_left = 3;
    if (polish_left == 0 || (have_best && it == opts.max_outer_iterations)) {
      return finish_fit(data, beta, best_coef, best_s2, best_it, true, best_grad);
    }
    if (polish_left > 0) --polish_left;
    if (!have_best && it == opts.max_outer_iterations) {
      throw NoConvergenceError("fit_null_dpd: estimating equations not satisfied after " +
                               std::to_string(it) + " iterations (gradient " +
                               std::to_string(grad_norm) + ")");
    }
  }
  throw NoConvergenceError("fit_null_dpd: unreachable");
}

}  // namespace

DpdFit fit_null_dpd(const RegressionData& data, double beta_tuning, const FitOptions& opts) {
  return fit_impl(data, beta_tuning, opts, nullptr, nullptr);
}

DpdFit fit_null_dpd(const RegressionData& data, double beta_tuning, const FitOptions& opts,
                    const DpdFit& warm_start) {
  return fit_impl(data, beta_tuning, opts, &warm_start.coefficients, &warm_start.sigma2);
}

}  // namespace betascore
