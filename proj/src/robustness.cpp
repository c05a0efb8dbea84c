#include "betascore/robustness.hpp"

#include <cmath>
#include <limits>

namespace betascore {

double a1_numerator(double beta_tuning) {
  if (!(beta_tuning >= 0.0)) throw DataError("a1_numerator: beta_tuning must be >= 0");
  const double b = beta_tuning;
  return (2.0 * b * b + 1.0) / (2.0 * std::pow(2.0 * b + 1.0, 2.5)) -
         b * b / (4.0 * std::pow(b + 1.0, 3.0));
}

double are(double beta_tuning) {
  if (!(beta_tuning >= 0.0)) throw DataError("are: beta_tuning must be >= 0");
  const double b = beta_tuning;
  return 8.0 * std::pow(b + 1.0, 5.0) / ((b * b + 2.0) * (b * b + 2.0)) * a1_numerator(b);
}

NullSandwich null_sandwich(const DpdFit& fit, const Matrix& Z, const Matrix& X,
                           double hprime0) {
  if (!fit.converged) throw NotConvergedError("null_sandwich requires a converged fit");
  if (Z.rows() != fit.residuals.size() || X.rows() != fit.residuals.size()) {
    throw DataError("null_sandwich: design row mismatch");
  }
  if (X.cols() != fit.coefficients.size()) throw DataError("null_sandwich: X column mismatch");
  if (hprime0 == 0.0) throw DataError("null_sandwich: h'(0) must be nonzero");

  const double n = static_cast<double>(Z.rows());
  const int r = static_cast<int>(Z.cols());
  const int p1 = static_cast<int>(X.cols());
  const double b = fit.beta_tuning;
  const double s2 = fit.sigma2;
  const double two_pi_pow_b = std::pow(2.0 * M_PI, b);
  const double two_pi_pow_hb = std::pow(2.0 * M_PI, 0.5 * b);

  NullSandwich sw;
  sw.beta_tuning = b;
  sw.sigma2 = s2;
  sw.hprime0 = hprime0;
  sw.r = r;
  sw.p = p1 - 1;
  sw.a1 = a1_numerator(b) / (two_pi_pow_b * std::pow(s2, b + 2.0));
  sw.a2 = 1.0 / (two_pi_pow_b * std::pow(s2, b + 2.0) * std::pow(2.0 * b + 1.0, 1.5));
  sw.b1 = (b * b + 2.0) / (4.0 * std::pow(b + 1.0, 2.5)) /
          (two_pi_pow_hb * std::pow(s2, 0.5 * b + 2.0));
  sw.b2 = 1.0 / (two_pi_pow_hb * std::pow(s2, 0.5 * b + 1.0) * std::pow(b + 1.0, 1.5));

  const Vector zbar = Z.colwise().mean().transpose();
  sw.W = Matrix(r + 1, r + 1);
  sw.W.topLeftCorner(r, r) = s2 * s2 * hprime0 * hprime0 * (Z.transpose() * Z) / n;
  sw.W.topRightCorner(r, 1) = s2 * hprime0 * zbar;
  sw.W.bottomLeftCorner(1, r) = s2 * hprime0 * zbar.transpose();
  sw.W(r, r) = 1.0;

  const Matrix Sxx = X.transpose() * X / n;
  const int dim = r + 1 + p1;
  sw.Kbar = Matrix::Zero(dim, dim);
  sw.Jbar = Matrix::Zero(dim, dim);
  sw.Kbar.topLeftCorner(r + 1, r + 1) = sw.a1 * sw.W;
  sw.Kbar.bottomRightCorner(p1, p1) = sw.a2 * Sxx;
  sw.Jbar.topLeftCorner(r + 1, r + 1) = sw.b1 * sw.W;
  sw.Jbar.bottomRightCorner(p1, p1) = sw.b2 * Sxx;
  return sw;
}

namespace {

// z_i' (Z'Z)^{-1} z_i for every row, via the Cholesky factor of the
// column-equilibrated cross-product.
Vector z_quadratic_forms(const Matrix& Z) {
  Matrix Q = Z;
  for (Eigen::Index j = 0; j < Q.cols(); ++j) {
    const double norm = Q.col(j).norm();
    if (!(norm > 0.0)) throw SingularMatrixError("z_quadratic_forms: zero column");
    Q.col(j) /= norm;
  }
  const Matrix L = cholesky_factor(Q.transpose() * Q);
  const Matrix T = L.triangularView<Eigen::Lower>().solve(Matrix(Q.transpose()));
  return T.colwise().squaredNorm().transpose();
}

double if2_core(double g, double beta) {
  return std::exp(std::max(-beta * g, -700.0)) * (g - 1.0) * (g - 1.0);
}

}  // namespace

Vector if2_per_observation(const RegressionData& data, const Theta0& theta0,
                           double beta_tuning, const Vector& y_probe) {
  if (!(beta_tuning >= 0.0)) throw DataError("if2: beta_tuning must be >= 0");
  if (!(theta0.sigma2 > 0.0)) throw DataError("if2: sigma2 must be > 0");
  if (theta0.coefficients.size() != data.X().cols()) {
    throw DataError("if2: coefficient length mismatch");
  }
  if (y_probe.size() != data.n()) throw DataError("if2: y_probe length mismatch");

  const Vector quad = z_quadratic_forms(data.Z());
  const Vector mean = data.X() * theta0.coefficients;
  const double denom = 4.0 * a1_numerator(beta_tuning);
  Vector out(data.n());
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    const double g = (y_probe[i] - mean[i]) * (y_probe[i] - mean[i]) / theta0.sigma2;
    out[i] = if2_core(g, beta_tuning) / denom * quad[i];
  }
  return out;
}

InfluenceReport influence_report(const RegressionData& data, const Theta0& theta0,
                                 double beta_tuning, const Vector& y_probe) {
  InfluenceReport rep;
  rep.per_observation_if2 = if2_per_observation(data, theta0, beta_tuning, y_probe);
  rep.unbounded = beta_tuning == 0.0;

  const Vector quad = z_quadratic_forms(data.Z());
  const double denom = 4.0 * a1_numerator(beta_tuning);

  // sup over y of exp(-beta g)(g-1)^2: the analytic stationary point
  // g = (beta+2)/beta, the boundary g = 0, and a log-spaced residual grid
  double sup_core = if2_core(0.0, beta_tuning);
  if (beta_tuning > 0.0) {
    sup_core = std::max(sup_core, if2_core((beta_tuning + 2.0) / beta_tuning, beta_tuning));
  }
  for (double offset = 1e-3; offset <= 1e6; offset *= 2.0) {
    sup_core = std::max(sup_core, if2_core(offset * offset / theta0.sigma2, beta_tuning));
  }

  rep.ges_per_observation = quad * (sup_core / denom);
  rep.ges = rep.ges_per_observation.maxCoeff();
  return rep;
}

double ges_simple_linear(double beta_tuning, int n) {
  if (n < 2) throw DataError("ges_simple_linear: n must be >= 2");
  if (!(beta_tuning >= 0.0)) throw DataError("ges_simple_linear: beta_tuning must be >= 0");
  if (beta_tuning < 1e-12) return std::numeric_limits<double>::infinity();
  const double b = beta_tuning;
  const double nn = static_cast<double>(n);
  return 6.0 / (b * b * std::exp(b + 2.0) * a1_numerator(b)) * nn * nn /
         ((2.0 * nn + 1.0) * (nn * nn - 1.0));
}

namespace {

// delta' [M' V M]^{-1} delta for V = Jbar^{-1} Kbar Jbar^{-1} and
// M = h'(0) * selector of the alpha block. With the block-diagonal sandwich
// this reduces to (b1^2/a1) / h'(0)^2 times the quadratic form of delta under
// the Schur complement of W's alpha block, so h'(0) cancels against the
// h'(0)^2 carried by W.
double ncp_quadratic_form(const NullSandwich& sw, const Vector& delta) {
  const int r = sw.r;
  const Matrix schur = sw.W.topLeftCorner(r, r) -
                       sw.W.topRightCorner(r, 1) * sw.W.bottomLeftCorner(1, r) / sw.W(r, r);
  const double quad = delta.dot(schur * delta);
  return std::max(0.0, sw.b1 * sw.b1 / sw.a1 * quad / (sw.hprime0 * sw.hprime0));
}

}  // namespace

PowerReport pitman_power(const Vector& delta, const NullSandwich& sandwich, const Matrix& Z,
                         double alpha) {
  if (delta.size() != sandwich.r) throw DataError("pitman_power: delta length != r");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DataError("pitman_power: alpha outside (0, 1)");
  if (Z.cols() != sandwich.r) throw DataError("pitman_power: Z column count != r");

  PowerReport rep;
  rep.ncp = ncp_quadratic_form(sandwich, delta);
  const double threshold = chi_square_quantile(1.0 - alpha, sandwich.r);
  rep.power = noncentral_chi_square_sf(threshold, sandwich.r, rep.ncp);
  rep.contaminated_ncp = rep.ncp;
  rep.contaminated_power = rep.power;
  rep.pif = 0.0;
  return rep;
}

PowerReport contaminated_power(const Vector& delta, double epsilon, const Vector& y_contam,
                               const NullSandwich& sandwich, const RegressionData& data,
                               const Theta0& theta0, double alpha) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw DataError("contaminated_power: epsilon outside [0, 1]");
  }
  if (y_contam.size() != data.n()) throw DataError("contaminated_power: y_contam length mismatch");
  const Matrix& Z = data.Z();
  PowerReport rep = pitman_power(delta, sandwich, Z, alpha);

  // IF of the Lagrange-multiplier estimate, summed over observations.
  // With psi_i = exp(-(beta/2) g_i)(g_i - 1) at the contamination point,
  // IF_i(lambda) = (b1_num / (2 a1_num)) psi_i (z_i - zbar); the sigma^2 and
  // 2 pi powers cancel between the score and the sandwich constants, as does
  // h'(0).
  const double b = sandwich.beta_tuning;
  const double b1_num = (b * b + 2.0) / (4.0 * std::pow(b + 1.0, 2.5));
  const double ratio = b1_num / (2.0 * a1_numerator(b));
  const Vector mean = data.X() * theta0.coefficients;
  const Vector zbar = Z.colwise().mean().transpose();
  double delta_if = 0.0;
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    const double g = (y_contam[i] - mean[i]) * (y_contam[i] - mean[i]) / theta0.sigma2;
    const double psi = std::exp(std::max(-0.5 * b * g, -700.0)) * (g - 1.0);
    delta_if += ratio * psi * delta.dot(Vector(Z.row(i).transpose()) - zbar);
  }

  const Vector if2 = if2_per_observation(data, theta0, b, y_contam);
  rep.contaminated_ncp = rep.ncp + 2.0 * epsilon * delta_if + epsilon * epsilon * if2.mean();

  const double threshold = chi_square_quantile(1.0 - alpha, sandwich.r);
  rep.contaminated_power = noncentral_chi_square_sf(threshold, sandwich.r,
                                                    std::max(0.0, rep.contaminated_ncp));
  rep.pif = delta_if * (noncentral_chi_square_sf(threshold, sandwich.r + 2, rep.ncp) -
                        noncentral_chi_square_sf(threshold, sandwich.r, rep.ncp));
  return rep;
}

}  // namespace betascore
