#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "betascore/lmtest.hpp"

namespace betascore {

/// Source of the heteroscedasticity design in a simulated scenario.
enum class ZSource {
  SameAsX,      ///< Z = non-intercept columns of X
  White,        ///< Z = build_white_design(X)
  Independent,  ///< Z = z_r fresh standard normal columns
};

/// Monte Carlo scenario. The design is generated once from the seed (fixed
/// design) and reused across replications; per-replication randomness comes
/// from counter-derived streams, so reports are bit-identical regardless of
/// the number of worker threads.
struct SimScenario {
  int n = 250;
  int design_p = 2;             ///< number of standard-normal regressors in X
  ZSource z_source = ZSource::SameAsX;
  int z_r = 1;                  ///< columns of Z when z_source = Independent
  ScedasticKind scedastic_kind = ScedasticKind::Additive;
  Vector scedastic_alpha;       ///< length r; empty means the null (all zero)
  double sigma2 = 1.0;
  double contamination_fraction = 0.0;
  double contamination_mu = 0.0;     ///< LogNormal(mu, sigma) replacement errors
  double contamination_sigma = 1.0;
  int replications = 1000;
  double alpha = 0.05;
  std::vector<double> beta_grid = {0.0, 0.3};
  std::uint64_t seed = 1;
};

struct SimCell {
  double beta_tuning = 0.0;
  int bp_rejections = 0;
  int koenker_rejections = 0;
  int failed_fits = 0;
  double bp_rate = 0.0;
  double koenker_rate = 0.0;
  double bp_se = 0.0;       ///< sqrt(rate (1-rate) / replications)
  double koenker_se = 0.0;
};

struct SimReport {
  SimScenario scenario;
  int df = 0;
  double threshold = 0.0;
  std::vector<SimCell> cells;  ///< one per grid value
};

/// Parses the flat key-value scenario format (one `key = value` per line,
/// `#` comments). Unknown keys are an error.
SimScenario parse_scenario(std::istream& in);
SimScenario parse_scenario_file(const std::string& path);

/// Runs the scenario: each replication draws errors eps_i ~ N(0, sigma2
/// h(z_i' alpha)) (contaminated rows replaced by LogNormal draws), fits the
/// null model at every grid beta, and records rejections at the chi^2_{r,
/// alpha} threshold. Fit failures are counted per cell; the run aborts only
/// when more than half of all fits fail. workers <= 0 picks a default.
SimReport run_scenario(const SimScenario& scenario, int workers = 0);

}  // namespace betascore
