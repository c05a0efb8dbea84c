#include "betascore/mc.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "betascore/rng.hpp"

namespace betascore {

namespace {

constexpr std::uint64_t kDesignStream = 0xd5a61e97u;  // disjoint from replication ids

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  const auto end = s.find_last_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  return s.substr(begin, end - begin + 1);
}

std::vector<double> parse_double_list(const std::string& value, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw DataError("scenario: bad number '" + item + "' for key " + key);
    }
  }
  if (out.empty()) throw DataError("scenario: empty list for key " + key);
  return out;
}

double parse_one_double(const std::string& value, const std::string& key) {
  const auto vals = parse_double_list(value, key);
  if (vals.size() != 1) throw DataError("scenario: key " + key + " expects a single number");
  return vals[0];
}

}  // namespace

SimScenario parse_scenario(std::istream& in) {
  SimScenario s;
  bool alpha_vec_given = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw DataError("scenario: line " + std::to_string(line_no) + " is not 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "n") {
      s.n = static_cast<int>(parse_one_double(value, key));
    } else if (key == "design_p") {
      s.design_p = static_cast<int>(parse_one_double(value, key));
    } else if (key == "z_source") {
      if (value == "x") {
        s.z_source = ZSource::SameAsX;
      } else if (value == "white") {
        s.z_source = ZSource::White;
      } else if (value.rfind("normal:", 0) == 0) {
        s.z_source = ZSource::Independent;
        s.z_r = static_cast<int>(parse_one_double(value.substr(7), key));
      } else {
        throw DataError("scenario: z_source must be x, white, or normal:<r>");
      }
    } else if (key == "scedastic_kind") {
      if (value == "additive") {
        s.scedastic_kind = ScedasticKind::Additive;
      } else if (value == "multiplicative") {
        s.scedastic_kind = ScedasticKind::Multiplicative;
      } else {
        throw DataError("scenario: scedastic_kind must be additive or multiplicative");
      }
    } else if (key == "scedastic_alpha") {
      const auto vals = parse_double_list(value, key);
      s.scedastic_alpha = Eigen::Map<const Vector>(vals.data(), vals.size());
      alpha_vec_given = true;
    } else if (key == "sigma2") {
      s.sigma2 = parse_one_double(value, key);
    } else if (key == "contamination_fraction") {
      s.contamination_fraction = parse_one_double(value, key);
    } else if (key == "contamination_dist") {
      // lognormal(mu,sigma)
      if (value.rfind("lognormal(", 0) != 0 || value.back() != ')') {
        throw DataError("scenario: contamination_dist must be lognormal(mu,sigma)");
      }
      const auto inner = parse_double_list(value.substr(10, value.size() - 11), key);
      if (inner.size() != 2) throw DataError("scenario: lognormal takes two parameters");
      s.contamination_mu = inner[0];
      s.contamination_sigma = inner[1];
    } else if (key == "replications") {
      s.replications = static_cast<int>(parse_one_double(value, key));
    } else if (key == "alpha") {
      s.alpha = parse_one_double(value, key);
    } else if (key == "beta_grid") {
      s.beta_grid = parse_double_list(value, key);
    } else if (key == "seed") {
      s.seed = static_cast<std::uint64_t>(parse_one_double(value, key));
    } else {
      throw DataError("scenario: unknown key '" + key + "'");
    }
  }
  if (!alpha_vec_given) s.scedastic_alpha = Vector();
  return s;
}

SimScenario parse_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("scenario: cannot open " + path);
  return parse_scenario(in);
}

namespace {

struct Counts {
  std::vector<long> bp;
  std::vector<long> koenker;
  std::vector<long> failed;
};

}  // namespace

SimReport run_scenario(const SimScenario& scenario, int workers) {
  if (scenario.n < 4) throw DataError("scenario: n too small");
  if (scenario.replications < 1) throw DataError("scenario: replications must be >= 1");
  if (!(scenario.alpha > 0.0 && scenario.alpha < 1.0)) {
    throw DataError("scenario: alpha outside (0, 1)");
  }
  if (!(scenario.contamination_fraction >= 0.0 && scenario.contamination_fraction < 1.0)) {
    throw DataError("scenario: contamination_fraction outside [0, 1)");
  }
  if (!(scenario.sigma2 > 0.0)) throw DataError("scenario: sigma2 must be > 0");
  for (std::size_t i = 0; i < scenario.beta_grid.size(); ++i) {
    if (!(scenario.beta_grid[i] >= 0.0 && scenario.beta_grid[i] <= 2.0)) {
      throw DataError("scenario: beta_grid values must lie in [0, 2]");
    }
    if (i > 0 && !(scenario.beta_grid[i] > scenario.beta_grid[i - 1])) {
      throw DataError("scenario: beta_grid must be strictly increasing");
    }
  }

  // fixed design, generated once from the seed
  const int n = scenario.n;
  Rng design_rng(scenario.seed, kDesignStream);
  Matrix X(n, scenario.design_p + 1);
  X.col(0).setOnes();
  for (int j = 0; j < scenario.design_p; ++j) {
    for (int i = 0; i < n; ++i) X(i, j + 1) = design_rng.next_normal();
  }
  Matrix Z;
  switch (scenario.z_source) {
    case ZSource::SameAsX:
      Z = X.rightCols(scenario.design_p);
      break;
    case ZSource::White:
      Z = build_white_design(X);
      break;
    case ZSource::Independent: {
      if (scenario.z_r < 1) throw DataError("scenario: z_r must be >= 1");
      Z = Matrix(n, scenario.z_r);
      for (int j = 0; j < scenario.z_r; ++j) {
        for (int i = 0; i < n; ++i) Z(i, j) = design_rng.next_normal();
      }
      break;
    }
  }

  const int r = static_cast<int>(Z.cols());
  Vector alpha_vec = scenario.scedastic_alpha;
  if (alpha_vec.size() == 0) alpha_vec = Vector::Zero(r);
  if (alpha_vec.size() != r) {
    throw DataError("scenario: scedastic_alpha length " + std::to_string(alpha_vec.size()) +
                    " does not match r = " + std::to_string(r));
  }
  const ScedasticModel sced{scenario.scedastic_kind, alpha_vec, scenario.sigma2};

  // per-row standard deviations of the scedastic alternative
  Vector row_sd(n);
  for (int i = 0; i < n; ++i) {
    row_sd[i] = std::sqrt(scedastic_variance(sced, Z.row(i).transpose()));
  }

  const Vector true_coef = Vector::Ones(scenario.design_p + 1);
  const Vector mean = X * true_coef;
  const int n_contaminated =
      static_cast<int>(std::lround(scenario.contamination_fraction * n));
  const double threshold = chi_square_quantile(1.0 - scenario.alpha, r);
  const std::size_t n_beta = scenario.beta_grid.size();
  const FitOptions fit_opts;

  auto run_range = [&](int begin, int end, Counts& counts) {
    Vector y(n);
    std::vector<int> rows(n);
    for (int rep = begin; rep < end; ++rep) {
      Rng rng(scenario.seed, static_cast<std::uint64_t>(rep));
      for (int i = 0; i < n; ++i) y[i] = mean[i] + row_sd[i] * rng.next_normal();
      if (n_contaminated > 0) {
        // partial Fisher-Yates draw of distinct rows
        for (int i = 0; i < n; ++i) rows[i] = i;
        for (int k = 0; k < n_contaminated; ++k) {
          const int j = k + static_cast<int>(rng.next_below(n - k));
          std::swap(rows[k], rows[j]);
          y[rows[k]] = mean[rows[k]] +
                       rng.next_lognormal(scenario.contamination_mu, scenario.contamination_sigma);
        }
      }
      const RegressionData data(y, X, Z);
      const DpdFit* warm = nullptr;
      DpdFit last;
      for (std::size_t bi = 0; bi < n_beta; ++bi) {
        try {
          DpdFit fit = warm != nullptr
                           ? fit_null_dpd(data, scenario.beta_grid[bi], fit_opts, *warm)
                           : fit_null_dpd(data, scenario.beta_grid[bi], fit_opts);
          const TestResult bp = bp_beta_test(fit, Z);
          const TestResult ko = koenker_beta_test(fit, Z);
          if (bp.statistic > threshold) ++counts.bp[bi];
          if (ko.statistic > threshold) ++counts.koenker[bi];
          last = std::move(fit);
          warm = &last;
        } catch (const Error&) {
          ++counts.failed[bi];
          warm = nullptr;
        }
      }
    }
  };

  int n_workers = workers > 0 ? workers
                              : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  n_workers = std::min<int>(n_workers, scenario.replications);
  std::vector<Counts> partial(n_workers);
  for (auto& c : partial) {
    c.bp.assign(n_beta, 0);
    c.koenker.assign(n_beta, 0);
    c.failed.assign(n_beta, 0);
  }

  if (n_workers == 1) {
    run_range(0, scenario.replications, partial[0]);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (scenario.replications + n_workers - 1) / n_workers;
    for (int w = 0; w < n_workers; ++w) {
      const int begin = w * chunk;
      const int end = std::min(scenario.replications, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(run_range, begin, end, std::ref(partial[w]));
    }
    for (auto& t : pool) t.join();
  }

  SimReport report;
  report.scenario = scenario;
  report.df = r;
  report.threshold = threshold;
  long total_failed = 0;
  for (std::size_t bi = 0; bi < n_beta; ++bi) {
    SimCell cell;
    cell.beta_tuning = scenario.beta_grid[bi];
    for (const auto& c : partial) {
      cell.bp_rejections += static_cast<int>(c.bp[bi]);
      cell.koenker_rejections += static_cast<int>(c.koenker[bi]);
      cell.failed_fits += static_cast<int>(c.failed[bi]);
    }
    total_failed += cell.failed_fits;
    const double reps = static_cast<double>(scenario.replications);
    cell.bp_rate = cell.bp_rejections / reps;
    cell.koenker_rate = cell.koenker_rejections / reps;
    cell.bp_se = std::sqrt(cell.bp_rate * (1.0 - cell.bp_rate) / reps);
    cell.koenker_se = std::sqrt(cell.koenker_rate * (1.0 - cell.koenker_rate) / reps);
    report.cells.push_back(cell);
  }
  const long total_fits = static_cast<long>(scenario.replications) * static_cast<long>(n_beta);
  if (2 * total_failed > total_fits) {
    throw NoConvergenceError("run_scenario: more than half of the fits failed");
  }
  return report;
}

}  // namespace betascore
