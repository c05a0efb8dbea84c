// betascore: robust beta-score Lagrange-multiplier tests for
// heteroscedasticity in linear regression, with scans, power analysis,
// influence diagnostics, and a Monte Carlo harness.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "betascore/csv.hpp"
#include "betascore/mc.hpp"
#include "betascore/robustness.hpp"
#include "betascore/version.hpp"

using json = nlohmann::ordered_json;
using namespace betascore;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDataError = 2;
constexpr int kExitNumericError = 3;
constexpr int kExitPartialScan = 4;

std::vector<double> parse_grid_spec(const std::string& spec) {
  // either a comma list "0,0.3,0.6" or a range "start:stop:step"
  std::vector<double> out;
  if (spec.find(':') != std::string::npos) {
    double start = 0, stop = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream ss(spec);
    if (!(ss >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0) {
      throw DataError("bad grid spec '" + spec + "', expected start:stop:step");
    }
    for (double v = start; v <= stop + 1e-12; v += step) out.push_back(v);
  } else {
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      try {
        std::size_t pos = 0;
        out.push_back(std::stod(item, &pos));
        if (pos != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw DataError("bad number '" + item + "' in grid spec");
      }
    }
  }
  if (out.empty()) throw DataError("empty grid spec '" + spec + "'");
  return out;
}

std::vector<std::string> split_names(const std::string& spec) {
  std::vector<std::string> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct DataConfig {
  std::string input;
  std::string response;
  std::string x_spec;
  std::string z_spec;
  bool white = false;
  std::vector<std::size_t> drop_rows;

  void add_options(CLI::App* cmd) {
    cmd->add_option("--input", input, "CSV input file (header row required)")->required();
    cmd->add_option("--response", response, "response column name")->required();
    cmd->add_option("--x", x_spec, "comma-separated regressor columns")->required();
    cmd->add_option("--z", z_spec,
                    "comma-separated heteroscedasticity columns (default: same as --x)");
    cmd->add_flag("--white", white, "use the White design built from the regressors");
    cmd->add_option("--drop-rows", drop_rows,
                    "1-based data rows to drop (e.g. --drop-rows 43 72 76)")
        ->delimiter(',');
  }

  RegressionData load() const {
    if (white && !z_spec.empty()) throw DataError("--z and --white are mutually exclusive");
    CsvTable table = CsvTable::read_file(input);
    if (!drop_rows.empty()) table.drop_rows(drop_rows);

    const std::vector<std::string> x_names = split_names(x_spec);
    if (x_names.empty()) throw DataError("--x lists no columns");
    for (const auto& name : x_names) {
      if (name == response) throw DataError("response column '" + name + "' cannot be in --x");
    }
    const Vector y = table.numeric_column(response);
    const Eigen::Index n = y.size();
    Matrix X(n, static_cast<Eigen::Index>(x_names.size()) + 1);
    X.col(0).setOnes();
    for (std::size_t j = 0; j < x_names.size(); ++j) {
      X.col(static_cast<Eigen::Index>(j) + 1) = table.numeric_column(x_names[j]);
    }

    Matrix Z;
    if (white) {
      Z = build_white_design(X);
    } else {
      const std::vector<std::string> z_names =
          z_spec.empty() ? x_names : split_names(z_spec);
      Z = Matrix(n, static_cast<Eigen::Index>(z_names.size()));
      for (std::size_t j = 0; j < z_names.size(); ++j) {
        Z.col(static_cast<Eigen::Index>(j)) = table.numeric_column(z_names[j]);
      }
    }
    return RegressionData(y, X, Z);
  }

  json echo() const {
    json cfg;
    cfg["input"] = input;
    cfg["response"] = response;
    cfg["x_columns"] = split_names(x_spec);
    if (white) {
      cfg["white"] = true;
    } else {
      cfg["z_columns"] = z_spec.empty() ? split_names(x_spec) : split_names(z_spec);
    }
    cfg["drop_rows"] = drop_rows;
    return cfg;
  }
};

json record_envelope(const std::string& command) {
  json rec;
  rec["schema_version"] = kOutputSchemaVersion;
  rec["version"] = kVersion;
  rec["command"] = command;
  return rec;
}

json test_result_json(const TestResult& t) {
  json j;
  j["kind"] = to_string(t.kind);
  j["beta"] = t.beta_tuning;
  j["statistic"] = t.statistic;
  j["df"] = t.df;
  j["p_value"] = t.p_value;
  j["ess"] = t.ess;
  j["tss"] = t.tss;
  if (t.denominator) j["denominator"] = *t.denominator;
  return j;
}

void print_table(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows) {
    if (widths.size() < row.size()) widths.resize(row.size(), 0);
    for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
  }
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << std::left << std::setw(static_cast<int>(widths[i]) + 2) << row[i];
    }
    out << '\n';
  }
}

std::string fmt_stat(double v) {
  std::ostringstream ss;
  ss << std::setprecision(6) << v;
  return ss.str();
}

// ---------------------------------------------------------------- test ----

int cmd_test(const DataConfig& data_cfg, const std::string& beta_spec, double alpha,
             const std::string& format) {
  const RegressionData data = data_cfg.load();
  const std::vector<double> betas = parse_grid_spec(beta_spec);
  const Matrix Z = data_cfg.white ? build_white_design(data.X()) : data.Z();

  json rec = record_envelope("test");
  rec["config"] = data_cfg.echo();
  rec["config"]["beta"] = betas;
  rec["config"]["alpha"] = alpha;
  rec["config"]["format"] = format;
  rec["results"] = json::array();
  rec["fits"] = json::array();

  std::vector<std::vector<std::string>> table_rows;
  table_rows.push_back({"kind", "beta", "statistic", "df", "p_value"});
  std::vector<std::vector<std::string>> csv_rows;

  const DpdFit* warm = nullptr;
  DpdFit last;
  for (const double beta : betas) {
    DpdFit fit = warm != nullptr ? fit_null_dpd(data, beta, {}, *warm)
                                 : fit_null_dpd(data, beta, {});
    for (const TestResult& t : {bp_beta_test(fit, Z), koenker_beta_test(fit, Z)}) {
      rec["results"].push_back(test_result_json(t));
      table_rows.push_back({to_string(t.kind), fmt_stat(t.beta_tuning), fmt_stat(t.statistic),
                            std::to_string(t.df), format_scientific(t.p_value, 4)});
      csv_rows.push_back({to_string(t.kind), format_double(t.beta_tuning),
                          format_double(t.statistic), std::to_string(t.df),
                          format_double(t.p_value), format_double(t.ess),
                          format_double(t.tss),
                          t.denominator ? format_double(*t.denominator) : "",
                          std::to_string(fit.iterations), fit.converged ? "true" : "false"});
    }
    json fj;
    fj["beta"] = beta;
    fj["iterations"] = fit.iterations;
    fj["converged"] = fit.converged;
    fj["final_gradient_norm"] = fit.final_gradient_norm;
    fj["sigma2"] = fit.sigma2;
    rec["fits"].push_back(fj);
    last = std::move(fit);
    warm = &last;
  }

  if (format == "json") {
    std::cout << rec.dump(2) << '\n';
  } else if (format == "csv") {
    write_csv_row(std::cout, {"kind", "beta", "statistic", "df", "p_value", "ess", "tss",
                              "denominator", "iterations", "converged"});
    for (const auto& row : csv_rows) write_csv_row(std::cout, row);
  } else {
    print_table(std::cout, table_rows);
  }
  return kExitOk;
}

// ---------------------------------------------------------------- scan ----

int cmd_scan(const DataConfig& data_cfg, const std::string& grid_spec, double alpha,
             const std::string& format, const std::string& plot_out) {
  const RegressionData data = data_cfg.load();
  const std::vector<double> grid =
      grid_spec.empty() ? default_beta_grid() : parse_grid_spec(grid_spec);
  const BetaScan scan = scan_beta(data, grid, alpha, data_cfg.white);

  auto plot_rows = [&scan](std::ostream& out) {
    write_csv_row(out, {"beta", "bp_stat", "koenker_stat", "threshold"});
    for (const auto& e : scan.entries) {
      if (e.ok()) {
        write_csv_row(out, {format_double(e.beta_tuning), format_double(e.bp->statistic),
                            format_double(e.koenker->statistic), format_double(scan.threshold)});
      } else {
        write_csv_row(out, {format_double(e.beta_tuning), "error", "error",
                            format_double(scan.threshold)});
      }
    }
  };

  if (!plot_out.empty()) {
    std::ofstream out(plot_out);
    if (!out) throw DataError("cannot open --plot-out file " + plot_out);
    plot_rows(out);
  }

  if (format == "json") {
    json rec = record_envelope("scan");
    rec["config"] = data_cfg.echo();
    rec["config"]["beta_grid"] = scan.grid;
    rec["config"]["alpha"] = alpha;
    rec["config"]["format"] = format;
    rec["df"] = scan.df;
    rec["threshold"] = scan.threshold;
    rec["entries"] = json::array();
    for (const auto& e : scan.entries) {
      json ej;
      ej["beta"] = e.beta_tuning;
      if (e.ok()) {
        ej["bp"] = test_result_json(*e.bp);
        ej["koenker"] = test_result_json(*e.koenker);
        ej["fit_iterations"] = e.fit_iterations;
      } else {
        ej["error"] = e.error;
      }
      rec["entries"].push_back(ej);
    }
    std::cout << rec.dump(2) << '\n';
  } else if (format == "table") {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"beta", "bp_stat", "bp_p", "koenker_stat", "koenker_p", "threshold"});
    for (const auto& e : scan.entries) {
      if (e.ok()) {
        rows.push_back({fmt_stat(e.beta_tuning), fmt_stat(e.bp->statistic),
                        format_scientific(e.bp->p_value, 4), fmt_stat(e.koenker->statistic),
                        format_scientific(e.koenker->p_value, 4), fmt_stat(scan.threshold)});
      } else {
        rows.push_back({fmt_stat(e.beta_tuning), "error", "error", "error", "error",
                        fmt_stat(scan.threshold)});
      }
    }
    print_table(std::cout, rows);
  } else {
    plot_rows(std::cout);
  }

  const auto failed =
      std::count_if(scan.entries.begin(), scan.entries.end(),
                    [](const ScanEntry& e) { return !e.ok(); });
  if (failed == static_cast<long>(scan.entries.size())) return kExitNumericError;
  if (failed > 0) return kExitPartialScan;
  return kExitOk;
}

// ----------------------------------------------------------------- are ----

int cmd_are(const std::string& grid_spec) {
  const std::vector<double> grid =
      grid_spec.empty() ? default_beta_grid() : parse_grid_spec(grid_spec);
  write_csv_row(std::cout, {"beta", "are"});
  for (const double b : grid) {
    write_csv_row(std::cout, {format_double(b), format_double(are(b))});
  }
  return kExitOk;
}

// ----------------------------------------------------------- influence ----

int cmd_influence(const DataConfig& data_cfg, double beta, const std::string& coef_spec,
                  double sigma2_opt, const std::string& y_grid_spec,
                  std::vector<std::size_t> obs) {
  const RegressionData data = data_cfg.load();

  Theta0 theta0;
  if (coef_spec.empty() || sigma2_opt <= 0.0) {
    const DpdFit ols = fit_null_dpd(data, 0.0, {});
    theta0.coefficients = ols.coefficients;
    theta0.sigma2 = ols.sigma2;
  }
  if (!coef_spec.empty()) {
    const std::vector<double> c = parse_grid_spec(coef_spec);
    if (static_cast<Eigen::Index>(c.size()) != data.X().cols()) {
      throw DataError("--coef needs " + std::to_string(data.X().cols()) + " values");
    }
    theta0.coefficients = Eigen::Map<const Vector>(c.data(), static_cast<Eigen::Index>(c.size()));
  }
  if (sigma2_opt > 0.0) theta0.sigma2 = sigma2_opt;

  const std::vector<double> y_grid = parse_grid_spec(y_grid_spec);
  if (obs.empty()) {
    for (std::size_t i = 1; i <= static_cast<std::size_t>(data.n()); ++i) obs.push_back(i);
  }
  for (const std::size_t i : obs) {
    if (i < 1 || i > static_cast<std::size_t>(data.n())) {
      throw DataError("--obs index " + std::to_string(i) + " outside 1.." +
                      std::to_string(data.n()));
    }
  }

  write_csv_row(std::cout, {"obs", "y", "if2"});
  Vector probe = data.X() * theta0.coefficients;  // start at the regression mean
  for (const std::size_t i : obs) {
    const Eigen::Index idx = static_cast<Eigen::Index>(i) - 1;
    for (const double y : y_grid) {
      Vector y_probe = probe;
      y_probe[idx] = y;
      const Vector if2 = if2_per_observation(data, theta0, beta, y_probe);
      write_csv_row(std::cout,
                    {std::to_string(i), format_double(y), format_double(if2[idx])});
    }
  }
  return kExitOk;
}

// --------------------------------------------------------------- power ----

int cmd_power(const DataConfig& data_cfg, double beta, const std::string& delta_spec,
              double alpha, double hprime0, double epsilon, const std::string& y_contam_spec,
              const std::string& format) {
  const RegressionData data = data_cfg.load();
  const Matrix Z = data_cfg.white ? build_white_design(data.X()) : data.Z();
  const DpdFit fit = fit_null_dpd(data, beta, {});
  const NullSandwich sandwich = null_sandwich(fit, Z, data.X(), hprime0);

  const std::vector<double> dvals = parse_grid_spec(delta_spec);
  if (static_cast<Eigen::Index>(dvals.size()) != Z.cols()) {
    throw DataError("--delta needs r = " + std::to_string(Z.cols()) + " values");
  }
  const Vector delta =
      Eigen::Map<const Vector>(dvals.data(), static_cast<Eigen::Index>(dvals.size()));

  PowerReport rep;
  Theta0 theta0{fit.coefficients, fit.sigma2};
  if (epsilon > 0.0 || !y_contam_spec.empty()) {
    Vector y_contam;
    const std::vector<double> yv =
        y_contam_spec.empty() ? std::vector<double>{0.0} : parse_grid_spec(y_contam_spec);
    if (yv.size() == 1) {
      y_contam = Vector::Constant(data.n(), yv[0]);
    } else if (static_cast<Eigen::Index>(yv.size()) == data.n()) {
      y_contam = Eigen::Map<const Vector>(yv.data(), static_cast<Eigen::Index>(yv.size()));
    } else {
      throw DataError("--y-contam needs 1 or n values");
    }
    // the RegressionData used for the contamination terms must carry the same
    // Z that built the sandwich
    const RegressionData zdata(data.y(), data.X(), Z);
    rep = contaminated_power(delta, epsilon, y_contam, sandwich, zdata, theta0, alpha);
  } else {
    rep = pitman_power(delta, sandwich, Z, alpha);
  }

  json rec = record_envelope("power");
  rec["config"] = data_cfg.echo();
  rec["config"]["beta"] = beta;
  rec["config"]["delta"] = dvals;
  rec["config"]["alpha"] = alpha;
  rec["config"]["hprime0"] = hprime0;
  rec["config"]["epsilon"] = epsilon;
  rec["df"] = sandwich.r;
  rec["ncp"] = rep.ncp;
  rec["power"] = rep.power;
  rec["contaminated_ncp"] = rep.contaminated_ncp;
  rec["contaminated_power"] = rep.contaminated_power;
  rec["pif"] = rep.pif;

  if (format == "json") {
    std::cout << rec.dump(2) << '\n';
  } else {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"quantity", "value"});
    rows.push_back({"df", std::to_string(sandwich.r)});
    rows.push_back({"ncp", fmt_stat(rep.ncp)});
    rows.push_back({"power", fmt_stat(rep.power)});
    rows.push_back({"contaminated_ncp", fmt_stat(rep.contaminated_ncp)});
    rows.push_back({"contaminated_power", fmt_stat(rep.contaminated_power)});
    rows.push_back({"pif", fmt_stat(rep.pif)});
    print_table(std::cout, rows);
  }
  return kExitOk;
}

// ------------------------------------------------------------ simulate ----

int cmd_simulate(const std::string& scenario_path, std::optional<std::uint64_t> seed,
                 int threads, const std::string& format) {
  SimScenario scenario = parse_scenario_file(scenario_path);
  if (seed) scenario.seed = *seed;
  const SimReport report = run_scenario(scenario, threads);

  if (format == "json") {
    json rec = record_envelope("simulate");
    json cfg;
    cfg["scenario_file"] = scenario_path;
    cfg["n"] = scenario.n;
    cfg["design_p"] = scenario.design_p;
    cfg["replications"] = scenario.replications;
    cfg["alpha"] = scenario.alpha;
    cfg["beta_grid"] = scenario.beta_grid;
    cfg["seed"] = scenario.seed;
    cfg["contamination_fraction"] = scenario.contamination_fraction;
    rec["config"] = cfg;
    rec["df"] = report.df;
    rec["threshold"] = report.threshold;
    rec["cells"] = json::array();
    for (const auto& c : report.cells) {
      json cj;
      cj["beta"] = c.beta_tuning;
      cj["bp_rate"] = c.bp_rate;
      cj["bp_se"] = c.bp_se;
      cj["koenker_rate"] = c.koenker_rate;
      cj["koenker_se"] = c.koenker_se;
      cj["bp_rejections"] = c.bp_rejections;
      cj["koenker_rejections"] = c.koenker_rejections;
      cj["failed_fits"] = c.failed_fits;
      rec["cells"].push_back(cj);
    }
    std::cout << rec.dump(2) << '\n';
  } else if (format == "csv") {
    write_csv_row(std::cout, {"beta", "bp_rate", "bp_se", "koenker_rate", "koenker_se",
                              "bp_rejections", "koenker_rejections", "failed_fits"});
    for (const auto& c : report.cells) {
      write_csv_row(std::cout,
                    {format_double(c.beta_tuning), format_double(c.bp_rate),
                     format_double(c.bp_se), format_double(c.koenker_rate),
                     format_double(c.koenker_se), std::to_string(c.bp_rejections),
                     std::to_string(c.koenker_rejections), std::to_string(c.failed_fits)});
    }
  } else {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"beta", "bp_rate", "bp_se", "koenker_rate", "koenker_se", "failed"});
    for (const auto& c : report.cells) {
      rows.push_back({fmt_stat(c.beta_tuning), fmt_stat(c.bp_rate), fmt_stat(c.bp_se),
                      fmt_stat(c.koenker_rate), fmt_stat(c.koenker_se),
                      std::to_string(c.failed_fits)});
    }
    print_table(std::cout, rows);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust beta-score LM tests for heteroscedasticity"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  // test
  auto* test = app.add_subcommand("test", "run both tests at one or more beta values");
  DataConfig test_data;
  test_data.add_options(test);
  std::string test_beta = "0";
  double test_alpha = 0.05;
  std::string test_format = "table";
  test->add_option("--beta", test_beta, "beta values, e.g. 0,0.3,0.6")->capture_default_str();
  test->add_option("--alpha", test_alpha, "nominal level")->capture_default_str();
  test->add_option("--format", test_format, "table | json | csv")
      ->check(CLI::IsMember({"table", "json", "csv"}));

  // scan
  auto* scan = app.add_subcommand("scan", "evaluate both tests over a beta grid");
  DataConfig scan_data;
  scan_data.add_options(scan);
  std::string scan_grid;
  double scan_alpha = 0.05;
  std::string scan_format = "csv";
  std::string scan_plot_out;
  scan->add_option("--beta-grid", scan_grid, "grid spec start:stop:step or comma list "
                                             "(default 0:0.75:0.05)");
  scan->add_option("--alpha", scan_alpha, "nominal level")->capture_default_str();
  scan->add_option("--format", scan_format, "csv (plot data) | json | table")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  scan->add_option("--plot-out", scan_plot_out, "also write plot CSV to this file");

  // are
  auto* are_cmd = app.add_subcommand("are", "asymptotic relative efficiency curve");
  std::string are_grid;
  are_cmd->add_option("--beta-grid", are_grid, "grid spec (default 0:0.75:0.05)");

  // influence
  auto* infl = app.add_subcommand("influence", "second-order influence curves");
  DataConfig infl_data;
  infl_data.add_options(infl);
  double infl_beta = 0.0;
  std::string infl_coef;
  double infl_sigma2 = 0.0;
  std::string infl_y_grid;
  std::vector<std::size_t> infl_obs;
  infl->add_option("--beta", infl_beta, "tuning parameter")->capture_default_str();
  infl->add_option("--coef", infl_coef, "null coefficients (default: OLS fit)");
  infl->add_option("--sigma2", infl_sigma2, "null sigma^2 (default: OLS fit)");
  infl->add_option("--y-grid", infl_y_grid, "probe grid spec lo:hi:step")->required();
  infl->add_option("--obs", infl_obs, "1-based observation indices (default: all)")
      ->delimiter(',');

  // power
  auto* power = app.add_subcommand("power", "asymptotic power under local alternatives");
  DataConfig power_data;
  power_data.add_options(power);
  double power_beta = 0.0;
  std::string power_delta;
  double power_alpha = 0.05;
  double power_hprime0 = 1.0;
  double power_epsilon = 0.0;
  std::string power_y_contam;
  std::string power_format = "table";
  power->add_option("--beta", power_beta, "tuning parameter")->capture_default_str();
  power->add_option("--delta", power_delta, "local alternative direction (r values)")
      ->required();
  power->add_option("--alpha", power_alpha, "nominal level")->capture_default_str();
  power->add_option("--hprime0", power_hprime0, "h'(0) of the scedastic function")
      ->capture_default_str();
  power->add_option("--epsilon", power_epsilon, "contamination fraction scale")
      ->capture_default_str();
  power->add_option("--y-contam", power_y_contam, "contamination point(s): 1 or n values");
  power->add_option("--format", power_format, "table | json")
      ->check(CLI::IsMember({"table", "json"}));

  // simulate
  auto* sim = app.add_subcommand("simulate", "Monte Carlo size/power study");
  std::string sim_scenario;
  std::uint64_t sim_seed = 0;
  bool sim_seed_given = false;
  int sim_threads = 0;
  std::string sim_format = "table";
  sim->add_option("--scenario", sim_scenario, "scenario file (key = value lines)")->required();
  auto* seed_opt = sim->add_option("--seed", sim_seed, "override the scenario seed");
  sim->add_option("--threads", sim_threads, "worker threads (0 = auto)")->capture_default_str();
  sim->add_option("--format", sim_format, "table | json | csv")
      ->check(CLI::IsMember({"table", "json", "csv"}));

  CLI11_PARSE(app, argc, argv);
  sim_seed_given = seed_opt->count() > 0;

  try {
    if (test->parsed()) return cmd_test(test_data, test_beta, test_alpha, test_format);
    if (scan->parsed()) {
      return cmd_scan(scan_data, scan_grid, scan_alpha, scan_format, scan_plot_out);
    }
    if (are_cmd->parsed()) return cmd_are(are_grid);
    if (infl->parsed()) {
      return cmd_influence(infl_data, infl_beta, infl_coef, infl_sigma2, infl_y_grid, infl_obs);
    }
    if (power->parsed()) {
      return cmd_power(power_data, power_beta, power_delta, power_alpha, power_hprime0,
                       power_epsilon, power_y_contam, power_format);
    }
    if (sim->parsed()) {
      return cmd_simulate(sim_scenario,
                          sim_seed_given ? std::optional<std::uint64_t>(sim_seed) : std::nullopt,
                          sim_threads, sim_format);
    }
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << '\n';
    return err.kind() == ErrorKind::Data ? kExitDataError : kExitNumericError;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitNumericError;
  }
  return kExitOk;
}
