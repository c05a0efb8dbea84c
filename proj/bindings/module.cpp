#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "betascore/csv.hpp"
#include "betascore/mc.hpp"
#include "betascore/robustness.hpp"
#include "betascore/version.hpp"

namespace py = pybind11;
using namespace betascore;

namespace {

py::dict test_result_dict(const TestResult& t) {
  py::dict d;
  d["kind"] = to_string(t.kind);
  d["beta"] = t.beta_tuning;
  d["statistic"] = t.statistic;
  d["df"] = t.df;
  d["p_value"] = t.p_value;
  d["ess"] = t.ess;
  d["tss"] = t.tss;
  if (t.denominator) d["denominator"] = *t.denominator;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Robust beta-score LM tests for heteroscedasticity";
  m.attr("__version__") = kVersion;

  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

  py::class_<RegressionData>(m, "RegressionData")
      .def(py::init<Vector, Matrix, Matrix>(), py::arg("y"), py::arg("X"), py::arg("Z"))
      .def_property_readonly("y", &RegressionData::y)
      .def_property_readonly("X", &RegressionData::X)
      .def_property_readonly("Z", &RegressionData::Z)
      .def_property_readonly("n", &RegressionData::n)
      .def_property_readonly("p", &RegressionData::p)
      .def_property_readonly("r", &RegressionData::r);

  py::class_<FitOptions>(m, "FitOptions")
      .def(py::init<>())
      .def_readwrite("tol_eq", &FitOptions::tol_eq)
      .def_readwrite("max_outer_iterations", &FitOptions::max_outer_iterations)
      .def_readwrite("newton_tol", &FitOptions::newton_tol)
      .def_readwrite("newton_max_iter", &FitOptions::newton_max_iter);

  py::class_<DpdFit>(m, "DpdFit")
      .def_readonly("beta_tuning", &DpdFit::beta_tuning)
      .def_readonly("coefficients", &DpdFit::coefficients)
      .def_readonly("sigma2", &DpdFit::sigma2)
      .def_readonly("residuals", &DpdFit::residuals)
      .def_readonly("g", &DpdFit::g)
      .def_readonly("v", &DpdFit::v)
      .def_readonly("weights", &DpdFit::weights)
      .def_readonly("iterations", &DpdFit::iterations)
      .def_readonly("converged", &DpdFit::converged)
      .def_readonly("final_gradient_norm", &DpdFit::final_gradient_norm);

  m.def("fit_null_dpd",
        py::overload_cast<const RegressionData&, double, const FitOptions&>(&fit_null_dpd),
        py::arg("data"), py::arg("beta_tuning"), py::arg("options") = FitOptions());
  m.def("v_vector", &v_vector, py::arg("g"), py::arg("beta_tuning"));
  m.def("solve_sigma2", &solve_sigma2, py::arg("residuals"), py::arg("beta_tuning"),
        py::arg("sigma2_init"), py::arg("options") = FitOptions());
  m.def("sigma2_equation", &sigma2_equation);
  m.def("sigma2_equation_derivative", &sigma2_equation_derivative);

  m.def("bp_denominator", &bp_denominator, py::arg("beta_tuning"));
  m.def(
      "bp_beta_test",
      [](const DpdFit& fit, const Matrix& Z) { return test_result_dict(bp_beta_test(fit, Z)); },
      py::arg("fit"), py::arg("Z"));
  m.def(
      "koenker_beta_test",
      [](const DpdFit& fit, const Matrix& Z) {
        return test_result_dict(koenker_beta_test(fit, Z));
      },
      py::arg("fit"), py::arg("Z"));
  m.def(
      "scan_beta",
      [](const RegressionData& data, const std::vector<double>& grid, double alpha, bool white) {
        const BetaScan scan = scan_beta(data, grid, alpha, white);
        py::dict out;
        out["grid"] = scan.grid;
        out["df"] = scan.df;
        out["alpha"] = scan.alpha;
        out["threshold"] = scan.threshold;
        py::list entries;
        for (const auto& e : scan.entries) {
          py::dict ed;
          ed["beta"] = e.beta_tuning;
          if (e.ok()) {
            ed["bp"] = test_result_dict(*e.bp);
            ed["koenker"] = test_result_dict(*e.koenker);
          } else {
            ed["error"] = e.error;
          }
          entries.append(ed);
        }
        out["entries"] = entries;
        return out;
      },
      py::arg("data"), py::arg("grid"), py::arg("alpha") = 0.05, py::arg("white") = false);
  m.def("default_beta_grid", &default_beta_grid);
  m.def("build_white_design", &build_white_design, py::arg("X"));

  m.def("chi_square_sf", &chi_square_sf, py::arg("x"), py::arg("df"));
  m.def("chi_square_quantile", &chi_square_quantile, py::arg("prob"), py::arg("df"));
  m.def("noncentral_chi_square_sf", &noncentral_chi_square_sf, py::arg("x"), py::arg("df"),
        py::arg("ncp"));

  m.def("are", &are, py::arg("beta_tuning"));
  m.def("ges_simple_linear", &ges_simple_linear, py::arg("beta_tuning"), py::arg("n"));

  py::class_<Theta0>(m, "Theta0")
      .def(py::init([](Vector coefficients, double sigma2) {
             return Theta0{std::move(coefficients), sigma2};
           }),
           py::arg("coefficients"), py::arg("sigma2"))
      .def_readwrite("coefficients", &Theta0::coefficients)
      .def_readwrite("sigma2", &Theta0::sigma2);

  py::class_<NullSandwich>(m, "NullSandwich")
      .def_readonly("W", &NullSandwich::W)
      .def_readonly("Kbar", &NullSandwich::Kbar)
      .def_readonly("Jbar", &NullSandwich::Jbar)
      .def_readonly("a1", &NullSandwich::a1)
      .def_readonly("a2", &NullSandwich::a2)
      .def_readonly("b1", &NullSandwich::b1)
      .def_readonly("b2", &NullSandwich::b2)
      .def_readonly("hprime0", &NullSandwich::hprime0)
      .def_readonly("sigma2", &NullSandwich::sigma2)
      .def_readonly("r", &NullSandwich::r)
      .def_readonly("p", &NullSandwich::p);

  m.def("null_sandwich", &null_sandwich, py::arg("fit"), py::arg("Z"), py::arg("X"),
        py::arg("hprime0") = 1.0);
  m.def("if2_per_observation", &if2_per_observation, py::arg("data"), py::arg("theta0"),
        py::arg("beta_tuning"), py::arg("y_probe"));

  py::class_<InfluenceReport>(m, "InfluenceReport")
      .def_readonly("per_observation_if2", &InfluenceReport::per_observation_if2)
      .def_readonly("ges_per_observation", &InfluenceReport::ges_per_observation)
      .def_readonly("ges", &InfluenceReport::ges)
      .def_readonly("unbounded", &InfluenceReport::unbounded);
  m.def("influence_report", &influence_report, py::arg("data"), py::arg("theta0"),
        py::arg("beta_tuning"), py::arg("y_probe"));

  py::class_<PowerReport>(m, "PowerReport")
      .def_readonly("ncp", &PowerReport::ncp)
      .def_readonly("power", &PowerReport::power)
      .def_readonly("contaminated_ncp", &PowerReport::contaminated_ncp)
      .def_readonly("contaminated_power", &PowerReport::contaminated_power)
      .def_readonly("pif", &PowerReport::pif);
  m.def("pitman_power", &pitman_power, py::arg("delta"), py::arg("sandwich"), py::arg("Z"),
        py::arg("alpha") = 0.05);
  m.def("contaminated_power", &contaminated_power, py::arg("delta"), py::arg("epsilon"),
        py::arg("y_contam"), py::arg("sandwich"), py::arg("data"), py::arg("theta0"),
        py::arg("alpha") = 0.05);

  py::enum_<ZSource>(m, "ZSource")
      .value("SameAsX", ZSource::SameAsX)
      .value("White", ZSource::White)
      .value("Independent", ZSource::Independent);
  py::enum_<ScedasticKind>(m, "ScedasticKind")
      .value("Additive", ScedasticKind::Additive)
      .value("Multiplicative", ScedasticKind::Multiplicative);

  py::class_<SimScenario>(m, "SimScenario")
      .def(py::init<>())
      .def_readwrite("n", &SimScenario::n)
      .def_readwrite("design_p", &SimScenario::design_p)
      .def_readwrite("z_source", &SimScenario::z_source)
      .def_readwrite("z_r", &SimScenario::z_r)
      .def_readwrite("scedastic_kind", &SimScenario::scedastic_kind)
      .def_readwrite("scedastic_alpha", &SimScenario::scedastic_alpha)
      .def_readwrite("sigma2", &SimScenario::sigma2)
      .def_readwrite("contamination_fraction", &SimScenario::contamination_fraction)
      .def_readwrite("contamination_mu", &SimScenario::contamination_mu)
      .def_readwrite("contamination_sigma", &SimScenario::contamination_sigma)
      .def_readwrite("replications", &SimScenario::replications)
      .def_readwrite("alpha", &SimScenario::alpha)
      .def_readwrite("beta_grid", &SimScenario::beta_grid)
      .def_readwrite("seed", &SimScenario::seed);

  m.def("parse_scenario_file", &parse_scenario_file, py::arg("path"));
  m.def(
      "run_scenario",
      [](const SimScenario& scenario, int workers) {
        const SimReport report = run_scenario(scenario, workers);
        py::dict out;
        out["df"] = report.df;
        out["threshold"] = report.threshold;
        py::list cells;
        for (const auto& c : report.cells) {
          py::dict cd;
          cd["beta"] = c.beta_tuning;
          cd["bp_rate"] = c.bp_rate;
          cd["bp_se"] = c.bp_se;
          cd["koenker_rate"] = c.koenker_rate;
          cd["koenker_se"] = c.koenker_se;
          cd["bp_rejections"] = c.bp_rejections;
          cd["koenker_rejections"] = c.koenker_rejections;
          cd["failed_fits"] = c.failed_fits;
          cells.append(cd);
        }
        out["cells"] = cells;
        return out;
      },
      py::arg("scenario"), py::arg("workers") = 0);
}
