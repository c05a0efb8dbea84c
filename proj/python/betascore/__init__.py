"""Robust beta-score Lagrange-multiplier tests for heteroscedasticity.

Thin wrapper around the C++ core. The tuning parameter beta trades efficiency
(beta = 0 is the classical Breusch-Pagan / Koenker pair) for robustness to
outliers (larger beta down-weights them).
"""

from betascore._core import (
    DataError,
    DpdFit,
    FitOptions,
    InfluenceReport,
    NullSandwich,
    NumericError,
    PowerReport,
    RegressionData,
    ScedasticKind,
    SimScenario,
    Theta0,
    ZSource,
    __version__,
    are,
    bp_beta_test,
    bp_denominator,
    build_white_design,
    chi_square_quantile,
    chi_square_sf,
    contaminated_power,
    default_beta_grid,
    fit_null_dpd,
    ges_simple_linear,
    if2_per_observation,
    influence_report,
    koenker_beta_test,
    noncentral_chi_square_sf,
    null_sandwich,
    parse_scenario_file,
    pitman_power,
    run_scenario,
    scan_beta,
    sigma2_equation,
    sigma2_equation_derivative,
    solve_sigma2,
    v_vector,
)

__all__ = [
    "DataError",
    "DpdFit",
    "FitOptions",
    "InfluenceReport",
    "NullSandwich",
    "NumericError",
    "PowerReport",
    "RegressionData",
    "ScedasticKind",
    "SimScenario",
    "Theta0",
    "ZSource",
    "__version__",
    "are",
    "bp_beta_test",
    "bp_denominator",
    "build_white_design",
    "chi_square_quantile",
    "chi_square_sf",
    "contaminated_power",
    "default_beta_grid",
    "fit_null_dpd",
    "ges_simple_linear",
    "if2_per_observation",
    "influence_report",
    "koenker_beta_test",
    "noncentral_chi_square_sf",
    "null_sandwich",
    "parse_scenario_file",
    "pitman_power",
    "run_scenario",
    "scan_beta",
    "sigma2_equation",
    "sigma2_equation_derivative",
    "solve_sigma2",
    "v_vector",
]
