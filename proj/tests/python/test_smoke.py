"""Smoke tests for the python bindings."""

import math

import numpy as np
import pytest

betascore = pytest.importorskip("betascore")


@pytest.fixture()
def toy_data():
    rng = np.random.default_rng(42)
    n = 80
    x = rng.standard_normal((n, 2))
    X = np.column_stack([np.ones(n), x])
    y = 1.0 + x @ np.array([2.0, -1.0]) + rng.standard_normal(n)
    return betascore.RegressionData(y, X, x)


def test_version():
    assert betascore.__version__


def test_fit_and_tests(toy_data):
    fit = betascore.fit_null_dpd(toy_data, 0.3)
    assert fit.converged
    assert abs(np.sum(fit.v)) < 1e-8
    bp = betascore.bp_beta_test(fit, toy_data.Z)
    ko = betascore.koenker_beta_test(fit, toy_data.Z)
    assert bp["df"] == 2
    assert 0.0 <= bp["p_value"] <= 1.0
    assert ko["statistic"] <= toy_data.n


def test_against_statsmodels(toy_data):
    statsmodels = pytest.importorskip("statsmodels.stats.diagnostic")
    y = np.asarray(toy_data.y)
    X = np.asarray(toy_data.X)
    Zb = np.column_stack([np.ones(len(y)), np.asarray(toy_data.Z)])

    resid = y - X @ np.linalg.solve(X.T @ X, X.T @ y)
    lm, lm_pvalue, _, _ = statsmodels.het_breuschpagan(resid, Zb)

    fit = betascore.fit_null_dpd(toy_data, 0.0)
    ko = betascore.koenker_beta_test(fit, np.asarray(toy_data.Z))
    assert ko["statistic"] == pytest.approx(lm, rel=1e-10)
    assert ko["p_value"] == pytest.approx(lm_pvalue, rel=1e-8)


def test_are_and_special_functions():
    assert betascore.are(0.0) == 1.0
    assert betascore.are(0.2) == pytest.approx(1.09, abs=0.005)
    assert betascore.chi_square_sf(0.0, 3) == 1.0
    q = betascore.chi_square_quantile(0.95, 3)
    assert q == pytest.approx(7.814727903251179, abs=1e-8)
    assert betascore.noncentral_chi_square_sf(q, 3, 0.0) == pytest.approx(0.05, abs=1e-9)


def test_white_design():
    X = np.array([[1.0, 2.0, 3.0], [1.0, 1.0, -1.0], [1.0, 0.5, 2.0], [1.0, -1.0, 1.0],
                  [1.0, 3.0, 0.5], [1.0, -2.0, 1.5], [1.0, 0.3, -0.4], [1.0, 1.7, 2.2]])
    Z = betascore.build_white_design(X)
    assert Z.shape == (8, 5)
    np.testing.assert_allclose(Z[0], [2.0, 3.0, 4.0, 6.0, 9.0])


def test_scan(toy_data):
    scan = betascore.scan_beta(toy_data, [0.0, 0.3, 0.6], alpha=0.05, white=False)
    assert scan["df"] == 2
    assert len(scan["entries"]) == 3
    assert all("bp" in e for e in scan["entries"])


def test_power_and_influence(toy_data):
    fit = betascore.fit_null_dpd(toy_data, 0.3)
    sw = betascore.null_sandwich(fit, np.asarray(toy_data.Z), np.asarray(toy_data.X))
    rep = betascore.pitman_power(np.zeros(2), sw, np.asarray(toy_data.Z), alpha=0.05)
    assert rep.ncp == 0.0
    assert rep.power == pytest.approx(0.05, abs=1e-9)

    theta0 = betascore.Theta0(fit.coefficients, fit.sigma2)
    probe = np.asarray(toy_data.X) @ fit.coefficients
    if2 = betascore.if2_per_observation(toy_data, theta0, 0.3, probe)
    assert np.all(if2 >= 0.0)


def test_simulation_determinism():
    s = betascore.SimScenario()
    s.n = 80
    s.design_p = 1
    s.replications = 50
    s.beta_grid = [0.0]
    s.seed = 7
    r1 = betascore.run_scenario(s, workers=1)
    r2 = betascore.run_scenario(s, workers=4)
    assert r1["cells"][0]["bp_rejections"] == r2["cells"][0]["bp_rejections"]


def test_errors_are_python_exceptions():
    with pytest.raises(ValueError):
        betascore.RegressionData(np.ones(3), np.ones((4, 1)), np.ones((4, 1)))
    with pytest.raises(ValueError):
        betascore.chi_square_sf(-1.0, 3)


def test_sigma2_equation_derivative():
    rng = np.random.default_rng(0)
    r = rng.standard_normal(20)
    beta, s2 = 0.4, 1.3
    h = 1e-6
    fd = (betascore.sigma2_equation(r, beta, s2 + h) -
          betascore.sigma2_equation(r, beta, s2 - h)) / (2 * h)
    assert betascore.sigma2_equation_derivative(r, beta, s2) == pytest.approx(fd, rel=1e-6)
