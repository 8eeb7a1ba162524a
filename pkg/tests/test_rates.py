import warnings

import numpy as np
import pytest

from truncvar import InsufficientData, InvalidGrid, PathSpec, estimate_rate, fit_slope, combination_experiment, log_grid
from truncvar.rates import sandwich_holds, truncated_variations


def test_fit_slope_exact_power_law():
    c = np.geomspace(0.01, 1, 9)
    for s in (-1.0, -1 / 3, -0.5, 0.7):
        fit = fit_slope(c, 2.5 * c ** s)
        assert abs(fit.slope - s) <= 1e-10
        assert fit.ci < 1e-6
    with pytest.raises(InsufficientData):
        fit_slope([0.1], [1.0])
    with pytest.raises(InsufficientData):
        fit_slope([0.1, 0.2], [1.0, 0.0])


def test_log_grid_validation():
    g = log_grid(0.05, 0.2, 8)
    assert g[0] == pytest.approx(0.05) and g[-1] == pytest.approx(0.2) and np.all(np.diff(g) > 0)
    for args in ((0, 1, 5), (0.2, 0.1, 5), (0.1, 0.2, 3), (-1, 1, 5)):
        with pytest.raises(InvalidGrid):
            log_grid(*args)


def test_report_shape_and_invariants():
    spec = PathSpec("bm", n_steps=2 ** 10, seed=3)
    rep = estimate_rate(spec, 0.2, 0.8, 5, replicates=6)
    assert rep.tv.shape == (6, 5)
    assert np.all(np.diff(rep.tv, axis=1) <= 0)
    assert np.all(np.diff(rep.tv_mean) <= 0)
    assert np.all(np.isfinite(rep.tv_stderr)) and np.all(np.isfinite(rep.c_times_tv))
    d = rep.to_dict()
    assert d["replicates"] == 6 and len(d["c_grid"]) == 5
    assert "slope(mean)" in rep.table()
    with pytest.raises(InsufficientData):
        estimate_rate(spec, 0.2, 0.8, 5, replicates=0)


def test_report_deterministic_across_workers():
    spec = PathSpec("fbm", n_steps=2 ** 10, hurst=0.7, seed=4)
    a = estimate_rate(spec, 0.1, 0.4, 4, replicates=5, workers=1)
    b = estimate_rate(spec, 0.1, 0.4, 4, replicates=5, workers=3)
    assert a.to_dict() == b.to_dict()


def test_small_c_warns():
    spec = PathSpec("bm", n_steps=2 ** 10, seed=1)
    with pytest.warns(RuntimeWarning, match="median increment"):
        estimate_rate(spec, 0.01, 0.5, 4, replicates=1)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        estimate_rate(spec, 0.2, 0.5, 4, replicates=1)


def test_finite_variation_path_has_vanishing_c_tv():
    t = np.linspace(0, 1, 4001)
    vals = np.sin(6 * t) + t
    cs = np.array([0.4, 0.1, 0.01, 0.001])
    ctv = cs * truncated_variations(vals, cs)
    assert np.all(np.diff(ctv) < 0) and ctv[-1] < 0.01


def test_combination_zero_amplitude():
    spec = PathSpec("bm", n_steps=2 ** 10, seed=2)
    tab = combination_experiment(spec, 0.0, [0.1, 0.2, 0.4])
    np.testing.assert_array_equal(tab.c_tv_rough, tab.c_tv_sum)
    assert np.all(tab.upper_ok) and np.all(tab.lower_ok)


def test_sandwich_fuzz_half_delta():
    rng = np.random.default_rng(41)
    for _ in range(200):
        n = int(rng.integers(2, 40))
        p1 = np.repeat(rng.normal(size=n).cumsum(), 2)[:-1]
        p2 = np.repeat(rng.normal(size=n).cumsum() * rng.exponential(), 2)[:-1]
        c = float(rng.exponential()) + 1e-3
        assert sandwich_holds(p1, p2, c, 0.5) == (True, True)
