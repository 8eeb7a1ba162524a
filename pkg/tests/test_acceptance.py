"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

The summary of all lines is repeated at the end of the pytest run.
"""

import itertools
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from conftest import random_instance
from truncvar import (
    PathSpec,
    StepFunction,
    ab_trunc_oracle_profile,
    combination_experiment,
    counterexample_2d,
    estimate_rate,
    from_samples,
    interleave,
    lipschitz_gap,
    minimal_envelope,
    optimal_start,
    optimal_start_search,
    play,
    play_constant,
    play_recursion,
    skorohod_check,
    skorohod_inner_products,
    total_variation,
    tv_trunc_oracle,
    tv_truncated,
)
from truncvar.play import counterexample_2d_paths
from truncvar.rates import sandwich_holds
from truncvar.stepfn import DiscreteTriple
from truncvar.truncated import envelope_batch
from truncvar.variation import dp_profile_batch, running_variation

SEED = 42
N_FUZZ = 1000


@pytest.fixture(scope="module")
def fuzz():
    """1000 seeded instances: interleaved length up to 199, random bands with gamma >= 0."""
    rng = np.random.default_rng(SEED)
    return [random_instance(rng, n_max=100, integer=bool(k % 4 == 0)) for k in range(N_FUZZ)]


def _slack(*xs):
    return 1e-12 * (1.0 + max(float(np.max(np.abs(x))) for x in xs))


# 1 -------------------------------------------------------------------------


def test_criterion_01_oracle_equivalence_exhaustive(report):
    t0 = time.perf_counter()
    bands = ((-0.5, 0.5), (-1.0, 1.0), (0.0, 2.0))
    count = mismatches = 0
    for n in (1, 3, 5, 7, 9):
        # integer-scaled: values and band edges doubled, so all arithmetic is exact
        x = 2.0 * np.array(list(itertools.product(range(4), repeat=n)))
        for a, b in bands:
            lo, hi = x - 2 * b, x - 2 * a
            p = envelope_batch(lo, hi)
            tv, utv, dtv = running_variation_rows(p)
            for mode, fast in (("TV", tv), ("UTV", utv), ("DTV", dtv)):
                slow = dp_profile_batch(lo, hi, mode)
                mismatches += int(np.sum(np.any(slow != fast, axis=1)))
            count += len(x)
    # the full object-level path on a stride of the same set
    for n in (5, 9):
        x = 2.0 * np.array(list(itertools.product(range(4), repeat=n)))[::251]
        for a, b in bands:
            for row in x:
                tri = DiscreteTriple.from_arrays(row, 2 * a, 2 * b)
                env, o = minimal_envelope(tri).profile, ab_trunc_oracle_profile(tri)
                mismatches += int(not all(np.array_equal(getattr(env, k), getattr(o, k)) for k in ("tv", "utv", "dtv")))
    elapsed = time.perf_counter() - t0
    ok = mismatches == 0 and elapsed < 60
    report(1, "oracle equivalence, exhaustive", ok, f"{count} sequences x 3 bands-modes, {mismatches} mismatches, {elapsed:.1f}s")
    assert ok


def running_variation_rows(p):
    d = np.diff(p, axis=1)
    z = np.zeros((len(p), 1))
    utv = np.hstack([z, np.cumsum(np.maximum(d, 0), axis=1)])
    dtv = np.hstack([z, np.cumsum(np.maximum(-d, 0), axis=1)])
    return utv + dtv, utv, dtv


# 2 -------------------------------------------------------------------------


def test_criterion_02_route_equivalence(report, fuzz):
    t0 = time.perf_counter()
    worst = 0.0
    for u, a, b, xi0 in fuzz:
        x1 = play(u, a, b, xi0).xi.interleaved()
        x2 = play_recursion(u, a, b, xi0).xi.interleaved()
        worst = max(worst, float(np.max(np.abs(x1 - x2))))
    elapsed = time.perf_counter() - t0
    ok = worst == 0.0 and elapsed < 10
    report(2, "play == play_recursion", ok, f"sup diff {worst:g} over {len(fuzz)}, {elapsed:.1f}s")
    assert ok


# 3 -------------------------------------------------------------------------


def test_criterion_03_jordan_identities(report, fuzz):
    worst = 0.0
    rng = np.random.default_rng(SEED + 3)
    for u, a, b, _ in fuzz:
        p = total_variation(u)
        worst = max(worst, float(np.max(np.abs(p.tv - p.utv - p.dtv))))
        c = float(rng.exponential()) + 1e-3
        t = tv_truncated(u, c)
        worst = max(worst, float(np.max(np.abs(t.tv - t.utv - t.dtv))))
        tri = interleave(u, a, b)
        e = minimal_envelope(tri).profile
        worst = max(worst, float(np.max(np.abs(e.tv - e.utv - e.dtv))))
        if len(tri) <= 81:  # brute-force functionals on the smaller instances
            o = ab_trunc_oracle_profile(tri)
            worst = max(worst, float(np.max(np.abs(o.tv - o.utv - o.dtv))))
            tvs = [tv_trunc_oracle(u, c, mode=m) for m in ("TV", "UTV", "DTV")]
            worst = max(worst, abs(tvs[0] - tvs[1] - tvs[2]))
    ok = worst <= 1e-10
    report(3, "Jordan identities", ok, f"max |TV-UTV-DTV| = {worst:.2e}")
    assert ok


# 4 -------------------------------------------------------------------------


def test_criterion_04_bounds_sandwich(report, fuzz):
    violations = 0
    rng = np.random.default_rng(SEED + 4)
    for u, a, b, xi0 in fuzz:
        lower = minimal_envelope(interleave(u, a, b)).profile.tv
        tv = running_variation(play(u, a, b, xi0).xi.interleaved())[0]
        width = float(b.point_values[0] - a.point_values[0])
        s = _slack(lower, tv)
        violations += int(np.sum(lower > tv + s)) + int(np.sum(tv > lower + width + s))
        c = float(rng.exponential()) + 1e-3
        lo0, hi0 = u.point_values[0] - c / 2, u.point_values[0] + c / 2
        for x0 in (lo0, hi0, lo0 + (hi0 - lo0) * float(rng.random())):
            tvc = tv_truncated(u, c).tv
            tvx = running_variation(play_constant(u, c, x0).xi.interleaved())[0]
            s = _slack(tvc, tvx)
            violations += int(np.sum(tvc > tvx + s)) + int(np.sum(tvx > tvc + c + s))
    ok = violations == 0
    report(4, "variation bounds sandwich", ok, f"{violations} violations")
    assert ok


# 5 -------------------------------------------------------------------------


def test_criterion_05_attainment(report, fuzz):
    worst_opt = worst_grid = 0.0
    below = 0
    for u, a, b, _ in fuzz[:300]:
        tri = interleave(u, a, b)
        target = minimal_envelope(tri).profile.tv[-1]
        x_opt, _ = optimal_start(tri)
        starts, tvs = optimal_start_search(u, a, b, n_grid=64, extra=[x_opt])
        worst_opt = max(worst_opt, abs(tvs[starts == x_opt][0] - target))
        worst_grid = max(worst_grid, abs(tvs.min() - target))
        below += int(tvs.min() < target - 1e-9)
    ok = worst_opt <= 1e-9 and worst_grid <= 1e-9 and below == 0
    report(5, "optimal start attains TV^{a,b}", ok, f"|TV(opt)-target| {worst_opt:.1e}, grid min gap {worst_grid:.1e}")
    assert ok


# 6 -------------------------------------------------------------------------


def test_criterion_06_skorohod(report, fuzz):
    violations = sum(len(skorohod_check(play(u, a, b, x0), a, b)) for u, a, b, x0 in fuzz)
    rng = np.random.default_rng(SEED + 6)
    worst = 0.0
    for _ in range(N_FUZZ):
        n = int(rng.integers(2, 100))
        u = from_samples(np.arange(n, dtype=float), rng.normal(size=n).cumsum())
        c = float(rng.exponential()) + 1e-2
        x0 = u.point_values[0] + c * (float(rng.random()) - 0.5)
        res = play_constant(u, c, x0)
        violations += len(skorohod_check(res, *_const(u, c)))
        s1, s2, s3, s4 = skorohod_inner_products(res, c)
        worst = max(worst, abs(s1 - s2), abs(s3 - s4))
    ok = violations == 0 and worst <= 1e-9
    report(6, "Skorohod contact + inner products", ok, f"{violations} violations, identity gap {worst:.1e}")
    assert ok


def _const(u, c):
    return StepFunction.constant(-c / 2, u.knots), StepFunction.constant(c / 2, u.knots)


# 7 -------------------------------------------------------------------------


def test_criterion_07_lipschitz(report):
    rng = np.random.default_rng(SEED + 7)
    violations = 0
    for k in range(500):
        u, a, b, x0 = random_instance(rng, n_max=40)
        m = 2 * u.n_knots - 1
        eps = 10.0 ** rng.uniform(-3, 0)
        du = eps * rng.normal(size=m)
        da = eps * rng.normal(size=m)
        dg = eps * rng.normal(size=m)
        u2 = u + StepFunction.from_interleaved(u.knots, du)
        a2 = a + StepFunction.from_interleaved(u.knots, da)
        g2 = np.maximum((b - a).interleaved() + dg, 0.0)
        b2 = a2 + StepFunction.from_interleaved(u.knots, g2)
        lo, hi = u2.point_values[0] - b2.point_values[0], u2.point_values[0] - a2.point_values[0]
        x2 = float(np.clip(x0 + eps * rng.normal(), lo, hi))
        lhs, rhs = lipschitz_gap((u, a, b, x0), (u2, a2, b2, x2))
        violations += int(lhs > rhs * (1 + 1e-12) + 1e-12)
    ok = violations == 0
    report(7, "Lipschitz estimate", ok, f"{violations} violations / 500 pairs")
    assert ok


# 8 -------------------------------------------------------------------------


def test_criterion_08_counterexample(report):
    tv_greedy, tv_better = counterexample_2d()
    greedy, _ = counterexample_2d_paths()
    r5 = math.sqrt(5.0)
    shown = np.array([[2.0, 0.0], [1.0, 0.0], [1 / r5, 2 - 2 / r5]])
    ok = (
        tv_better < tv_greedy
        and abs(tv_better - 1.954) <= 1e-3
        and abs(tv_greedy - 2.236) <= 1e-3
        and np.array_equal(greedy[0::2], shown)
    )
    report(8, "2-D greedy counterexample", ok, f"greedy {tv_greedy:.5f}, better {tv_better:.5f}")
    assert ok


# 9-12 Monte Carlo ----------------------------------------------------------


def test_criterion_09_brownian_rate(report):
    t0 = time.perf_counter()
    rep = estimate_rate(PathSpec("bm", 1.0, 2 ** 15, SEED), 0.05, 0.2, 8, replicates=100)
    elapsed = time.perf_counter() - t0
    rel = np.abs(rep.c_times_tv - 1.0)
    slope_ok = -1.1 <= rep.slope <= -0.9
    limit_ok = bool(np.all(rel <= 0.10))
    ok = slope_ok and limit_ok and elapsed < 120
    detail = (
        f"slope {rep.slope:.3f}; c*TV^c from {rep.c_times_tv[0]:.3f} (c={rep.c_grid[0]:.3g}) "
        f"to {rep.c_times_tv[-1]:.3f}; worst |c*TV^c - 1| {rel.max():.3f}; {elapsed:.1f}s"
    )
    report(9, "Brownian rate", ok, detail)
    assert slope_ok, detail
    assert limit_ok, detail


@pytest.mark.parametrize("hurst", [0.6, 0.75])
def test_criterion_10_fbm_rate(report, hurst):
    rep = estimate_rate(PathSpec("fbm", 1.0, 2 ** 14, SEED, hurst=hurst), 0.05, 0.25, 8, replicates=20)
    target = 1 - 1 / hurst
    ok = abs(rep.slope - target) <= 0.12
    report(10, f"fBM rate H={hurst}", ok, f"slope {rep.slope:.3f} vs {target:.3f}")
    assert ok


def test_criterion_11_stable_rate(report):
    rep = estimate_rate(PathSpec("stable", 1.0, 2 ** 15, SEED, stability=1.5), 0.1, 0.4, 8, replicates=50)
    ok = abs(rep.slope_median - (-0.5)) <= 0.15
    report(11, "stable rate a=1.5 (median)", ok, f"median slope {rep.slope_median:.3f} vs -0.5")
    assert ok


def test_criterion_12_rate_combination(report):
    spec = PathSpec("bm", 1.0, 2 ** 15, SEED)
    grid = np.geomspace(0.05, 0.2, 8)
    tab = combination_experiment(spec, 1.0, grid, delta=0.9)
    ratio = float(tab.ratio[0])
    violations = int(np.sum(~tab.upper_ok) + np.sum(~tab.lower_ok))
    rng = np.random.default_rng(SEED + 12)
    for _ in range(200):
        n = int(rng.integers(2, 60))
        p1 = np.repeat(rng.normal(size=n).cumsum(), 2)[:-1]
        p2 = np.repeat(rng.normal(size=n).cumsum() * rng.exponential(), 2)[:-1]
        c = float(rng.exponential()) + 1e-3
        for delta in (0.5, 0.9):
            violations += 2 - sum(sandwich_holds(p1, p2, c, delta))
    ok = abs(ratio - 1) <= 0.15 and violations == 0
    report(12, "rate combination", ok, f"ratio at c={grid[0]:.3g}: {ratio:.4f}; {violations} sandwich violations")
    assert ok


# 13 ------------------------------------------------------------------------


def test_criterion_13_cli_determinism(report, tmp_path, running):
    (tmp_path / "u.json").write_text(running.to_json())
    cmds = [
        ["rates", "--process", "bm", "--T", "1", "--n", "32768", "--paths", "100",
         "--c-min", "0.05", "--c-max", "0.2", "--c-points", "8", "--seed", "42"],
        ["play", "--input", str(tmp_path / "u.json"), "--c", "1", "--xi0", "0.25"],
        ["envelope", "--input", str(tmp_path / "u.json"), "--c", "0.5"],
    ]
    same = True
    for cmd in cmds:
        outs = [
            subprocess.run([sys.executable, "-m", "truncvar", *cmd], capture_output=True, check=True).stdout
            for _ in range(2)
        ]
        same &= outs[0] == outs[1] and len(outs[0]) > 0
    report(13, "CLI byte-identical output", same, f"{len(cmds)} commands run twice")
    assert same
