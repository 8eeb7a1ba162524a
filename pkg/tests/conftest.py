import numpy as np
import pytest

from truncvar import StepFunction, from_samples
from truncvar.stepfn import admissible_start

_REPORT: list[str] = []


def random_knots(rng, n_knots):
    return np.cumsum(rng.uniform(0.1, 1.0, n_knots)) - 0.1 if n_knots > 1 else np.array([0.0])


def random_step(rng, n_knots, scale=3.0, integer=False, knots=None):
    knots = random_knots(rng, n_knots) if knots is None else knots
    m = 2 * knots.size - 1
    vals = rng.integers(-3, 4, m).astype(float) if integer else scale * rng.standard_normal(m).cumsum() / 3
    return StepFunction.from_interleaved(knots, vals)


def random_instance(rng, n_max=60, integer=False, start="random"):
    """(u, alpha, beta, xi0) on a shared grid with alpha <= beta, some zero-width spots."""
    n = int(rng.integers(1, n_max + 1))
    knots = random_knots(rng, n)
    u = random_step(rng, n, integer=integer, knots=knots)
    m = 2 * n - 1
    if integer:
        a = -rng.integers(0, 3, m).astype(float)
        g = rng.integers(0, 4, m).astype(float)
    else:
        a = rng.uniform(-2, 0.5, m)
        g = rng.exponential(1.0, m) * (rng.random(m) > 0.1)
    alpha = StepFunction.from_interleaved(knots, a)
    beta = StepFunction.from_interleaved(knots, a + g)
    lo, hi = admissible_start(u, alpha, beta)
    if start == "random":
        xi0 = lo + (hi - lo) * float(rng.random()) if integer is False else float(rng.integers(int(lo), int(hi) + 1))
    else:
        xi0 = lo
    return u, alpha, beta, xi0


@pytest.fixture
def running():
    """The small worked path: samples 0, 2, 1, 3 at times 0..3."""
    return from_samples([0, 1, 2, 3], [0, 2, 1, 3])


@pytest.fixture
def report():
    def record(number, title, ok, detail=""):
        line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}"
        if detail:
            line += f"  [{detail}]"
        _REPORT.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _REPORT:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_REPORT, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
