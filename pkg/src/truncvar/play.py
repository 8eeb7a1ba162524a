"""Play operator with step input and step characteristics.

Two independent routes are provided:

* :func:`play` reads the output off the minimal-variation envelope of the
  start-shifted data (the band at ``t_0`` collapsed to ``{0}`` and ``u(t_0)``
  replaced by ``xi0``), so its upward and downward variations are the
  alpha,beta-truncated variations of that data;
* :func:`play_recursion` folds the one-step clamp
  ``xi_i = min(max(u_i - beta_i, xi_{i-1}), u_i - alpha_i)``.

On step functions both give the same sequence, bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BoundaryOrderViolation, InvalidThreshold, KnotRequired
from .stepfn import (
    StepFunction,
    admissible_start,
    common_refinement,
    interleave,
    restrict,
    shift_for_start,
)
from .truncated import minimal_envelope
from .variation import running_variation


@dataclass(frozen=True, eq=False)
class PlayResult:
    xi: StepFunction
    xi_u: StepFunction
    xi_d: StepFunction
    phi: StepFunction
    start: float

    @classmethod
    def from_output(cls, u: StepFunction, xi_values, start: float | None = None) -> "PlayResult":
        """Wrap an output sequence on ``u``'s grid, splitting it into monotone parts."""
        xi_values = np.asarray(xi_values, dtype=float)
        _, utv, dtv = running_variation(xi_values)
        knots = u.knots
        return cls(
            xi=StepFunction.from_interleaved(knots, xi_values),
            xi_u=StepFunction.from_interleaved(knots, utv),
            xi_d=StepFunction.from_interleaved(knots, dtv),
            phi=StepFunction.from_interleaved(knots, u.interleaved() - xi_values),
            start=float(xi_values[0] if start is None else start),
        )

    def total_variation(self) -> float:
        return float(self.xi_u.interleaved()[-1] + self.xi_d.interleaved()[-1])

    def to_dict(self) -> dict:
        return {
            "xi": self.xi.to_dict(),
            "xi_u": self.xi_u.to_dict(),
            "xi_d": self.xi_d.to_dict(),
            "phi": self.phi.to_dict(),
            "start": self.start,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PlayResult":
        return cls(
            xi=StepFunction.from_dict(d["xi"]),
            xi_u=StepFunction.from_dict(d["xi_u"]),
            xi_d=StepFunction.from_dict(d["xi_d"]),
            phi=StepFunction.from_dict(d["phi"]),
            start=float(d["start"]),
        )


def _constant_band(u: StepFunction, c: float):
    half = 0.5 * float(c)
    return StepFunction.constant(-half, u.knots), StepFunction.constant(half, u.knots)


def play(u: StepFunction, alpha: StepFunction, beta: StepFunction, xi0: float) -> PlayResult:
    """Play operator via the envelope of the start-shifted data."""
    u, alpha, beta = common_refinement([u, alpha, beta])
    u_s, a_s, b_s = shift_for_start(u, alpha, beta, xi0)
    env = minimal_envelope(interleave(u_s, a_s, b_s))
    return PlayResult.from_output(u, env.values, xi0)


def play_constant(u: StepFunction, c: float, xi0: float) -> PlayResult:
    """Play operator with the constant band ``[-c/2; c/2]``."""
    if not c > 0:
        raise InvalidThreshold(f"band width must be positive, got {c}")
    alpha, beta = _constant_band(u, c)
    return play(u, alpha, beta, xi0)


def one_step(xi_prev: float, u_i: float, alpha_i: float, beta_i: float) -> float:
    """Nearest admissible value to ``xi_prev`` in ``[u_i - beta_i; u_i - alpha_i]``."""
    if alpha_i > beta_i:
        raise BoundaryOrderViolation(0, alpha_i, beta_i)
    return min(max(u_i - beta_i, xi_prev), u_i - alpha_i)


def _clamp_fold(lower: np.ndarray, upper: np.ndarray, xi0: float) -> np.ndarray:
    out = np.empty(lower.size)
    x = float(xi0)
    out[0] = x
    for i in range(1, lower.size):
        x = min(max(lower[i], x), upper[i])
        out[i] = x
    return out


def play_recursion(u: StepFunction, alpha: StepFunction, beta: StepFunction, xi0: float) -> PlayResult:
    """Play operator by folding the one-step clamp over interleaved indices."""
    u, alpha, beta = common_refinement([u, alpha, beta])
    shift_for_start(u, alpha, beta, xi0)  # validates band order and start
    tri = interleave(u, alpha, beta)
    return PlayResult.from_output(u, _clamp_fold(tri.lower, tri.upper, xi0), xi0)


# -- closed forms for the constant band ----------------------------------------


def formula_profiles(u: StepFunction, c: float, xi0: float):
    """Running upward/downward variations of the constant-band play output.

    Evaluates the closed forms directly by dynamic programming over
    subsequences ``0 < t_1 < ... < t_n <= t``: the first summand compares
    ``u(t_1)`` with ``xi0`` using half the band, the rest are ordinary
    ``c``-truncated increments of ``u``.
    """
    x = u.interleaved()
    half = 0.5 * float(c)
    n = x.size
    out = []
    for sign in (1.0, -1.0):
        best = np.zeros(n)
        for i in range(1, n):
            first = max(sign * (x[i] - xi0) - half, 0.0)
            if i > 1:
                prev = best[1:i] + np.maximum(sign * (x[i] - x[1:i]) - c, 0.0)
                first = max(first, float(prev.max()))
            best[i] = first
        out.append(np.maximum.accumulate(best))
    return out[0], out[1]


# -- diagnostics -------------------------------------------------------------


def lipschitz_gap(inputs1, inputs2):
    """Sup-distance of two play outputs and the Lipschitz bound for it.

    Each argument is ``(u, alpha, beta, xi0)``.  Returns ``(lhs, rhs)`` with
    ``rhs = max(|xi0_1 - xi0_2|, |alpha_1-alpha_2| + |beta_1-beta_2| + |u_1-u_2|)``
    (sup norms); ``lhs <= rhs`` always holds.
    """
    u1, a1, b1, x1 = inputs1
    u2, a2, b2, x2 = inputs2
    u1, a1, b1, u2, a2, b2 = common_refinement([u1, a1, b1, u2, a2, b2])
    p1 = play(u1, a1, b1, x1).xi.interleaved()
    p2 = play(u2, a2, b2, x2).xi.interleaved()
    lhs = float(np.max(np.abs(p1 - p2)))

    def dist(f, g):
        return float(np.max(np.abs(f.interleaved() - g.interleaved())))

    rhs = max(abs(float(x1) - float(x2)), dist(a1, a2) + dist(b1, b2) + dist(u1, u2))
    return lhs, rhs


def semigroup_check(u, alpha, beta, xi0, t_mid, route: str = "play") -> bool:
    """Does restarting at the knot ``t_mid`` reproduce the tail exactly?

    ``route="play"`` restarts the play operator from the value it attained at
    ``t_mid``.  ``route="envelope"`` instead recomputes the minimal-variation
    envelope on the tail with a freshly optimised start, which in general
    does not reproduce the tail.
    """
    u, alpha, beta = common_refinement([u, alpha, beta])
    if not np.any(u.knots == t_mid) or t_mid in (u.start, u.end):
        raise KnotRequired(f"t_mid={t_mid} must be an interior knot")
    k = int(np.flatnonzero(u.knots == t_mid)[0])
    tails = [restrict(f, t_mid) for f in (u, alpha, beta)]
    if route == "play":
        full = play(u, alpha, beta, xi0).xi.interleaved()
        tail = play(*tails, full[2 * k]).xi.interleaved()
    elif route == "envelope":
        full = minimal_envelope(interleave(u, alpha, beta)).values
        tail = minimal_envelope(interleave(*tails)).values
    else:
        raise ValueError(f"unknown route {route!r}")
    return bool(np.array_equal(full[2 * k:], tail))


def skorohod_check(result: PlayResult, alpha: StepFunction, beta: StepFunction, tol: float = 1e-9):
    """List violations of the step-level Skorohod conditions.

    Checked: ``alpha <= phi <= beta``; ``xi(t_0) = start``;
    ``xi = start + xi_u - xi_d`` with both parts nondecreasing from 0; the
    upward part grows only where ``phi = beta``, the downward part only where
    ``phi = alpha``; no index where both grow.  Empty list means no
    violations.
    """
    phi, alpha, beta, xi, xu, xd = common_refinement(
        [result.phi, alpha, beta, result.xi, result.xi_u, result.xi_d]
    )
    phi, a, b = phi.interleaved(), alpha.interleaved(), beta.interleaved()
    xi, xu, xd = xi.interleaved(), xu.interleaved(), xd.interleaved()
    out = []
    for i in np.flatnonzero((phi < a - tol) | (phi > b + tol)):
        out.append({"index": int(i), "kind": "outside_band"})
    if abs(xi[0] - result.start) > tol:
        out.append({"index": 0, "kind": "start_mismatch"})
    if xu[0] != 0 or xd[0] != 0:
        out.append({"index": 0, "kind": "parts_not_zero_at_start"})
    for i in np.flatnonzero(np.abs(result.start + xu - xd - xi) > tol):
        out.append({"index": int(i), "kind": "decomposition_mismatch"})
    du, dd = np.diff(xu), np.diff(xd)
    for i in np.flatnonzero((du < 0) | (dd < 0)) + 1:
        out.append({"index": int(i), "kind": "part_decreasing"})
    for i in np.flatnonzero(du > 0) + 1:
        if abs(phi[i] - b[i]) > tol:
            out.append({"index": int(i), "kind": "up_off_upper_contact"})
    for i in np.flatnonzero(dd > 0) + 1:
        if abs(phi[i] - a[i]) > tol:
            out.append({"index": int(i), "kind": "down_off_lower_contact"})
    for i in np.flatnonzero((du > 0) & (dd > 0)) + 1:
        out.append({"index": int(i), "kind": "both_parts_increase"})
    return out


def skorohod_inner_products(result: PlayResult, c: float):
    """Step-level forms of the two reflection identities for the band ``c``.

    Returns ``(sum phi*dxi, c/2*TV(xi), sum phi*dTV, c/2*(xi_end - xi_0))``;
    the first two and the last two coincide for a play output.
    """
    phi = result.phi.interleaved()[1:]
    xi = result.xi.interleaved()
    tv, _, _ = running_variation(xi)
    half = 0.5 * float(c)
    return (
        float(np.sum(phi * np.diff(xi))),
        half * float(tv[-1]),
        float(np.sum(phi * np.diff(tv))),
        half * float(xi[-1] - xi[0]),
    )


# -- two-dimensional counterexample ------------------------------------------------

_SQ5 = math.sqrt(5.0)
#: input on [0;2] in interleaved order: t=0, (0;1), t=1, (1;2), t=2
COUNTEREXAMPLE_INPUT = np.array([[2.0, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 2.0], [0.0, 2.0]])
COUNTEREXAMPLE_START = np.array([2.0, 0.0])
#: the competitor with smaller variation, same interleaved order
COUNTEREXAMPLE_BETTER = np.array(
    [[2.0, 0.0], [0.6, 0.8], [0.6, 0.8], [1 / _SQ5, 2 - 2 / _SQ5], [1 / _SQ5, 2 - 2 / _SQ5]]
)


def _greedy_ball(u_pts: np.ndarray, start: np.ndarray, radius: float = 1.0) -> np.ndarray:
    out = np.empty_like(u_pts)
    x = start.astype(float)
    out[0] = x
    for i in range(1, len(u_pts)):
        d = x - u_pts[i]
        r = float(np.hypot(*d))
        if r > radius:
            x = u_pts[i] + d * (radius / r)
        out[i] = x
    return out


def _path_length(pts: np.ndarray) -> float:
    return float(np.sum(np.hypot(*np.diff(pts, axis=0).T)))


def counterexample_2d_paths():
    """Greedy output and the better competitor for the fixed planar example."""
    greedy = _greedy_ball(COUNTEREXAMPLE_INPUT, COUNTEREXAMPLE_START)
    return greedy, COUNTEREXAMPLE_BETTER.copy()


def counterexample_2d():
    """``(tv_greedy, tv_better)`` on ``[0;2]`` for the planar unit-ball example.

    In the plane the greedy nearest-point rule is not variation-minimal.
    """
    greedy, better = counterexample_2d_paths()
    return _path_length(greedy), _path_length(better)


def optimal_start_search(u, alpha, beta, n_grid: int = 64, extra=()):
    """Total variation of the play output over a grid of admissible starts.

    Returns ``(starts, tvs)``; the grid has ``n_grid`` interior points plus
    both endpoints and any ``extra`` values.
    """
    u, alpha, beta = common_refinement([u, alpha, beta])
    lo, hi = admissible_start(u, alpha, beta)
    starts = np.unique(np.concatenate([np.linspace(lo, hi, n_grid + 2), np.asarray(extra, float)]))
    tvs = np.array([play(u, alpha, beta, s).total_variation() for s in starts])
    return starts, tvs


__all__ = [
    "PlayResult",
    "play",
    "play_constant",
    "play_recursion",
    "one_step",
    "formula_profiles",
    "lipschitz_gap",
    "semigroup_check",
    "skorohod_check",
    "skorohod_inner_products",
    "counterexample_2d",
    "counterexample_2d_paths",
    "optimal_start_search",
]
