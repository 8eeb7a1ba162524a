"""Exact variations of step functions and brute-force truncated variations.

The brute-force routines evaluate the defining suprema literally, as a
maximum over increasing subsequences of the interleaved index set.  They are
O(n^2) (dynamic programming) or O(2^n) (full enumeration) and exist to
validate the linear-time constructions in :mod:`truncvar.truncated`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import InvalidExponent, InvalidThreshold, OracleTooLarge
from .stepfn import DiscreteTriple, StepFunction, TimeInterval, index_range, interleaved_times

Mode = Literal["TV", "UTV", "DTV"]
MODES = ("TV", "UTV", "DTV")

ORACLE_CAP = 2000
EXHAUSTIVE_CAP = 14


@dataclass(frozen=True, eq=False)
class VariationProfile:
    """Running ``TV``, ``UTV``, ``DTV`` from the first index of a window."""

    times: np.ndarray
    tv: np.ndarray
    utv: np.ndarray
    dtv: np.ndarray

    @property
    def final(self) -> dict:
        return {"tv": float(self.tv[-1]), "utv": float(self.utv[-1]), "dtv": float(self.dtv[-1])}

    def to_dict(self) -> dict:
        return {
            "times": self.times.tolist(),
            "tv": self.tv.tolist(),
            "utv": self.utv.tolist(),
            "dtv": self.dtv.tolist(),
        }


def running_variation(x: np.ndarray):
    """Running (tv, utv, dtv) of a finite sequence; ``tv`` is ``utv + dtv``."""
    x = np.asarray(x, dtype=float)
    d = np.diff(x)
    utv = np.concatenate(([0.0], np.cumsum(np.maximum(d, 0.0))))
    dtv = np.concatenate(([0.0], np.cumsum(np.maximum(-d, 0.0))))
    return utv + dtv, utv, dtv


def _window(f: StepFunction, iv: TimeInterval | None):
    lo, hi = index_range(f.knots, iv)
    return lo, hi, f.interleaved()[lo:hi + 1], interleaved_times(f.knots)[lo:hi + 1]


def total_variation(f: StepFunction, iv: TimeInterval | None = None) -> VariationProfile:
    """Running total, positive and negative variation of ``f`` over ``iv``."""
    _, _, x, times = _window(f, iv)
    tv, utv, dtv = running_variation(x)
    return VariationProfile(times, tv, utv, dtv)


def p_variation(f: StepFunction, p: float, iv: TimeInterval | None = None) -> float:
    """Supremum over partitions of ``sum |f(t_i) - f(t_{i-1})|**p``.

    Dynamic programming over the interleaved index set: ``best[i]`` is the
    largest sum over subsequences ending at ``i``.
    """
    if not p >= 1:
        raise InvalidExponent(f"p-variation requires p >= 1, got {p}")
    _, _, x, _ = _window(f, iv)
    if p == 1:
        return float(running_variation(x)[0][-1])
    n = x.size
    best = np.zeros(n)
    for i in range(1, n):
        best[i] = np.max(best[:i] + np.abs(x[i] - x[:i]) ** p)
    return float(best.max())


# -- brute-force truncated variations --------------------------------------


def _gains(lower, upper, j, i, mode: Mode):
    # j (array) precedes i (scalar); lower = psi - beta, upper = psi - alpha
    up = np.maximum(lower[i] - upper[j], 0.0)
    if mode == "UTV":
        return up
    down = np.maximum(lower[j] - upper[i], 0.0)
    if mode == "DTV":
        return down
    return np.maximum(up, down)


def dp_profile(lower, upper, mode: Mode, cap: int = ORACLE_CAP) -> np.ndarray:
    """Prefix values of the truncated variation by O(n^2) dynamic programming.

    Entry ``l`` is the supremum over increasing index subsequences inside
    ``[0; l]`` of the summed truncated increments.
    """
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    n = lower.size
    if n > cap:
        raise OracleTooLarge(f"oracle limited to {cap} interleaved indices, got {n}")
    best = np.zeros(n)
    for i in range(1, n):
        cand = best[:i] + _gains(lower, upper, np.arange(i), i, mode)
        best[i] = max(0.0, float(cand.max()))
    return np.maximum.accumulate(best)


def dp_profile_batch(lower, upper, mode: Mode) -> np.ndarray:
    """Row-wise :func:`dp_profile` for 2-D arrays of many short sequences."""
    lower = np.atleast_2d(np.asarray(lower, dtype=float))
    upper = np.atleast_2d(np.asarray(upper, dtype=float))
    best = np.zeros(lower.shape)
    for i in range(1, lower.shape[1]):
        up = np.maximum(lower[:, i:i + 1] - upper[:, :i], 0.0)
        down = np.maximum(lower[:, :i] - upper[:, i:i + 1], 0.0)
        gain = {"UTV": up, "DTV": down}.get(mode)
        if gain is None:
            gain = np.maximum(up, down)
        best[:, i] = np.maximum((best[:, :i] + gain).max(axis=1), 0.0)
    return np.maximum.accumulate(best, axis=1)


def exhaustive_value(psi_tilde, gamma, mode: Mode) -> float:
    """Literal supremum over every index subsequence (O(2^n)).

    Summands use the symmetrised input and band width exactly as in the
    definition: ``(|d| - (g_i + g_j)/2)_+`` with ``d`` the increment of the
    symmetrised input (signed variants for UTV/DTV).
    """
    x = np.asarray(psi_tilde, dtype=float)
    g = np.asarray(gamma, dtype=float)
    n = x.size
    if n > EXHAUSTIVE_CAP:
        raise OracleTooLarge(f"exhaustive enumeration limited to {EXHAUSTIVE_CAP} indices, got {n}")
    sign = {"UTV": 1.0, "DTV": -1.0}.get(mode)
    best = 0.0
    for r in range(2, n + 1):
        for idx in itertools.combinations(range(n), r):
            total = 0.0
            for a, b in zip(idx[:-1], idx[1:]):
                d = x[b] - x[a]
                d = abs(d) if sign is None else sign * d
                total += max(d - 0.5 * (g[a] + g[b]), 0.0)
            best = max(best, total)
    return best


def tv_trunc_oracle(
    f: StepFunction,
    c: float,
    iv: TimeInterval | None = None,
    mode: Mode = "TV",
    exhaustive: bool = False,
    cap: int = ORACLE_CAP,
) -> float:
    """Truncated variation with constant threshold ``c``, evaluated by brute force."""
    if c < 0:
        raise InvalidThreshold(f"truncation level must be nonnegative, got {c}")
    _, _, x, _ = _window(f, iv)
    if exhaustive:
        return exhaustive_value(x, np.full(x.size, float(c)), mode)
    return float(dp_profile(x - 0.5 * c, x + 0.5 * c, mode, cap)[-1])


def ab_trunc_oracle(
    tri: DiscreteTriple,
    range: tuple[int, int] | None = None,
    mode: Mode = "TV",
    exhaustive: bool = False,
    cap: int = ORACLE_CAP,
) -> float:
    """Discrete alpha,beta-truncated variation on interleaved indices ``[k; l]``."""
    k, l = (0, len(tri) - 1) if range is None else range
    sl = slice(k, l + 1)
    if exhaustive:
        centre = 0.5 * (tri.alpha[sl] + tri.beta[sl])
        return exhaustive_value(tri.psi[sl] - centre, tri.beta[sl] - tri.alpha[sl], mode)
    return float(dp_profile(tri.lower[sl], tri.upper[sl], mode, cap)[-1])


def ab_trunc_oracle_profile(tri: DiscreteTriple, cap: int = ORACLE_CAP) -> VariationProfile:
    """Prefix profiles of all three brute-force functionals from index 0."""
    lo, hi = tri.lower, tri.upper
    return VariationProfile(
        tri.times,
        dp_profile(lo, hi, "TV", cap),
        dp_profile(lo, hi, "UTV", cap),
        dp_profile(lo, hi, "DTV", cap),
    )
