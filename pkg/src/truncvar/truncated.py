"""Minimal-variation envelope and fast truncated variations.

Given interleaved sequences ``psi``, ``alpha <= beta``, every admissible
output ``xi`` satisfies ``lower <= xi <= upper`` with ``lower = psi - beta``
and ``upper = psi - alpha``.  The envelope built here is the admissible
sequence of least total variation on every prefix ``[0; i]``.  It is lazy:

* before the first switch it sits at a constant level;
* on an upward run it follows the running maximum of ``lower``;
* on a downward run it follows the running minimum of ``upper``;

and a run ends at the first index where its running extremum leaves the
band.  One forward sweep, O(n).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidThreshold
from .stepfn import DiscreteTriple, StepFunction, TimeInterval, index_range, interleaved_times
from .variation import VariationProfile, running_variation

try:
    from numba import njit
except ImportError:  # pragma: no cover
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda fn: fn

FLAT, UP, DOWN = 0, 1, -1
_BRANCH_NAMES = {FLAT: "Flat", UP: "Up", DOWN: "Down"}


@njit(cache=True, nogil=True)
def _envelope_kernel(lower, upper):
    n = lower.size
    p = np.empty(n)
    sw_idx = np.empty(n, dtype=np.int64)
    sw_dir = np.empty(n, dtype=np.int64)
    n_sw = 0

    # initial flat segment: find the first index where the band cannot
    # hold a constant any longer
    min_up = upper[0]
    max_lo = lower[0]
    branch = FLAT
    j = 0
    for j in range(n):
        if lower[j] > min(min_up, upper[j]):
            branch = UP
            break
        if upper[j] < max(max_lo, lower[j]):
            branch = DOWN
            break
        min_up = min(min_up, upper[j])
        max_lo = max(max_lo, lower[j])
    if branch == FLAT:
        start = min_up
        for i in range(n):
            p[i] = start
        return p, sw_idx[:0], sw_dir[:0], start, branch

    start = min_up if branch == UP else max_lo
    for i in range(j):
        p[i] = start

    direction = branch
    level = lower[j] if direction == UP else upper[j]
    sw_idx[0] = j
    sw_dir[0] = direction
    n_sw = 1
    p[j] = level
    for i in range(j + 1, n):
        if direction == UP:
            if upper[i] < level:
                direction = DOWN
                level = upper[i]
                sw_idx[n_sw] = i
                sw_dir[n_sw] = DOWN
                n_sw += 1
            elif lower[i] > level:
                level = lower[i]
        else:
            if lower[i] > level:
                direction = UP
                level = lower[i]
                sw_idx[n_sw] = i
                sw_dir[n_sw] = UP
                n_sw += 1
            elif upper[i] < level:
                level = upper[i]
        p[i] = level
    return p, sw_idx[:n_sw], sw_dir[:n_sw], start, branch


def envelope_arrays(lower, upper):
    """Raw envelope on arrays: ``(values, switch_idx, switch_dir, start, branch)``."""
    lower = np.ascontiguousarray(lower, dtype=np.float64)
    upper = np.ascontiguousarray(upper, dtype=np.float64)
    return _envelope_kernel(lower, upper)


@njit(cache=True)
def _envelope_rows(lower, upper):
    out = np.empty_like(lower)
    for r in range(lower.shape[0]):
        out[r] = _envelope_kernel(lower[r], upper[r])[0]
    return out


def envelope_batch(lower, upper) -> np.ndarray:
    """Envelope values for each row of 2-D ``lower`` / ``upper``."""
    lower = np.ascontiguousarray(np.atleast_2d(lower), dtype=np.float64)
    upper = np.ascontiguousarray(np.atleast_2d(upper), dtype=np.float64)
    return _envelope_rows(lower, upper)


@dataclass(frozen=True, eq=False)
class EnvelopeResult:
    envelope: StepFunction
    profile: VariationProfile
    switches: list
    start_value: float
    branch: str

    @property
    def values(self) -> np.ndarray:
        return self.envelope.interleaved()


def switching_indices(tri: DiscreteTriple):
    """First indices at which an upward / downward move is unavoidable.

    ``iu0`` is the first ``j`` where ``psi_j - beta_j`` exceeds the running
    minimum of ``psi - alpha``; ``id0`` is the first ``j`` where
    ``psi_j - alpha_j`` drops below the running maximum of ``psi - beta``.
    ``None`` if no such index exists.
    """
    lo, hi = tri.lower, tri.upper
    up = np.flatnonzero(lo > np.minimum.accumulate(hi))
    down = np.flatnonzero(hi < np.maximum.accumulate(lo))
    iu0 = int(up[0]) if up.size else None
    id0 = int(down[0]) if down.size else None
    return iu0, id0


def optimal_start(tri: DiscreteTriple):
    """Starting value of the envelope and which way it first moves.

    Computed from the first-exit indices alone, independently of the sweep in
    :func:`minimal_envelope`.
    """
    lo, hi = tri.lower, tri.upper
    iu0, id0 = switching_indices(tri)
    if iu0 is None and id0 is None:
        return float(hi.min()), "Flat"
    if id0 is None or (iu0 is not None and iu0 <= id0):
        return float(hi[: iu0 + 1].min()), "Up"
    return float(lo[: id0 + 1].max()), "Down"


def minimal_envelope(tri: DiscreteTriple) -> EnvelopeResult:
    """Admissible output of least variation on every prefix, with its profile."""
    p, sw_idx, sw_dir, start, branch = envelope_arrays(tri.lower, tri.upper)
    tv, utv, dtv = running_variation(p)
    switches = [(int(i), "Up" if d == UP else "Down") for i, d in zip(sw_idx, sw_dir)]
    return EnvelopeResult(
        envelope=StepFunction.from_interleaved(tri.knots, p),
        profile=VariationProfile(tri.times, tv, utv, dtv),
        switches=switches,
        start_value=float(start),
        branch=_BRANCH_NAMES[int(branch)],
    )


def truncated_profile_arrays(x, c: float):
    """Running ``(tv, utv, dtv)`` of the constant-band truncated variation of ``x``."""
    x = np.asarray(x, dtype=float)
    half = 0.5 * float(c)
    p = envelope_arrays(x - half, x + half)[0]
    return running_variation(p)


def tv_truncated(f: StepFunction, c: float, iv: TimeInterval | None = None) -> VariationProfile:
    """Running ``TV^c``, ``UTV^c``, ``DTV^c`` of ``f`` over ``iv``."""
    if not c > 0:
        raise InvalidThreshold(f"truncation level must be positive, got {c}")
    lo, hi = index_range(f.knots, iv)
    x = f.interleaved()[lo:hi + 1]
    tv, utv, dtv = truncated_profile_arrays(x, c)
    return VariationProfile(interleaved_times(f.knots)[lo:hi + 1], tv, utv, dtv)


def ab_truncated(tri: DiscreteTriple) -> VariationProfile:
    """Running alpha,beta-truncated variations of a triple."""
    return minimal_envelope(tri).profile
