"""Regulated step functions on a finite horizon.

A :class:`StepFunction` on knots ``t_0 < ... < t_K`` stores the value at
every knot and the constant value on every open interval between
consecutive knots.  Most algorithms in this package work on the
*interleaved* sequence

    v_0, w_0, v_1, w_1, ..., w_{K-1}, v_K

(length ``2K+1``), where even positions are knots and odd positions are
open intervals.  Because the function is constant on each open interval,
suprema over time partitions reduce exactly to suprema over subsequences
of this interleaved sequence.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    BoundaryOrderViolation,
    HorizonMismatch,
    KnotRequired,
    LengthMismatch,
    NonFiniteValue,
    NonIncreasingTimes,
    OutOfDomain,
    StartOutOfBand,
)


def _frozen(x) -> np.ndarray:
    a = np.array(x, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class TimeInterval:
    a: float
    b: float

    def __post_init__(self):
        if not (np.isfinite(self.a) and np.isfinite(self.b)):
            raise NonFiniteValue(f"interval endpoints must be finite, got [{self.a}; {self.b}]")
        if not self.a < self.b:
            raise OutOfDomain(f"interval requires a < b, got [{self.a}; {self.b}]")

    @classmethod
    def parse(cls, text: str) -> "TimeInterval":
        """Parse ``"a,b"``."""
        parts = text.split(",")
        if len(parts) != 2:
            raise OutOfDomain(f"interval must look like 'a,b', got {text!r}")
        return cls(float(parts[0]), float(parts[1]))


@dataclass(frozen=True, eq=False)
class StepFunction:
    """Regulated step function, immutable after construction."""

    knots: np.ndarray
    point_values: np.ndarray
    interval_values: np.ndarray

    def __post_init__(self):
        knots = _frozen(self.knots)
        pv = _frozen(self.point_values)
        iv = _frozen(self.interval_values)
        if knots.ndim != 1 or knots.size < 1:
            raise LengthMismatch("at least one knot is required")
        if pv.shape != knots.shape or iv.shape != (knots.size - 1,):
            raise LengthMismatch(
                f"{knots.size} knots need {knots.size} point values and "
                f"{knots.size - 1} interval values, got {pv.size} and {iv.size}"
            )
        if not np.all(np.isfinite(knots)):
            raise NonFiniteValue("knots must be finite")
        if np.any(np.diff(knots) <= 0):
            raise NonIncreasingTimes("knots must be strictly increasing")
        if not (np.all(np.isfinite(pv)) and np.all(np.isfinite(iv))):
            raise NonFiniteValue("values must be finite")
        object.__setattr__(self, "knots", knots)
        object.__setattr__(self, "point_values", pv)
        object.__setattr__(self, "interval_values", iv)

    # -- construction -------------------------------------------------------

    @classmethod
    def constant(cls, value: float, knots: Sequence[float]) -> "StepFunction":
        knots = np.asarray(knots, dtype=float)
        return cls(knots, np.full(knots.size, value), np.full(knots.size - 1, value))

    @classmethod
    def from_interleaved(cls, knots, values) -> "StepFunction":
        values = np.asarray(values, dtype=float)
        knots = np.asarray(knots, dtype=float)
        if values.size != 2 * knots.size - 1:
            raise LengthMismatch(
                f"{knots.size} knots need {2 * knots.size - 1} interleaved values, got {values.size}"
            )
        return cls(knots, values[0::2], values[1::2])

    # -- basic accessors ----------------------------------------------------

    @property
    def start(self) -> float:
        return float(self.knots[0])

    @property
    def end(self) -> float:
        return float(self.knots[-1])

    @property
    def n_knots(self) -> int:
        return int(self.knots.size)

    def interleaved(self) -> np.ndarray:
        """Values in interleaved order ``v_0, w_0, v_1, ..., v_K``."""
        out = np.empty(2 * self.knots.size - 1)
        out[0::2] = self.point_values
        out[1::2] = self.interval_values
        return out

    def time_labels(self) -> np.ndarray:
        """One representative time per interleaved index (interval midpoints)."""
        return interleaved_times(self.knots)

    def index_of(self, t: float) -> int:
        """Interleaved index of time ``t``."""
        t = float(t)
        if not (self.knots[0] <= t <= self.knots[-1]):
            raise OutOfDomain(f"t={t} outside horizon [{self.start}; {self.end}]")
        k = int(np.searchsorted(self.knots, t, side="right")) - 1
        return 2 * k if self.knots[k] == t else 2 * k + 1

    def __call__(self, t):
        return evaluate(self, t)

    def __eq__(self, other):
        if not isinstance(other, StepFunction):
            return NotImplemented
        return (
            np.array_equal(self.knots, other.knots)
            and np.array_equal(self.point_values, other.point_values)
            and np.array_equal(self.interval_values, other.interval_values)
        )

    __hash__ = None

    def __repr__(self):
        return (
            f"StepFunction(knots={self.knots.tolist()}, point_values={self.point_values.tolist()}, "
            f"interval_values={self.interval_values.tolist()})"
        )

    # -- arithmetic on a shared grid ------------------------------------------

    def _binary(self, other, op):
        if isinstance(other, StepFunction):
            f, g = common_refinement([self, other])
            return StepFunction.from_interleaved(f.knots, op(f.interleaved(), g.interleaved()))
        return StepFunction.from_interleaved(self.knots, op(self.interleaved(), float(other)))

    def __add__(self, other):
        return self._binary(other, np.add)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, np.subtract)

    def __rsub__(self, other):
        return StepFunction.from_interleaved(self.knots, float(other) - self.interleaved())

    def __mul__(self, other):
        return self._binary(other, np.multiply)

    __rmul__ = __mul__

    def __neg__(self):
        return StepFunction.from_interleaved(self.knots, -self.interleaved())

    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.interleaved())))

    # -- serialisation ----------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "knots": self.knots.tolist(),
            "point_values": self.point_values.tolist(),
            "interval_values": self.interval_values.tolist(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "StepFunction":
        try:
            return cls(d["knots"], d["point_values"], d["interval_values"])
        except KeyError as e:
            raise LengthMismatch(f"step function JSON lacks field {e.args[0]!r}") from None

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "StepFunction":
        return cls.from_dict(json.loads(text))


def interleaved_times(knots) -> np.ndarray:
    knots = np.asarray(knots, dtype=float)
    out = np.empty(2 * knots.size - 1)
    out[0::2] = knots
    out[1::2] = 0.5 * (knots[:-1] + knots[1:])
    return out


def evaluate(f: StepFunction, t):
    """Value of ``f`` at time(s) ``t``."""
    scalar = np.ndim(t) == 0
    t = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(~np.isfinite(t)) or np.any(t < f.knots[0]) or np.any(t > f.knots[-1]):
        raise OutOfDomain(f"evaluation time outside horizon [{f.start}; {f.end}]")
    k = np.searchsorted(f.knots, t, side="right") - 1
    if f.n_knots == 1:
        out = f.point_values[k]
    else:
        inside = f.interval_values[np.minimum(k, f.n_knots - 2)]
        out = np.where(f.knots[k] == t, f.point_values[k], inside)
    return float(out[0]) if scalar else out


def from_samples(times, values) -> StepFunction:
    """Right-continuous step function holding ``values[k]`` on ``[t_k; t_{k+1})``."""
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    if times.shape != values.shape or times.ndim != 1:
        raise LengthMismatch(f"{times.size} times but {values.size} values")
    if times.size < 1:
        raise LengthMismatch("at least one sample is required")
    if np.any(np.diff(times) <= 0):
        raise NonIncreasingTimes("sample times must be strictly increasing")
    if not np.all(np.isfinite(values)) or not np.all(np.isfinite(times)):
        raise NonFiniteValue("samples must be finite")
    return StepFunction(times, values, values[:-1])


def read_samples_csv(text: str) -> StepFunction:
    """Parse ``time,value`` rows (an optional header line is skipped)."""
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    if rows and not _is_number(rows[0][0]):
        rows = rows[1:]
    if any(len(r) != 2 for r in rows):
        raise LengthMismatch("CSV rows must have exactly two columns: time,value")
    return from_samples([float(r[0]) for r in rows], [float(r[1]) for r in rows])


def write_samples_csv(f: StepFunction) -> str:
    """Inverse of :func:`read_samples_csv` for right-continuous functions."""
    buf = io.StringIO()
    buf.write("time,value\n")
    for t, v in zip(f.knots, f.point_values):
        buf.write(f"{float(t)!r},{float(v)!r}\n")
    return buf.getvalue()


def _is_number(s: str) -> bool:
    try:
        float(s)
    except ValueError:
        return False
    return True


def common_refinement(fs: Sequence[StepFunction]) -> list[StepFunction]:
    """Re-express every function on the sorted union of all knots."""
    fs = list(fs)
    if not fs:
        return []
    a, b = fs[0].start, fs[0].end
    for f in fs[1:]:
        if f.start != a or f.end != b:
            raise HorizonMismatch(
                f"horizons differ: [{a}; {b}] vs [{f.start}; {f.end}]"
            )
    knots = np.unique(np.concatenate([f.knots for f in fs]))
    if all(f.knots.size == knots.size for f in fs):
        return fs
    mids = 0.5 * (knots[:-1] + knots[1:])
    return [StepFunction(knots, evaluate(f, knots), evaluate(f, mids)) for f in fs]


@dataclass(frozen=True, eq=False)
class DiscreteTriple:
    """Interleaved input and band sequences on one grid."""

    psi: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray
    knots: np.ndarray

    def __post_init__(self):
        psi, alpha, beta = (_frozen(x) for x in (self.psi, self.alpha, self.beta))
        if not (psi.shape == alpha.shape == beta.shape) or psi.ndim != 1:
            raise LengthMismatch("psi, alpha, beta must have equal length")
        if psi.size % 2 != 1:
            raise LengthMismatch("interleaved sequences must have odd length")
        knots = self.knots
        if knots is None:
            knots = np.arange((psi.size + 1) // 2, dtype=float)
        knots = _frozen(knots)
        if 2 * knots.size - 1 != psi.size:
            raise LengthMismatch("knot count does not match sequence length")
        if not (np.all(np.isfinite(psi)) and np.all(np.isfinite(alpha)) and np.all(np.isfinite(beta))):
            raise NonFiniteValue("values must be finite")
        bad = np.flatnonzero(alpha > beta)
        if bad.size:
            i = int(bad[0])
            raise BoundaryOrderViolation(i, float(alpha[i]), float(beta[i]))
        for name, val in (("psi", psi), ("alpha", alpha), ("beta", beta), ("knots", knots)):
            object.__setattr__(self, name, val)

    @classmethod
    def from_arrays(cls, psi, alpha, beta, knots=None) -> "DiscreteTriple":
        """Build from raw interleaved arrays; scalars broadcast."""
        psi = np.asarray(psi, dtype=float)
        alpha = np.broadcast_to(np.asarray(alpha, dtype=float), psi.shape)
        beta = np.broadcast_to(np.asarray(beta, dtype=float), psi.shape)
        return cls(psi, alpha, beta, knots)

    def __len__(self):
        return int(self.psi.size)

    @property
    def times(self) -> np.ndarray:
        return interleaved_times(self.knots)

    @property
    def lower(self) -> np.ndarray:
        """``psi - beta``: the smallest admissible output value."""
        return self.psi - self.beta

    @property
    def upper(self) -> np.ndarray:
        """``psi - alpha``: the largest admissible output value."""
        return self.psi - self.alpha


def interleave(f: StepFunction, alpha: StepFunction, beta: StepFunction) -> DiscreteTriple:
    """Put ``f``, ``alpha``, ``beta`` on one grid and interleave them."""
    f, alpha, beta = common_refinement([f, alpha, beta])
    return DiscreteTriple(f.interleaved(), alpha.interleaved(), beta.interleaved(), f.knots)


def deinterleave(tri: DiscreteTriple) -> tuple[StepFunction, StepFunction, StepFunction]:
    return tuple(StepFunction.from_interleaved(tri.knots, x) for x in (tri.psi, tri.alpha, tri.beta))


def symmetrize(psi: StepFunction, alpha: StepFunction, beta: StepFunction):
    """Return ``(psi - (alpha+beta)/2, beta - alpha)`` on the common grid."""
    tri = interleave(psi, alpha, beta)
    centre = 0.5 * (tri.alpha + tri.beta)
    psi_tilde = StepFunction.from_interleaved(tri.knots, tri.psi - centre)
    gamma = StepFunction.from_interleaved(tri.knots, tri.beta - tri.alpha)
    return psi_tilde, gamma


def admissible_start(u: StepFunction, alpha: StepFunction, beta: StepFunction) -> tuple[float, float]:
    """Interval ``[u(0)-beta(0); u(0)-alpha(0)]`` of valid starting values."""
    u0, a0, b0 = u.point_values[0], alpha.point_values[0], beta.point_values[0]
    return float(u0 - b0), float(u0 - a0)


def shift_for_start(u: StepFunction, alpha: StepFunction, beta: StepFunction, xi0: float):
    """Replace ``u(t_0)`` by ``xi0`` and collapse the band at ``t_0`` to ``{0}``.

    After the shift the only admissible output value at ``t_0`` is ``xi0``,
    so the minimal-variation envelope of the shifted data is forced to start
    there.
    """
    u, alpha, beta = common_refinement([u, alpha, beta])
    bad = np.flatnonzero(alpha.interleaved() > beta.interleaved())
    if bad.size:
        i = int(bad[0])
        raise BoundaryOrderViolation(i, float(alpha.interleaved()[i]), float(beta.interleaved()[i]))
    lo, hi = admissible_start(u, alpha, beta)
    xi0 = float(xi0)
    if not (lo <= xi0 <= hi):
        raise StartOutOfBand(xi0, lo, hi)

    def with_first(f, v):
        pv = f.point_values.copy()
        pv[0] = v
        return StepFunction(f.knots, pv, f.interval_values)

    return with_first(u, xi0), with_first(alpha, 0.0), with_first(beta, 0.0)


def index_range(knots, iv: TimeInterval | None) -> tuple[int, int]:
    """Interleaved index range ``[lo, hi]`` covering ``iv``."""
    knots = np.asarray(knots)
    last = 2 * knots.size - 2
    if iv is None:
        return 0, last

    def idx(t):
        if not (knots[0] <= t <= knots[-1]):
            raise OutOfDomain(f"t={t} outside horizon [{knots[0]}; {knots[-1]}]")
        k = int(np.searchsorted(knots, t, side="right")) - 1
        return 2 * k if knots[k] == t else 2 * k + 1

    return idx(iv.a), idx(iv.b)


def restrict(f: StepFunction, a: float, b: float | None = None) -> StepFunction:
    """Restriction of ``f`` to ``[a; b]``; both endpoints must be knots."""
    b = f.end if b is None else b
    ka = np.flatnonzero(f.knots == a)
    kb = np.flatnonzero(f.knots == b)
    if ka.size == 0 or kb.size == 0:
        raise KnotRequired(f"restriction endpoints must be knots, got [{a}; {b}]")
    i, j = int(ka[0]), int(kb[0])
    if i >= j:
        raise OutOfDomain(f"empty restriction [{a}; {b}]")
    return StepFunction(f.knots[i:j + 1], f.point_values[i:j + 1], f.interval_values[i:j])
