"""Seeded sample paths of Brownian motion, fractional Brownian motion and
symmetric alpha-stable Levy motion on a uniform grid.

Randomness comes from numpy's counter-based ``Philox`` bit generator keyed by
``SeedSequence([seed, replicate])``, so a path is a pure function of
``(spec, replicate)`` and can be regenerated in isolation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import linalg

from .errors import InvalidSpec
from .stepfn import StepFunction, from_samples

KINDS = ("brownian", "fbm", "stable")
_ALIASES = {"bm": "brownian", "brownian": "brownian", "fbm": "fbm", "stable": "stable"}

DENSE_FALLBACK_MAX = 2 ** 11
RNG_NAME = "numpy.Philox4x64-10/SeedSequence([seed, replicate])"


@dataclass(frozen=True)
class PathSpec:
    kind: str
    horizon_T: float = 1.0
    n_steps: int = 1024
    seed: int = 0
    hurst: float | None = None
    stability: float | None = None

    def __post_init__(self):
        kind = _ALIASES.get(str(self.kind).lower())
        if kind is None:
            raise InvalidSpec(f"unknown process kind {self.kind!r}; expected one of {KINDS}")
        object.__setattr__(self, "kind", kind)
        if not (np.isfinite(self.horizon_T) and self.horizon_T > 0):
            raise InvalidSpec(f"horizon must be positive, got {self.horizon_T}")
        if int(self.n_steps) != self.n_steps or self.n_steps < 2:
            raise InvalidSpec(f"n_steps must be an integer >= 2, got {self.n_steps}")
        if not 0 <= int(self.seed) < 2 ** 64:
            raise InvalidSpec(f"seed must fit in 64 bits, got {self.seed}")
        if kind == "fbm" and not (self.hurst is not None and 0 < self.hurst < 1):
            raise InvalidSpec(f"fBM needs Hurst index in (0;1), got {self.hurst}")
        if kind == "stable" and not (self.stability is not None and 0 < self.stability <= 2):
            raise InvalidSpec(f"stable process needs index in (0;2], got {self.stability}")

    @property
    def dt(self) -> float:
        return self.horizon_T / self.n_steps

    def times(self) -> np.ndarray:
        return np.linspace(0.0, self.horizon_T, self.n_steps + 1)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "horizon_T": self.horizon_T,
            "n_steps": self.n_steps,
            "seed": self.seed,
            "hurst": self.hurst,
            "stability": self.stability,
        }


def rng_for(seed: int, replicate: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed), int(replicate)])))


def fgn_autocovariance(hurst: float, n: int) -> np.ndarray:
    """Autocovariance of unit-step fractional Gaussian noise at lags ``0..n``."""
    k = np.arange(n + 1, dtype=float)
    h2 = 2.0 * hurst
    return 0.5 * (np.abs(k + 1) ** h2 - 2 * k ** h2 + np.abs(k - 1) ** h2)


def _fgn_circulant(hurst: float, n: int, rng: np.random.Generator) -> np.ndarray:
    r = fgn_autocovariance(hurst, n)
    row = np.concatenate([r, r[-2:0:-1]])
    lam = np.fft.fft(row).real
    if lam.min() < -1e-10 * lam.max():
        return None
    lam = np.clip(lam, 0.0, None)
    m = row.size
    z = rng.standard_normal(m) + 1j * rng.standard_normal(m)
    w = np.fft.fft(np.sqrt(lam / m) * z)
    return w.real[:n]


def _fgn_dense(hurst: float, n: int, rng: np.random.Generator) -> np.ndarray:
    r = fgn_autocovariance(hurst, n - 1)
    cov = linalg.toeplitz(r)
    chol = linalg.cholesky(cov, lower=True)
    return chol @ rng.standard_normal(n)


def fgn(hurst: float, n: int, rng: np.random.Generator) -> np.ndarray:
    """Exact fractional Gaussian noise with unit-step variance 1."""
    out = _fgn_circulant(hurst, n, rng)
    if out is None:
        if n > DENSE_FALLBACK_MAX:
            raise InvalidSpec(f"circulant embedding failed for H={hurst}, n={n}")
        out = _fgn_dense(hurst, n, rng)
    return out


def symmetric_stable(a: float, size: int, rng: np.random.Generator) -> np.ndarray:
    """Standard symmetric a-stable variates (Chambers-Mallows-Stuck).

    Unit scale in the characteristic-function sense, ``E exp(iuX) = exp(-|u|^a)``,
    so ``a = 2`` gives ``N(0, 2)``.
    """
    v = rng.uniform(-np.pi / 2, np.pi / 2, size)
    w = rng.standard_exponential(size)
    if a == 1.0:
        return np.tan(v)
    return (np.sin(a * v) / np.cos(v) ** (1.0 / a)) * (np.cos(v - a * v) / w) ** ((1.0 - a) / a)


def sample_values(spec: PathSpec, replicate: int = 0) -> np.ndarray:
    """Path values at the ``n_steps + 1`` grid times, starting at 0."""
    rng = rng_for(spec.seed, replicate)
    n, dt = spec.n_steps, spec.dt
    if spec.kind == "brownian":
        inc = np.sqrt(dt) * rng.standard_normal(n)
    elif spec.kind == "fbm":
        inc = dt ** spec.hurst * fgn(spec.hurst, n, rng)
    else:
        inc = dt ** (1.0 / spec.stability) * symmetric_stable(spec.stability, n, rng)
    return np.concatenate(([0.0], np.cumsum(inc)))


def generate(spec: PathSpec, replicate: int = 0) -> StepFunction:
    """Sampled path as a right-continuous step function."""
    return from_samples(spec.times(), sample_values(spec, replicate))
