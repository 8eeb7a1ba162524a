"""Truncated variation and the minimal-variation envelope.

TV^c keeps only the part of each move that exceeds c. It equals the least
total variation of any path staying within c/2 of the input, and the
envelope is the path that attains it on every prefix.

Run: python3 demos/02_truncated_variation.py
"""

import numpy as np

from truncvar import (
    StepFunction,
    ab_trunc_oracle_profile,
    from_samples,
    interleave,
    minimal_envelope,
    tv_truncated,
)

f = from_samples([0, 1, 2, 3], [0, 2, 1, 3])
for c in (0.5, 1.0, 4.0):
    print(f"c={c:<4} ", tv_truncated(f, c).final)

# With a band [alpha; beta] the admissible outputs satisfy alpha <= f - xi <= beta.
alpha = StepFunction.constant(-0.5, f.knots)
beta = StepFunction.constant(0.5, f.knots)
tri = interleave(f, alpha, beta)
env = minimal_envelope(tri)
print("envelope at knots ", env.envelope.point_values)
print("start, branch     ", env.start_value, env.branch)
print("switches          ", env.switches)

# The fast sweep agrees with the O(n^2) brute force on every prefix.
oracle = ab_trunc_oracle_profile(tri)
assert np.array_equal(env.profile.tv, oracle.tv)

# A time-dependent band: narrow in the middle forces more movement.
rng = np.random.default_rng(1)
u = from_samples(np.arange(40), rng.normal(size=40).cumsum())
t = u.interleaved()
width = 0.5 + 2.0 * np.abs(np.linspace(-1, 1, t.size))
lo = StepFunction.from_interleaved(u.knots, -width / 2)
hi = StepFunction.from_interleaved(u.knots, width / 2)
res = minimal_envelope(interleave(u, lo, hi))
print("random walk: TV", round(float(np.abs(np.diff(t)).sum()), 3), "-> banded TV", round(res.profile.tv[-1], 3))
