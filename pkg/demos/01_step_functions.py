"""Step functions, their interleaved form, and plain variations.

Run: python3 demos/01_step_functions.py
"""

import numpy as np

from truncvar import StepFunction, from_samples, p_variation, total_variation

# A sampled path becomes a right-continuous step function: the value at a
# sample time is held until the next one.
f = from_samples([0, 1, 2, 3], [0, 2, 1, 3])
print("knots          ", f.knots)
print("interleaved    ", f.interleaved(), "(knot, interval, knot, ...)")
print("f(0.5), f(1)   ", f(0.5), f(1.0))

# Arbitrary regulated step functions may differ at a knot from both sides.
g = StepFunction([0.0, 1.0, 2.0], [0.0, 5.0, 1.0], [1.0, 1.0])
print("g at 1 and near", g(1.0), g(0.999), g(1.001))

prof = total_variation(f)
print("TV, UTV, DTV   ", prof.final)
print("running TV     ", prof.tv)

# p-variation takes the best partition, so p=2 here uses the single jump 0->3.
print("2-variation    ", p_variation(f, 2))

# JSON round-trips bit-exactly.
h = StepFunction.from_json(f.to_json())
assert h == f and np.array_equal(h.interleaved(), f.interleaved())
print("json           ", f.to_json())
