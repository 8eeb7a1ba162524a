"""The play operator: lazy output inside a band, with its Skorohod split.

Run: python3 demos/03_play_operator.py
"""

import numpy as np

from truncvar import (
    StepFunction,
    from_samples,
    play,
    play_recursion,
    semigroup_check,
    skorohod_check,
    skorohod_inner_products,
)
from truncvar.play import formula_profiles

u = from_samples([0, 1, 2, 3], [0, 2, 1, 3])
alpha = StepFunction.constant(-0.5, u.knots)
beta = StepFunction.constant(0.5, u.knots)

for xi0 in (0.0, 0.5):
    res = play(u, alpha, beta, xi0)
    print(f"xi0={xi0}: xi at knots {res.xi.point_values}, TV {res.total_variation()}")

# The greedy one-step clamp gives exactly the same output in one dimension.
a = play(u, alpha, beta, 0.0).xi.interleaved()
b = play_recursion(u, alpha, beta, 0.0).xi.interleaved()
print("routes identical:", np.array_equal(a, b))

# Upward/downward parts also follow from closed-form sums over u alone.
up, down = formula_profiles(u, 1.0, 0.0)
print("closed-form UTV/DTV:", up[-1], down[-1])

# Skorohod view: xi = xi0 + xi_u - xi_d, each part moving only at a band edge.
res = play(u, alpha, beta, 0.0)
print("xi_u:", res.xi_u.interleaved())
print("phi :", res.phi.interleaved())
print("violations:", skorohod_check(res, alpha, beta))
print("sum phi*dxi vs c/2*TV:", skorohod_inner_products(res, 1.0)[:2])

# Restarting the operator from its own state reproduces the tail.
print("semigroup:", semigroup_check(u, alpha, beta, 0.0, 1.0))
v = from_samples([0, 1, 2], [2, 0, -0.4])
a2, b2 = StepFunction.constant(-0.5, v.knots), StepFunction.constant(0.5, v.knots)
print("envelope restart reproduces tail:", semigroup_check(v, a2, b2, 2.0, 1.0, route="envelope"))
