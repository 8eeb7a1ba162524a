"""How fast TV^c grows as c shrinks, for three families of rough paths.

Brownian motion: c * TV^c -> T. fBM with Hurst H: TV^c ~ c^(1 - 1/H).
Symmetric a-stable (a > 1): TV^c ~ c^(1 - a).

The last block shows why the Brownian limit is approached slowly on a
fixed grid: the sampled path misses excursion tips of size ~ sqrt(dt).

Run: python3 demos/05_growth_rates.py   (a few seconds)
"""

import numpy as np

from truncvar import PathSpec, estimate_rate

seed = 42
bm = estimate_rate(PathSpec("bm", 1.0, 2 ** 15, seed), 0.05, 0.2, 8, replicates=100)
print("Brownian")
print(bm.table())

for h in (0.6, 0.75):
    r = estimate_rate(PathSpec("fbm", 1.0, 2 ** 14, seed, hurst=h), 0.05, 0.25, 8, replicates=20)
    print(f"fBM H={h}: slope {r.slope:.3f} (theory {1 - 1 / h:.3f})")

st = estimate_rate(PathSpec("stable", 1.0, 2 ** 15, seed, stability=1.5), 0.1, 0.4, 8, replicates=50)
print(f"stable a=1.5: median slope {st.slope_median:.3f}, mean slope {st.slope:.3f} (theory -0.5)")

print("\nBrownian c*TV^c at c=0.05 vs grid size")
for k in (13, 15, 17):
    r = estimate_rate(PathSpec("bm", 1.0, 2 ** k, seed), 0.05, 0.2, 4, replicates=40)
    deficit = 1 - r.c_times_tv[0]
    print(f"n=2^{k}: {r.c_times_tv[0]:.3f}   deficit*c/sqrt(dt) = {deficit * 0.05 * np.sqrt(2.0 ** k):.2f}")
