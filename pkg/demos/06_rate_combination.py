"""Adding a smooth path does not change the small-c behaviour of c * TV^c.

Run: python3 demos/06_rate_combination.py
"""

import numpy as np

from truncvar import PathSpec, combination_experiment

spec = PathSpec("bm", 1.0, 2 ** 15, seed=42)
grid = np.geomspace(0.05, 0.8, 6)
tab = combination_experiment(spec, smooth_amp=1.0, c_grid=grid)
print(f"{'c':>8} {'cTV rough':>10} {'cTV sum':>10} {'ratio':>8}  sandwich")
for row in zip(tab.c, tab.c_tv_rough, tab.c_tv_sum, tab.ratio, tab.upper_ok & tab.lower_ok):
    print("{:8.3f} {:10.4f} {:10.4f} {:8.4f}  {}".format(*row))
