"""In the plane the greedy nearest-point rule is not variation-minimal.

The input jumps (2,0) -> (0,0) -> (0,2); the output must stay in the unit
ball around the input. Greedy projection walks the long way round.

Run: python3 demos/04_planar_counterexample.py
"""

import numpy as np

from truncvar.play import counterexample_2d, counterexample_2d_paths

greedy, better = counterexample_2d_paths()
print("greedy knots:", np.round(greedy[0::2], 5).tolist())
print("better knots:", np.round(better[0::2], 5).tolist())
tv_g, tv_b = counterexample_2d()
print(f"path lengths: greedy {tv_g:.5f}  better {tv_b:.5f}")
