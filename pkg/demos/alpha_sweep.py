"""Track the numeric optimum as the exponent grows past 2.

The drift towards C need not be monotone; here s*_2 already lies close to C.
"""

import numpy as np

from minpower import alpha_sweep, min_enclosing_circle

rng = np.random.default_rng(3)
X = rng.random((7, 2)) * [3.0, 1.0]
C = min_enclosing_circle(X).centre
print(f"1-centre C = ({C.x:.5f}, {C.y:.5f})")
print(" alpha   s*_alpha               |s - C|    |s - s*_2|   |s - M|")
for row in alpha_sweep(X, [1.2, 1.5, 2, 3, 4, 8, 16, 32, 64]):
    print(f"{row.alpha:6.1f}   ({row.s.x:.5f}, {row.s.y:.5f})   {row.dist_C:.5f}    "
          f"{row.dist_s2:.5f}      {row.dist_M:.5f}")
