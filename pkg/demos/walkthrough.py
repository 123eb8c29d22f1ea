"""Solve a small instance both ways and show where the optimum sits on the diagram.

    python demos/walkthrough.py [out.svg]
"""

import sys

import numpy as np

from minpower import (approx_ratio, build_fpvd, classify_case, solve_numeric, solve_quadratic,
                      two_centroids)
from minpower.svg import render_svg

X = np.array([(0.0, 0.0), (4.0, 0.0), (4.5, 2.0), (1.0, 3.0), (2.0, 1.0)])

F = build_fpvd(X)
res = solve_quadratic(X, fpvd=F)
tc = two_centroids(X)
print(f"{len(F.regions)} regions, {len(F.edges)} edges ({F.n_rays} rays), "
      f"{len(F.vertices)} vertices")
print(f"s* = ({res.s_star.x:.6f}, {res.s_star.y:.6f})  P_2 = {res.objective:.6f}")
print(f"case {res.case} on {res.witness_face[0]} {res.witness_face[1]}, "
      f"active points {list(res.active)}")
for j, lam in res.lambdas.items():
    m = tc[int(j)]
    print(f"  lambda_{j} = {lam:.6f}  M_{j} = ({m.x:.4f}, {m.y:.4f})")

rep = classify_case(res, tc, F, X)
print(f"classified as case {rep.case} ({rep.host})")

num = solve_numeric(X, 2.0)
print(f"numeric oracle: ({num.s.x:.6f}, {num.s.y:.6f}), certified gap {num.certified_gap:.2e}")

r = approx_ratio(X, result=res)
print(f"centroid ratio {r.rho:.6f} <= bound {r.bound:.6f} (k={r.k}, n={r.n})")

if len(sys.argv) > 1:
    with open(sys.argv[1], "w") as fh:
        fh.write(render_svg(X, F, res))
    print("wrote", sys.argv[1])
