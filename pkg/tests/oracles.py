"""Brute-force references. None of these touch the package's solvers."""

from fractions import Fraction
from itertools import combinations

import numpy as np
from scipy.optimize import minimize


def frac_incircle(a, b, c, d):
    """Sign of the in-circle determinant in exact rationals (+1 inside for CCW abc)."""
    a, b, c, d = ([Fraction(v) for v in p] for p in (a, b, c, d))
    rows = []
    for p in (a, b, c):
        dx, dy = p[0] - d[0], p[1] - d[1]
        rows.append((dx, dy, dx * dx + dy * dy))
    (a1, a2, a3), (b1, b2, b3), (c1, c2, c3) = rows
    det = (a1 * (b2 * c3 - b3 * c2) - a2 * (b1 * c3 - b3 * c1) + a3 * (b1 * c2 - b2 * c1))
    return (det > 0) - (det < 0)


def frac_orient(a, b, c):
    a, b, c = ([Fraction(v) for v in p] for p in (a, b, c))
    det = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (det > 0) - (det < 0)


def brute_full_circle_triangles(X):
    """Every CCW-sorted index triple whose circumcircle holds all points (O(n^4))."""
    X = [tuple(map(float, p)) for p in X]
    out = set()
    for i, j, k in combinations(range(len(X)), 3):
        o = frac_orient(X[i], X[j], X[k])
        if o == 0:
            continue
        a, b, c = (i, j, k) if o > 0 else (i, k, j)
        if all(frac_incircle(X[a], X[b], X[c], p) >= 0 for p in X):
            out.add(tuple(sorted((i, j, k))))
    return out


def brute_farthest(X, s, rel=1e-12):
    d = np.hypot(*(np.asarray(X, float) - np.asarray(s, float)).T)
    return set(np.flatnonzero(d >= d.max() * (1 - rel)).tolist())


def p2(X, s):
    d2 = ((np.asarray(X, float) - np.asarray(s, float)) ** 2).sum(axis=1)
    return float(d2.sum() + d2.max())


def brute_min_p2(X, grid=81):
    """Dense grid over the bounding box, then Nelder-Mead from the best node."""
    X = np.asarray(X, float)
    lo, hi = X.min(axis=0), X.max(axis=0)
    gx = np.linspace(lo[0], hi[0], grid)
    gy = np.linspace(lo[1], hi[1], grid)
    G = np.array(np.meshgrid(gx, gy)).reshape(2, -1).T
    vals = [p2(X, g) for g in G]
    s0 = G[int(np.argmin(vals))]
    scale = max(float((hi - lo).max()), 1e-300)
    res = minimize(lambda s: p2(X, s), s0, method="Nelder-Mead",
                   options={"xatol": 1e-12 * scale, "fatol": 1e-15, "maxiter": 20000,
                            "initial_simplex": [s0, s0 + [scale / grid, 0], s0 + [0, scale / grid]]})
    return res.x


def brute_mec(X):
    """Smallest circle among all pair and triple circles that cover X."""
    X = np.asarray(X, float)
    best = None
    pts = list(map(tuple, X))
    cands = []
    for a, b in combinations(pts, 2):
        cands.append(((np.add(a, b) / 2), np.hypot(*np.subtract(a, b)) / 2))
    for a, b, c in combinations(pts, 3):
        ax, ay = a
        bx, by = b
        cx, cy = c
        d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
        if d == 0:
            continue
        ux = ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay)
              + (cx * cx + cy * cy) * (ay - by)) / d
        uy = ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx)
              + (cx * cx + cy * cy) * (bx - ax)) / d
        cands.append((np.array([ux, uy]), np.hypot(ax - ux, ay - uy)))
    for c, r in cands:
        if np.all(np.hypot(*(X - c).T) <= r * (1 + 1e-12) + 1e-15):
            if best is None or r < best[1]:
                best = (c, r)
    if best is None:
        return X[0], 0.0
    return best
