"""Planar primitives: exact predicates, hulls, circles.

Orientation and in-circle tests are exact for double inputs: a floating
point evaluation with Shewchuk's static error bound decides the easy cases
and an integer evaluation decides the rest. Everything metric (centres,
radii, centroids) is plain double precision.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Sequence

import numpy as np

from .errors import CollinearInput

_EPS = 2.0 ** -53
_CCW_ERRBOUND = (3.0 + 16.0 * _EPS) * _EPS
_ICC_ERRBOUND = (10.0 + 96.0 * _EPS) * _EPS


class Point(NamedTuple):
    x: float
    y: float


class Circle(NamedTuple):
    centre: Point
    radius: float

    def contains(self, p, rel_tol: float = 1e-12) -> bool:
        d = math.hypot(p[0] - self.centre[0], p[1] - self.centre[1])
        return d <= self.radius * (1.0 + rel_tol)


class PointSet:
    """Immutable ordered multiset of planar points.

    Indices ``0..n-1`` are stable; duplicates are kept.
    """

    __slots__ = ("_coords",)

    def __init__(self, points):
        if isinstance(points, PointSet):
            coords = points._coords
        else:
            coords = np.array(points, dtype=float)
            if coords.ndim == 1 and coords.size == 2:
                coords = coords.reshape(1, 2)
        if coords.ndim != 2 or coords.shape[1] != 2:
            raise ValueError("points must be an (n, 2) array-like")
        if coords.shape[0] < 1:
            raise ValueError("a PointSet needs at least one point")
        if not np.all(np.isfinite(coords)):
            raise ValueError("coordinates must be finite")
        coords = np.ascontiguousarray(coords)
        coords.setflags(write=False)
        self._coords = coords

    @property
    def coords(self) -> np.ndarray:
        """Read-only ``(n, 2)`` float array."""
        return self._coords

    @property
    def n(self) -> int:
        return self._coords.shape[0]

    @property
    def points(self) -> list[Point]:
        return [Point(float(x), float(y)) for x, y in self._coords]

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i) -> Point:
        x, y = self._coords[i]
        return Point(float(x), float(y))

    def __iter__(self):
        return iter(self.points)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PointSet):
            return NotImplemented
        return np.array_equal(self._coords, other._coords)

    def __hash__(self):
        return hash(self._coords.tobytes())

    def __repr__(self) -> str:
        return f"PointSet(n={self.n})"

    def diameter(self) -> float:
        """Largest pairwise distance (computed over hull vertices)."""
        hull = convex_hull(self)
        return _hull_diameter(self._coords[list(hull.vertices)])

    def extent(self) -> float:
        """Side of the axis-aligned bounding square."""
        c = self._coords
        return float(max(np.ptp(c[:, 0]), np.ptp(c[:, 1])))

    def is_singleton(self) -> bool:
        """True when every point sits at the same location."""
        return self.extent() == 0.0

    def distinct_indices(self) -> list[int]:
        """Lowest index of each distinct location, in index order."""
        _, first = np.unique(self._coords, axis=0, return_index=True)
        return sorted(int(i) for i in first)


def as_pointset(X) -> PointSet:
    return X if isinstance(X, PointSet) else PointSet(X)


# ---------------------------------------------------------------- predicates

def _common_integers(values: Sequence[float]) -> list[int]:
    """Scale doubles by a common power of two so they become exact integers."""
    ratios = [float(v).as_integer_ratio() for v in values]
    den = max(d for _, d in ratios)
    return [num * (den // d) for num, d in ratios]


def _orient_exact(a, b, c) -> int:
    ax, ay, bx, by, cx, cy = _common_integers((a[0], a[1], b[0], b[1], c[0], c[1]))
    det = (ax - cx) * (by - cy) - (ay - cy) * (bx - cx)
    return (det > 0) - (det < 0)


def orient(a, b, c) -> int:
    """Sign of the signed area of triangle abc: +1 CCW, -1 CW, 0 collinear."""
    detleft = (a[0] - c[0]) * (b[1] - c[1])
    detright = (a[1] - c[1]) * (b[0] - c[0])
    det = detleft - detright
    errbound = _CCW_ERRBOUND * (abs(detleft) + abs(detright))
    if det > errbound:
        return 1
    if -det > errbound:
        return -1
    return _orient_exact(a, b, c)


def _incircle_exact(a, b, c, d) -> int:
    ax, ay, bx, by, cx, cy, dx, dy = _common_integers(
        (a[0], a[1], b[0], b[1], c[0], c[1], d[0], d[1]))
    adx, ady = ax - dx, ay - dy
    bdx, bdy = bx - dx, by - dy
    cdx, cdy = cx - dx, cy - dy
    alift = adx * adx + ady * ady
    blift = bdx * bdx + bdy * bdy
    clift = cdx * cdx + cdy * cdy
    det = (alift * (bdx * cdy - cdx * bdy)
           + blift * (cdx * ady - adx * cdy)
           + clift * (adx * bdy - bdx * ady))
    return (det > 0) - (det < 0)


def incircle(a, b, c, d) -> int:
    """+1 if d is inside the circle through a, b, c (abc CCW), -1 outside, 0 on it.

    The sign flips when abc is clockwise.
    """
    adx, ady = a[0] - d[0], a[1] - d[1]
    bdx, bdy = b[0] - d[0], b[1] - d[1]
    cdx, cdy = c[0] - d[0], c[1] - d[1]
    bdxcdy, cdxbdy = bdx * cdy, cdx * bdy
    cdxady, adxcdy = cdx * ady, adx * cdy
    adxbdy, bdxady = adx * bdy, bdx * ady
    alift = adx * adx + ady * ady
    blift = bdx * bdx + bdy * bdy
    clift = cdx * cdx + cdy * cdy
    det = (alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy)
           + clift * (adxbdy - bdxady))
    permanent = ((abs(bdxcdy) + abs(cdxbdy)) * alift
                 + (abs(cdxady) + abs(adxcdy)) * blift
                 + (abs(adxbdy) + abs(bdxady)) * clift)
    errbound = _ICC_ERRBOUND * permanent
    if det > errbound:
        return 1
    if -det > errbound:
        return -1
    return _incircle_exact(a, b, c, d)



def incircle_filter(A, B, C, D) -> np.ndarray:
    """Row-wise float stage of incircle(): +1 / -1 where certain, 0 where unsure."""
    A, B, C, D = (np.asarray(v, dtype=float) for v in (A, B, C, D))
    ad, bd, cd = A - D, B - D, C - D
    bc, cb = bd[:, 0] * cd[:, 1], cd[:, 0] * bd[:, 1]
    ca, ac = cd[:, 0] * ad[:, 1], ad[:, 0] * cd[:, 1]
    ab, ba = ad[:, 0] * bd[:, 1], bd[:, 0] * ad[:, 1]
    alift = ad[:, 0] * ad[:, 0] + ad[:, 1] * ad[:, 1]
    blift = bd[:, 0] * bd[:, 0] + bd[:, 1] * bd[:, 1]
    clift = cd[:, 0] * cd[:, 0] + cd[:, 1] * cd[:, 1]
    det = alift * (bc - cb) + blift * (ca - ac) + clift * (ab - ba)
    bound = _ICC_ERRBOUND * ((np.abs(bc) + np.abs(cb)) * alift + (np.abs(ca) + np.abs(ac)) * blift
                             + (np.abs(ab) + np.abs(ba)) * clift)
    return np.where(det > bound, 1, np.where(-det > bound, -1, 0)).astype(np.int64)


def incircle_many(A, B, C, D) -> np.ndarray:
    """Row-wise incircle() over (m, 2) arrays; exact where the filter is unsure."""
    A, B, C, D = (np.asarray(v, dtype=float) for v in (A, B, C, D))
    out = incircle_filter(A, B, C, D)
    for k in np.flatnonzero(out == 0):
        out[k] = _incircle_exact(A[k], B[k], C[k], D[k])
    return out

# ---------------------------------------------------------------- hull

class Hull(NamedTuple):
    """Strict extreme points of a point set, CCW, as indices into it."""

    vertices: tuple[int, ...]

    def __len__(self):
        return len(self.vertices)


def _akl_toussaint_keep(c: np.ndarray) -> np.ndarray:
    """Mask of points not provably interior to the octagon of extreme points."""
    sx, sy = c[:, 0], c[:, 1]
    keys = (sx, sx + sy, sy, sy - sx, -sx, -sx - sy, -sy, sx - sy)
    ext = [int(np.argmax(k)) for k in keys]
    poly = []
    for i in ext:
        if not poly or poly[-1] != i:
            poly.append(i)
    if len(poly) > 1 and poly[0] == poly[-1]:
        poly.pop()
    keep = np.ones(len(c), dtype=bool)
    if len(poly) < 3:
        return keep
    P = c[poly]
    scale = float(np.abs(c).max()) + float(max(np.ptp(sx), np.ptp(sy)))
    margin = 1e-9 * scale * scale
    inside = np.ones(len(c), dtype=bool)
    for k in range(len(P)):
        p, q = P[k], P[(k + 1) % len(P)]
        cross = (q[0] - p[0]) * (sy - p[1]) - (q[1] - p[1]) * (sx - p[0])
        inside &= cross > margin
    keep[inside] = False
    return keep


def convex_hull(X) -> Hull:
    """Andrew's monotone chain with exact orientation tests.

    Duplicates collapse onto their lowest index; collinear boundary points
    are dropped. One- and two-vertex hulls are returned for degenerate sets.
    """
    X = as_pointset(X)
    c = X.coords
    idx = np.arange(X.n)
    if X.n > 4096:
        idx = idx[_akl_toussaint_keep(c)]
    order = idx[np.lexsort((idx, c[idx, 1], c[idx, 0]))]
    pts: list[tuple[float, float]] = []
    ids: list[int] = []
    for i in order.tolist():
        p = (float(c[i, 0]), float(c[i, 1]))
        if pts and pts[-1] == p:
            continue
        pts.append(p)
        ids.append(i)
    if len(pts) <= 2:
        return Hull(tuple(ids))

    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]

    def chain(seq):
        # orient() inlined: this loop dominates hull time on large inputs
        out: list[int] = []
        for k in seq:
            cx, cy = xs[k], ys[k]
            while len(out) >= 2:
                a, b = out[-2], out[-1]
                detleft = (xs[a] - cx) * (ys[b] - cy)
                detright = (ys[a] - cy) * (xs[b] - cx)
                det = detleft - detright
                bound = _CCW_ERRBOUND * (abs(detleft) + abs(detright))
                if det > bound:
                    break
                if -det > bound or _orient_exact(pts[a], pts[b], pts[k]) <= 0:
                    out.pop()
                    continue
                break
            out.append(k)
        return out

    m = len(pts)
    lower = chain(range(m))
    upper = chain(range(m - 1, -1, -1))
    ring = lower[:-1] + upper[:-1]
    return Hull(tuple(ids[k] for k in ring))


def in_hull(X, hull: Hull, p) -> bool:
    """Closed containment of p in the hull polygon (exact)."""
    X = as_pointset(X)
    v = [X[i] for i in hull.vertices]
    if len(v) == 1:
        return tuple(p) == tuple(v[0])
    if len(v) == 2:
        a, b = v
        if orient(a, b, p) != 0:
            return False
        return (min(a.x, b.x) <= p[0] <= max(a.x, b.x)
                and min(a.y, b.y) <= p[1] <= max(a.y, b.y))
    return all(orient(v[k], v[(k + 1) % len(v)], p) >= 0 for k in range(len(v)))


def strictly_in_hull(X, hull: Hull, p) -> bool:
    X = as_pointset(X)
    v = [X[i] for i in hull.vertices]
    if len(v) < 3:
        return False
    return all(orient(v[k], v[(k + 1) % len(v)], p) > 0 for k in range(len(v)))


# ---------------------------------------------------------------- metric

def centroid(X) -> Point:
    X = as_pointset(X)
    m = X.coords.mean(axis=0)
    return Point(float(m[0]), float(m[1]))


def circumcircle(a, b, c) -> Circle:
    if orient(a, b, c) == 0:
        raise CollinearInput(f"collinear points {tuple(a)}, {tuple(b)}, {tuple(c)}")
    bx, by = b[0] - a[0], b[1] - a[1]
    cx, cy = c[0] - a[0], c[1] - a[1]
    d = 2.0 * (bx * cy - by * cx)
    b2, c2 = bx * bx + by * by, cx * cx + cy * cy
    ux = (cy * b2 - by * c2) / d
    uy = (bx * c2 - cx * b2) / d
    centre = Point(a[0] + ux, a[1] + uy)
    r = max(math.hypot(ux, uy),
            math.hypot(centre.x - b[0], centre.y - b[1]),
            math.hypot(centre.x - c[0], centre.y - c[1]))
    return Circle(centre, r)


def _diameter_circle(a, b) -> Circle:
    centre = Point((a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0)
    r = max(math.hypot(centre.x - a[0], centre.y - a[1]),
            math.hypot(centre.x - b[0], centre.y - b[1]))
    return Circle(centre, r)


_MEC_TOL = 1e-14


def _covers(circle: Circle | None, p) -> bool:
    if circle is None:
        return False
    return math.hypot(p[0] - circle.centre.x, p[1] - circle.centre.y) <= \
        circle.radius * (1.0 + _MEC_TOL)


def _mec_two(pts, p, q) -> Circle:
    circ = _diameter_circle(p, q)
    left = right = None
    for r in pts:
        if _covers(circ, r):
            continue
        o = orient(p, q, r)
        if o == 0:
            continue
        cc = circumcircle(p, q, r)
        side = ((q[0] - p[0]) * (cc.centre.y - p[1])
                - (q[1] - p[1]) * (cc.centre.x - p[0]))
        if o > 0:
            if left is None or side > ((q[0] - p[0]) * (left.centre.y - p[1])
                                       - (q[1] - p[1]) * (left.centre.x - p[0])):
                left = cc
        else:
            if right is None or side < ((q[0] - p[0]) * (right.centre.y - p[1])
                                        - (q[1] - p[1]) * (right.centre.x - p[0])):
                right = cc
    if left is None and right is None:
        return circ
    if left is None:
        return right
    if right is None:
        return left
    return left if left.radius <= right.radius else right


def _mec_one(pts, p) -> Circle:
    circ = Circle(Point(p[0], p[1]), 0.0)
    for i, q in enumerate(pts):
        if not _covers(circ, q):
            if circ.radius == 0.0:
                circ = _diameter_circle(p, q)
            else:
                circ = _mec_two(pts[: i + 1], p, q)
    return circ


def min_enclosing_circle(X, seed: int = 0) -> Circle:
    """Smallest enclosing circle by randomized incremental construction.

    Runs on the hull vertices only; expected linear time in their number.
    """
    X = as_pointset(X)
    hull = convex_hull(X)
    pts = [tuple(map(float, X.coords[i])) for i in hull.vertices]
    if len(pts) == 1:
        return Circle(Point(*pts[0]), 0.0)
    rng = np.random.default_rng(seed)
    pts = [pts[i] for i in rng.permutation(len(pts))]
    circ = None
    for i, p in enumerate(pts):
        if not _covers(circ, p):
            circ = _mec_one(pts[: i + 1], p)
    # final radius covers every input point exactly
    d = np.hypot(X.coords[:, 0] - circ.centre.x, X.coords[:, 1] - circ.centre.y)
    return Circle(circ.centre, float(max(circ.radius, d.max())))


def min_enclosing_circle_bruteforce(X) -> Circle:
    """O(n^4) reference: best circle over all pairs and triples."""
    X = as_pointset(X)
    pts = [X[i] for i in X.distinct_indices()]
    if len(pts) == 1:
        return Circle(pts[0], 0.0)
    best = None

    def consider(circ):
        nonlocal best
        if best is not None and circ.radius >= best.radius:
            return
        if all(math.hypot(p.x - circ.centre.x, p.y - circ.centre.y)
               <= circ.radius * (1 + 1e-12) for p in pts):
            best = circ

    m = len(pts)
    for i in range(m):
        for j in range(i + 1, m):
            consider(_diameter_circle(pts[i], pts[j]))
            for k in range(j + 1, m):
                if orient(pts[i], pts[j], pts[k]) != 0:
                    consider(circumcircle(pts[i], pts[j], pts[k]))
    return best


def distances(X, s) -> np.ndarray:
    c = as_pointset(X).coords
    return np.hypot(c[:, 0] - s[0], c[:, 1] - s[1])


def barycentric(p, a, b, c) -> tuple[float, float, float]:
    """Barycentric coordinates of p in triangle abc (floating point)."""
    v0x, v0y = b[0] - a[0], b[1] - a[1]
    v1x, v1y = c[0] - a[0], c[1] - a[1]
    v2x, v2y = p[0] - a[0], p[1] - a[1]
    den = v0x * v1y - v1x * v0y
    lb = (v2x * v1y - v1x * v2y) / den
    lc = (v0x * v2y - v2x * v0y) / den
    return 1.0 - lb - lc, lb, lc


def _hull_diameter(P: np.ndarray) -> float:
    """Rotating calipers over a CCW strictly convex polygon."""
    h = len(P)
    if h < 2:
        return 0.0
    if h <= 64:
        diff = P[:, None, :] - P[None, :, :]
        return float(np.sqrt((diff ** 2).sum(axis=2).max()))

    def area2(i, j, k):
        return abs((P[j, 0] - P[i, 0]) * (P[k, 1] - P[i, 1])
                   - (P[j, 1] - P[i, 1]) * (P[k, 0] - P[i, 0]))

    best = 0.0
    j = 1
    for i in range(h):
        i2 = (i + 1) % h
        while area2(i, i2, (j + 1) % h) > area2(i, i2, j):
            j = (j + 1) % h
        for a in (i, i2):
            d = math.hypot(P[a, 0] - P[j, 0], P[a, 1] - P[j, 1])
            best = max(best, d)
    return best
