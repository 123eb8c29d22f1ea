"""Centroid approximation ratio, adversarial instances, alpha sweeps."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInstance, NoFeasibleM, TargetNotOnDiagram
from .farthest import Fpvd, build_fpvd
from .geometry import (Point, PointSet, as_pointset, centroid, convex_hull, min_enclosing_circle,
                       strictly_in_hull)
from .oracle import check_alpha, solve_numeric
from .quadratic import RAY_LIMIT, _in_convex, power, solve_quadratic, two_centroids

FAMILIES = ("uniform", "circle", "clusters", "collinear")


def ratio_bound(n: int, k: int) -> float:
    """(1/(k+1)) ((n+1)/n)^2 + k/(k+1)."""
    return ((n + 1) / n) ** 2 / (k + 1) + k / (k + 1)


@dataclass(frozen=True)
class RatioReport:
    rho: float
    k: int
    n: int
    bound: float
    slack: float


def approx_ratio(X, rel_tol: float = 1e-9, result=None) -> RatioReport:
    """P(M) / P(s*) with the bound for the number k of equal longest edges.

    ``result`` may carry an already computed solve_quadratic(X).
    """
    X = as_pointset(X)
    res = result if result is not None else solve_quadratic(X)
    if res.objective <= 0.0:
        raise DegenerateInstance("all points coincide, P(s*) = 0")
    rho = power(centroid(X), X, 2.0) / res.objective
    d = np.hypot(X.coords[:, 0] - res.s_star[0], X.coords[:, 1] - res.s_star[1])
    k = int(np.count_nonzero(d >= d.max() * (1.0 - rel_tol)))
    bound = ratio_bound(X.n, k)
    return RatioReport(rho, k, X.n, bound, bound - rho)


# ---------------------------------------------------------------- instances

def random_points(family: str, n: int, rng) -> np.ndarray:
    """Seeded instance families used by the experiments and tests."""
    rng = np.random.default_rng(rng)
    if family == "uniform":
        return rng.random((n, 2))
    if family == "circle":
        t = rng.uniform(0.0, 2.0 * math.pi, n)
        return np.column_stack([np.cos(t), np.sin(t)])
    if family == "clusters":
        k = int(rng.integers(2, 5))
        centres = rng.random((k, 2))
        labels = rng.integers(0, k, n)
        return centres[labels] + rng.normal(scale=0.05, size=(n, 2))
    if family == "collinear":
        # exact collinearity: y = slope * x with a dyadic slope
        slope = float(rng.choice([0.0, 0.5, -2.0, 1.0]))
        x = rng.random(n)
        return np.column_stack([x, slope * x])
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


def antipodal_instance(pairs: int, rng) -> np.ndarray:
    """Cocircular points in antipodal pairs, so the centroid is the centre."""
    rng = np.random.default_rng(rng)
    t = rng.uniform(0.0, math.pi, pairs)
    centre = rng.normal(size=2)
    r = rng.uniform(0.5, 2.0)
    P = np.column_stack([np.cos(t), np.sin(t)]) * r
    return np.vstack([centre + P, centre - P])


@dataclass(frozen=True)
class LimitRow:
    n: int
    max_rho: float
    mean_rho: float
    general_bound: float
    within_bound: bool


def ratio_limit_experiment(family_seed: int, n_values, trials: int = 200,
                           family: str = "uniform") -> list[LimitRow]:
    """Max and mean of rho over random instances for each n."""
    n_values = list(n_values)
    if any(b <= a for a, b in zip(n_values, n_values[1:])):
        raise ValueError("n_values must be increasing")
    rng = np.random.default_rng(family_seed)
    rows = []
    for n in n_values:
        rhos = []
        for _ in range(trials):
            X = random_points(family, n, rng)
            try:
                rhos.append(approx_ratio(X).rho)
            except DegenerateInstance:
                continue
        g = ratio_bound(n, 1)
        mx = max(rhos)
        rows.append(LimitRow(n, mx, float(np.mean(rhos)), g, mx <= g + 1e-9))
    return rows


# ---------------------------------------------------------------- targets

@dataclass(frozen=True)
class GeneratedInstance:
    base_hull: PointSet
    target: Point
    m: int
    y: Point | None
    result: PointSet


def _extreme_points(X: PointSet) -> PointSet:
    idx = sorted(convex_hull(X).vertices)
    return PointSet(X.coords[idx])


def _diagram_face(fpvd: Fpvd, w, tol):
    """('vertex', sites) or ('edge', sites) for the face through w, else None."""
    w = np.asarray(w, dtype=float)
    if len(fpvd.tri_point):
        dv = np.hypot(*(fpvd.tri_point - w).T)
        i = int(np.argmin(dv))
        if dv[i] <= tol:
            return "vertex", tuple(int(q) for q in fpvd.tri_sites[i])
    rel = w - fpvd.edge_origin
    t = np.einsum("ij,ij->i", rel, fpvd.edge_dir)
    t = np.clip(t, 0.0, np.where(np.isinf(fpvd.edge_len), RAY_LIMIT, fpvd.edge_len))
    foot = fpvd.edge_origin + t[:, None] * fpvd.edge_dir
    de = np.hypot(*(foot - w).T)
    i = int(np.argmin(de))
    if de[i] <= tol:
        return "edge", tuple(int(q) for q in fpvd.edge_sites[i])
    return None


def _exit_distance(C, hull, w, d) -> float:
    """Distance from w along unit direction d to the hull boundary."""
    best = math.inf
    h = hull.vertices
    for a, b in zip(h, h[1:] + h[:1]):
        p, q = C[a], C[b]
        e = q - p
        den = d[0] * e[1] - d[1] * e[0]
        if den == 0.0:
            continue
        rel = p - w
        t = (rel[0] * e[1] - rel[1] * e[0]) / den
        u = (rel[0] * d[1] - rel[1] * d[0]) / den
        if t > 0 and -1e-12 <= u <= 1 + 1e-12:
            best = min(best, t)
    return best


def generate_target_instance(hull, w, tol: float = 1e-9, max_m: int = 10**9) -> GeneratedInstance:
    """Add m coincident nodes inside conv(hull) so that the min-power centre is w.

    w must sit on an edge or vertex of the farthest-point diagram of the
    extreme points. With u the midpoint of the 2-centroids of the edge's
    sites (barycentre of three for a vertex), the new nodes go at
    y = w + (n+1)(w - u)/m, which makes w a convex combination of the new
    2-centroids; m is the smallest count that keeps y strictly inside.
    """
    X = as_pointset(hull)
    base = _extreme_points(X)
    C = base.coords
    n = base.n
    if n < 3:
        raise NoFeasibleM("need at least three extreme points for an interior target")
    hb = convex_hull(base)
    w = Point(float(w[0]), float(w[1]))
    diam = base.diameter()
    if not strictly_in_hull(base, hb, w):
        raise NoFeasibleM(f"target {w} is not strictly inside the hull")
    fpvd = build_fpvd(base)
    face = _diagram_face(fpvd, w, tol * diam)
    if face is None:
        raise TargetNotOnDiagram(f"{w} lies inside a region, not on an edge or vertex")
    kind, sites = face
    tc = two_centroids(base)
    Ms = tc.Mj[list(sites)]
    if _in_convex(Ms, w, tol * diam):
        return GeneratedInstance(base, w, 0, None, base)
    u = Ms.mean(axis=0)
    off = np.asarray(w) - u
    dist = float(np.hypot(*off))
    direction = off / dist
    L = _exit_distance(C, hb, np.asarray(w), direction)
    m = max(1, int(math.floor((n + 1) * dist / L)) + 1)
    while True:
        if m > max_m:
            raise NoFeasibleM(f"no m <= {max_m} puts y inside (exit distance {L:.3g})")
        y = np.asarray(w) + (n + 1) * off / m
        if strictly_in_hull(base, hb, y):
            break
        m += 1
    out = PointSet(np.vstack([C, np.repeat(y[None, :], m, axis=0)]))
    got = solve_quadratic(out).s_star
    if math.hypot(got[0] - w[0], got[1] - w[1]) > max(tol, 1e-6) * diam:
        raise NoFeasibleM(f"verification failed: s* = {got} for target {w} ({kind} {sites})")
    if tuple(convex_hull(out).vertices) != tuple(hb.vertices):
        raise NoFeasibleM("added nodes changed the hull")
    return GeneratedInstance(base, w, m, Point(float(y[0]), float(y[1])), out)


def sample_edge_target(X, rng, interior_margin: float = 0.05) -> Point:
    """A random point on an FPVD edge strictly inside conv(X)."""
    X = as_pointset(X)
    rng = np.random.default_rng(rng)
    hull = convex_hull(X)
    fpvd = build_fpvd(X)
    C = X.coords
    h = hull.vertices
    for e in rng.permutation(len(fpvd.edges)):
        o, d = fpvd.edge_origin[e], fpvd.edge_dir[e]
        lo, hi = 0.0, min(float(fpvd.edge_len[e]), RAY_LIMIT)
        # clip the edge to the open hull polygon, one half-plane per side
        for a, b in zip(h, h[1:] + h[:1]):
            ed = C[b] - C[a]
            c0 = ed[0] * (o[1] - C[a][1]) - ed[1] * (o[0] - C[a][0])
            c1 = ed[0] * d[1] - ed[1] * d[0]
            if c1 == 0.0:
                if c0 <= 0.0:
                    hi = -1.0
                continue
            t = -c0 / c1
            if c1 > 0:
                lo = max(lo, t)
            else:
                hi = min(hi, t)
        if hi - lo <= 0.0:
            continue
        t = lo + rng.uniform(interior_margin, 1.0 - interior_margin) * (hi - lo)
        w = o + t * d
        if strictly_in_hull(X, hull, w):
            return Point(float(w[0]), float(w[1]))
    raise TargetNotOnDiagram("no diagram edge passes through the hull interior")


# ---------------------------------------------------------------- alpha

@dataclass(frozen=True)
class SweepRow:
    alpha: float
    s: Point
    dist_C: float
    dist_s2: float
    dist_M: float


def alpha_sweep(X, alphas) -> list[SweepRow]:
    X = as_pointset(X)
    alphas = [check_alpha(a) for a in alphas]
    C = min_enclosing_circle(X).centre
    s2 = solve_quadratic(X).s_star
    M = centroid(X)
    rows = []
    for a in alphas:
        s = solve_numeric(X, a).s
        rows.append(SweepRow(a, s, math.dist(s, C), math.dist(s, s2), math.dist(s, M)))
    return rows
