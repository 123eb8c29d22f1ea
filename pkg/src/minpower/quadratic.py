"""Exact quadratic min-power centre via the farthest-point diagram.

For alpha = 2 the gradient of F_j is 2(n+1)(s - M_j), so the optimality
conditions say s* is a convex combination of 2-centroids whose sites are all
farthest from s*. The solver scans the diagram faces: region of x_r, then
edges, then vertices, and stops at the first face V_D whose image A D
contains its own dual point.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ImplicationViolated, InconsistentResult, NotInHull
from .farthest import Fpvd, build_fpvd, in_region
from .geometry import (
    Point,
    PointSet,
    as_pointset,
    barycentric,
    convex_hull,
    min_enclosing_circle,
)

log = logging.getLogger(__name__)

RAY_LIMIT = 1e15
SCAN_ORDERS = ("paper", "centroid-first")


@dataclass(frozen=True)
class TwoCentroidSet:
    """Centroid M, all 2-centroids M_j = (x_j + sum x_i)/(n+1), and r."""

    M: Point
    Mj: np.ndarray = field(repr=False)
    r: int

    def __getitem__(self, j) -> Point:
        return Point(float(self.Mj[j, 0]), float(self.Mj[j, 1]))

    def __len__(self):
        return len(self.Mj)


@dataclass(frozen=True)
class MinPowerResult:
    s_star: Point
    active: tuple[int, ...]
    lambdas: dict
    case: int
    objective: float
    witness_face: tuple
    scan_order: str = "paper"

    def lambda_vector(self, n: int) -> np.ndarray:
        lam = np.zeros(n)
        for j, v in self.lambdas.items():
            lam[j] = v
        return lam


def two_centroids(X) -> TwoCentroidSet:
    X = as_pointset(X)
    c = X.coords
    n = X.n
    total = c.sum(axis=0)
    Mj = (c + total) / (n + 1)
    Mj.setflags(write=False)
    M = total / n
    d = np.hypot(c[:, 0] - M[0], c[:, 1] - M[1])
    r = int(np.argmax(d))
    return TwoCentroidSet(Point(float(M[0]), float(M[1])), Mj, r)


def power(s, X, alpha: float = 2.0) -> float:
    """P_alpha(s) = sum_i |s - x_i|^alpha + max_i |s - x_i|^alpha."""
    from .oracle import check_alpha

    check_alpha(alpha)
    c = as_pointset(X).coords
    d = np.hypot(c[:, 0] - s[0], c[:, 1] - s[1])
    if alpha == 2.0:
        p = d * d
    else:
        p = d ** alpha
    return float(p.sum() + p.max())


def recover_multipliers(X, s_star, active, tc: TwoCentroidSet | None = None) -> dict:
    """Barycentric weights of s_star over the active 2-centroids."""
    X = as_pointset(X)
    tc = tc or two_centroids(X)
    active = tuple(int(j) for j in active)
    scale = max(X.extent(), 1e-300)
    if len(active) == 1:
        (j,) = active
        lam = [1.0]
    elif len(active) == 2:
        a, b = tc[active[0]], tc[active[1]]
        dx, dy = b.x - a.x, b.y - a.y
        L2 = dx * dx + dy * dy
        t = ((s_star[0] - a.x) * dx + (s_star[1] - a.y) * dy) / L2
        off = abs((s_star[0] - a.x) * dy - (s_star[1] - a.y) * dx) / math.sqrt(L2)
        if off > 1e-9 * scale:
            raise NotInHull(f"point is {off:.3g} off the segment of {active}")
        lam = [1.0 - t, t]
    elif len(active) == 3:
        lam = list(barycentric(s_star, *(tc[j] for j in active)))
    else:
        raise ValueError("active set must have 1 to 3 members")
    if min(lam) < -1e-9:
        raise NotInHull(f"barycentric coordinates {lam} for active set {active}")
    lam = [max(v, 0.0) for v in lam]
    total = sum(lam)
    return {j: v / total for j, v in zip(active, lam)}


# ---------------------------------------------------------------- scan

def _edge_candidates(C, n, tc, fpvd, tol, scale):
    es = fpvd.edge_sites
    xi, xj = C[es[:, 0]], C[es[:, 1]]
    d = xj - xi
    mid = 0.5 * (xi + xj)
    Mi = tc.Mj[es[:, 0]]
    t = -(n + 1) * ((Mi - mid) * d).sum(axis=1) / (d * d).sum(axis=1)
    p = Mi + t[:, None] * (tc.Mj[es[:, 1]] - Mi)
    u = ((p - fpvd.edge_origin) * fpvd.edge_dir).sum(axis=1)
    length = np.minimum(fpvd.edge_len, RAY_LIMIT * scale)
    tolu = tol * scale
    viol = (np.maximum.reduce([-t, t - 1.0, np.zeros_like(t)])
            + np.maximum.reduce([-u - tolu, u - length - tolu, np.zeros_like(u)]) / scale)
    ok = (t >= -tol) & (t <= 1.0 + tol) & (u >= -tolu) & (u <= length + tolu)
    return ok, p, viol


def _vertex_candidates(tc, fpvd, tol):
    ts = fpvd.tri_sites
    v = fpvd.tri_point
    A, B, Cc = tc.Mj[ts[:, 0]], tc.Mj[ts[:, 1]], tc.Mj[ts[:, 2]]
    v0, v1, v2 = B - A, Cc - A, v - A
    den = v0[:, 0] * v1[:, 1] - v1[:, 0] * v0[:, 1]
    lb = (v2[:, 0] * v1[:, 1] - v1[:, 0] * v2[:, 1]) / den
    lc = (v0[:, 0] * v2[:, 1] - v2[:, 0] * v0[:, 1]) / den
    la = 1.0 - lb - lc
    low = np.minimum(np.minimum(la, lb), lc)
    return low >= -tol, np.maximum(-low, 0.0)


def _dist_to_edges(M, fpvd, scale):
    rel = np.asarray(M) - fpvd.edge_origin
    u = (rel * fpvd.edge_dir).sum(axis=1)
    u = np.clip(u, 0.0, np.minimum(fpvd.edge_len, RAY_LIMIT * scale))
    foot = fpvd.edge_origin + u[:, None] * fpvd.edge_dir
    return np.hypot(*(foot - np.asarray(M)).T)


def scan_faces(X, fpvd: Fpvd, tc: TwoCentroidSet | None = None,
               scan_order: str = "paper", tol: float = 1e-12):
    """Run the face scan on a prebuilt diagram.

    Returns ``(kind, index, point)`` with kind in {'region', 'edge', 'vertex'};
    the index is the firing site, edge id or triangle id.
    """
    if scan_order not in SCAN_ORDERS:
        raise ValueError(f"scan_order must be one of {SCAN_ORDERS}")
    X = as_pointset(X)
    tc = tc or two_centroids(X)
    C = X.coords
    n = X.n
    scale = max(X.extent(), 1e-300)
    r = tc.r
    if in_region(fpvd, X, r, tc[r], rel_tol=tol):
        return "region", r, tc[r]

    e_ok, e_pt, e_viol = _edge_candidates(C, n, tc, fpvd, tol, scale)
    v_ok, v_viol = _vertex_candidates(tc, fpvd, tol)
    E = len(e_ok)
    ok = np.concatenate([e_ok, v_ok])
    if scan_order == "paper":
        order = None
    else:
        dist = np.concatenate([_dist_to_edges(tc.M, fpvd, scale),
                               np.hypot(*(fpvd.tri_point - np.asarray(tc.M)).T)])
        order = np.argsort(dist, kind="stable")
    if ok.any():
        if order is None:
            k = int(np.argmax(ok))
        else:
            k = int(order[np.argmax(ok[order])])
    else:
        viol = np.concatenate([e_viol, v_viol])
        k = int(np.argmin(viol))
        log.warning("no face satisfied the scan at tol=%g; using least violation %.3g",
                    tol, viol[k])
    if k < E:
        return "edge", k, Point(float(e_pt[k, 0]), float(e_pt[k, 1]))
    k -= E
    return "vertex", k, Point(float(fpvd.tri_point[k, 0]), float(fpvd.tri_point[k, 1]))


def solve_quadratic(X, scan_order: str = "paper", fpvd: Fpvd | None = None,
                    tol: float = 1e-12, seed: int = 0) -> MinPowerResult:
    """Unique minimiser of P_2 with its multipliers and witness face."""
    X = as_pointset(X)
    tc = two_centroids(X)
    if X.is_singleton():
        j = 0
        return MinPowerResult(X[j], (j,), {j: 1.0}, 1, 0.0, ("region", j), scan_order)
    if fpvd is None:
        fpvd = build_fpvd(X, seed=seed)
    kind, k, s = scan_faces(X, fpvd, tc, scan_order=scan_order, tol=tol)
    if kind == "region":
        active = (k,)
    elif kind == "edge":
        active = fpvd.edges[k].sites
    else:
        active = tuple(sorted(int(a) for a in fpvd.tri_sites[k]))
    lambdas = recover_multipliers(X, s, active, tc)
    keep = tuple(j for j in active if lambdas[j] > 1e-12)
    if keep != active:
        total = sum(lambdas[j] for j in keep)
        lambdas = {j: lambdas[j] / total for j in keep}
        active = keep
    if len(active) == 1:
        witness = ("region", active[0])
    elif len(active) == 2:
        witness = ("edge", tuple(sorted(active)))
    else:
        witness = ("vertex", active)
    return MinPowerResult(
        s_star=s, active=active, lambdas=lambdas, case=len(active),
        objective=power(s, X, 2.0), witness_face=witness, scan_order=scan_order)


# ---------------------------------------------------------------- checks

def kkt_residuals(X, result: MinPowerResult, tc: TwoCentroidSet | None = None) -> dict:
    """Stationarity, normalisation and complementary slackness residuals."""
    X = as_pointset(X)
    tc = tc or two_centroids(X)
    s = np.asarray(result.s_star)
    comb = sum(v * tc.Mj[j] for j, v in result.lambdas.items())
    d = np.hypot(*(X.coords - s).T)
    dmax = d.max()
    slack = max((v * abs(d[j] - dmax) for j, v in result.lambdas.items()), default=0.0)
    return {
        "stationarity": float(np.hypot(*(s - comb))),
        "normalisation": abs(sum(result.lambdas.values()) - 1.0),
        "slackness": float(slack),
        "min_lambda": min(result.lambdas.values()),
    }


@dataclass(frozen=True)
class CaseReport:
    case: int
    host: str
    s_is_Mr: bool
    regions_with_own_centroid: tuple[int, ...]
    near_degenerate: bool


def _host(X, s, rel_tol):
    c = X.coords
    d = np.hypot(c[:, 0] - s[0], c[:, 1] - s[1])
    far = np.flatnonzero(d >= d.max() * (1.0 - rel_tol))
    k = len(np.unique(c[far], axis=0))
    return {1: "region", 2: "edge"}.get(k, "vertex")


def classify_case(result: MinPowerResult, tc: TwoCentroidSet, fpvd: Fpvd, X,
                  tol: float = 1e-9) -> CaseReport:
    """Check |Lambda| = 1  <=>  s* = M_r  <=>  some M_j lies in V(x_j)."""
    X = as_pointset(X)
    scale = max(X.extent(), 1e-300)
    s = result.s_star
    Mr = tc[tc.r]
    s_is_Mr = math.hypot(s[0] - Mr.x, s[1] - Mr.y) <= tol * scale
    own = tuple(j for j in fpvd.sites if in_region(fpvd, X, j, tc[j], rel_tol=tol))
    host = _host(X, s, tol)
    if result.case == 1 and not (s_is_Mr and own):
        raise InconsistentResult(f"case 1 but s*=M_r is {s_is_Mr}, own regions {own}")
    if s_is_Mr != bool(own):
        raise InconsistentResult(f"s*=M_r is {s_is_Mr} but own regions are {own}")
    if host == "region" and not s_is_Mr:
        raise InconsistentResult("s* interior to a region but differs from M_r")
    return CaseReport(result.case, host, s_is_Mr, own,
                      near_degenerate=(s_is_Mr and result.case != 1))


def _in_convex(points: np.ndarray, p, tol: float) -> bool:
    """Tolerant containment of p in conv(points) (scaled by their spread)."""
    P = PointSet(points)
    hull = convex_hull(P)
    V = P.coords[list(hull.vertices)]
    scale = max(P.extent(), abs(V).max(), 1e-300)
    p = np.asarray(p, dtype=float)
    if len(V) == 1:
        return bool(np.hypot(*(p - V[0])) <= tol * scale)
    if len(V) == 2:
        a, b = V
        ab = b - a
        t = float(np.dot(p - a, ab) / np.dot(ab, ab))
        t = min(max(t, 0.0), 1.0)
        return bool(np.hypot(*(a + t * ab - p)) <= tol * scale)
    for k in range(len(V)):
        a, b = V[k], V[(k + 1) % len(V)]
        ab = b - a
        cross = ab[0] * (p[1] - a[1]) - ab[1] * (p[0] - a[0])
        if cross < -tol * scale * np.hypot(*ab):
            return False
    return True


@dataclass(frozen=True)
class OneCentreReport:
    C: Point
    M: Point
    s_star: Point
    c_equals_sstar: bool
    m_equals_sstar: bool
    m_in_conv_active: bool
    c_equidistant_all: bool
    c_in_conv_M: bool


def one_centre_checks(X, result: MinPowerResult | None = None,
                      tol: float = 1e-9) -> OneCentreReport:
    """Evaluate the 1-centre relations and assert the implications among them."""
    X = as_pointset(X)
    if X.n < 2:
        raise ValueError("need at least two points")
    tc = two_centroids(X)
    result = result or solve_quadratic(X)
    C = min_enclosing_circle(X).centre
    M, s = tc.M, result.s_star
    scale = max(X.extent(), 1e-300)

    def same(a, b):
        return math.hypot(a[0] - b[0], a[1] - b[1]) <= tol * scale

    d = np.hypot(*(X.coords - np.asarray(C)).T)
    rep = OneCentreReport(
        C=C, M=M, s_star=s,
        c_equals_sstar=same(C, s),
        m_equals_sstar=same(M, s),
        m_in_conv_active=_in_convex(tc.Mj[list(result.active)], M, tol),
        c_equidistant_all=bool(d.max() - d.min() <= tol * max(d.max(), scale)),
        c_in_conv_M=_in_convex(tc.Mj, C, tol),
    )
    if rep.m_in_conv_active and not rep.c_equals_sstar:
        raise ImplicationViolated("M in conv(active 2-centroids) but s* != C")
    if rep.m_equals_sstar != same(M, C):
        raise ImplicationViolated("s* = M must hold exactly when M = C")
    if rep.c_equidistant_all and rep.c_equals_sstar != rep.c_in_conv_M:
        raise ImplicationViolated("C equidistant: s* = C must match C in conv(M)")
    return rep


def one_centre_via_diagram(X, fpvd: Fpvd | None = None, tol: float = 1e-12) -> Point:
    """1-centre as the face point lying in the interior of its own dual D."""
    X = as_pointset(X)
    if X.is_singleton():
        return X[0]
    fpvd = fpvd or build_fpvd(X)
    C = X.coords
    scale = max(X.extent(), 1e-300)
    es = fpvd.edge_sites
    mid = 0.5 * (C[es[:, 0]] + C[es[:, 1]])
    u = ((mid - fpvd.edge_origin) * fpvd.edge_dir).sum(axis=1)
    length = np.minimum(fpvd.edge_len, RAY_LIMIT * scale)
    ok = (u >= -tol * scale) & (u <= length + tol * scale)
    if ok.any():
        k = int(np.argmax(ok))
        return Point(float(mid[k, 0]), float(mid[k, 1]))
    best, best_low = None, -math.inf
    for t, v in zip(fpvd.tri_sites, fpvd.tri_point):
        low = min(barycentric(v, *(C[int(a)] for a in t)))
        if low > best_low:
            best, best_low = v, low
    return Point(float(best[0]), float(best[1]))
