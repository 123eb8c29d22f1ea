"""Numeric solver for P_alpha (any 1 < alpha <= 64) and the X(s) transform.

Nothing here uses the farthest-point diagram or 2-centroids, so it can act as
an independent check on the geometric solver. Inputs are recentred and scaled
to a unit bounding square before any power is taken.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, minimize, nnls

from .errors import (InvalidAlpha, MinPowerError, NoConvergence, PropositionViolated,
                     ToleranceNotReached)
from .geometry import Point, PointSet, as_pointset, circumcircle, min_enclosing_circle, orient

log = logging.getLogger(__name__)

ALPHA_MAX = 64.0
GRID = 17
DIVERGED = 1e6  # fixed-point iterates farther than this many diameters are abandoned
STALL_WINDOW = 200


def check_alpha(alpha) -> float:
    alpha = float(alpha)
    if not (1.0 < alpha <= ALPHA_MAX) or math.isnan(alpha):
        raise InvalidAlpha(f"alpha must lie in (1, {ALPHA_MAX:g}], got {alpha!r}")
    return alpha


@dataclass(frozen=True)
class ObjectiveEval:
    value: float
    active_set: tuple[int, ...]
    subgradient: np.ndarray


@dataclass(frozen=True)
class NumericSolution:
    s: Point
    objective: float
    iterations: int
    certified_gap: float


# ---------------------------------------------------------------- evaluation

def _pow(d, alpha):
    return d * d if alpha == 2.0 else d ** alpha


def _pow_sq(d2, alpha):
    """d2 ** (alpha / 2), with cheap paths for integer alpha."""
    if alpha == 2.0:
        return d2
    if alpha.is_integer() and alpha <= 16:
        k = int(alpha) // 2
        p = d2 if k else np.ones_like(d2)
        for _ in range(k - 1):
            p = p * d2
        return p * np.sqrt(d2) if int(alpha) % 2 else p
    return d2 ** (0.5 * alpha)


def _value(Y, s, alpha) -> float:
    diff = Y - s
    d2 = np.einsum("ij,ij->i", diff, diff)
    p = _pow_sq(d2, alpha)
    return float(p.sum() + p.max())


def _values(Y, S, alpha) -> np.ndarray:
    d = np.hypot(S[:, None, 0] - Y[None, :, 0], S[:, None, 1] - Y[None, :, 1])
    p = _pow(d, alpha)
    return p.sum(axis=1) + p.max(axis=1)


def _term_grads(Y, s, alpha) -> np.ndarray:
    """Rows alpha (s - y_i) |s - y_i|^(alpha-2), zero where s = y_i."""
    diff = np.asarray(s) - Y
    if alpha == 2.0:
        return 2.0 * diff
    d = np.hypot(diff[:, 0], diff[:, 1])
    w = np.zeros_like(d)
    nz = d > 0
    w[nz] = alpha * d[nz] ** (alpha - 2.0)
    return diff * w[:, None]


def _piece_grad(Y, s, alpha, j, terms=None) -> np.ndarray:
    terms = _term_grads(Y, s, alpha) if terms is None else terms
    return terms.sum(axis=0) + terms[j]


def eval_objective(X, s, alpha: float = 2.0, rel_tol: float = 1e-12) -> ObjectiveEval:
    """P_alpha(s), the indices attaining the max term, and grad F_j of the first."""
    alpha = check_alpha(alpha)
    C = as_pointset(X).coords
    d = np.hypot(C[:, 0] - s[0], C[:, 1] - s[1])
    p = _pow(d, alpha)
    value = float(p.sum() + p.max())
    active = tuple(int(i) for i in np.flatnonzero(d >= d.max() * (1.0 - rel_tol)))
    g = _piece_grad(C, s, alpha, active[0])
    return ObjectiveEval(value, active, g)


def piece_value(X, s, alpha, j) -> float:
    """F_j(s) = |s - x_j|^alpha + sum_i |s - x_i|^alpha."""
    C = as_pointset(X).coords
    p = _pow(np.hypot(C[:, 0] - s[0], C[:, 1] - s[1]), alpha)
    return float(p.sum() + p[j])


def piece_gradient(X, s, alpha, j) -> np.ndarray:
    return _piece_grad(as_pointset(X).coords, s, check_alpha(alpha), j)


# ---------------------------------------------------------------- phases

def _nested_grid(Y, alpha, box, xtol, k=33):
    """Minimise P over a box by nested shrinking grids.

    g(x) = min_y P(x, y) is convex, as is P(x, .) for each x, so the
    minimiser along either axis lies within one spacing of the discrete
    argmin. Every round shrinks an interval by (k - 1) / 2; the inner
    searches for all k abscissae run together.
    """
    (xlo, xhi), (ylo, yhi) = box
    t = np.linspace(0.0, 1.0, k)
    rows = np.arange(k)
    while True:
        xs = xlo + (xhi - xlo) * t
        lo, hi = np.full(k, ylo), np.full(k, yhi)
        while True:
            ys = lo[:, None] + (hi - lo)[:, None] * t[None, :]
            dx = xs[:, None, None] - Y[None, None, :, 0]
            dy = ys[:, :, None] - Y[None, None, :, 1]
            d2 = dx * dx + dy * dy
            p = _pow_sq(d2, alpha)
            v = p.sum(axis=2) + p.max(axis=2)
            j = np.argmin(v, axis=1)
            if (hi - lo).max() <= xtol:
                break
            lo, hi = ys[rows, np.maximum(j - 1, 0)], ys[rows, np.minimum(j + 1, k - 1)]
        best_y, g = ys[rows, j], v[rows, j]
        i = int(np.argmin(g))
        if xhi - xlo <= xtol:
            return np.array([xs[i], best_y[i]]), float(g[i])
        xlo, xhi = xs[max(i - 1, 0)], xs[min(i + 1, k - 1)]


def _subgradient(Y, alpha, s0, max_iter, tol):
    def probe(s):
        diff = s - Y
        d2 = np.einsum("ij,ij->i", diff, diff)
        j = int(np.argmax(d2))
        if alpha == 2.0:
            p = d2
            g = 2.0 * (diff.sum(axis=0) + diff[j])
        else:
            d = np.sqrt(d2)
            p = _pow_sq(d2, alpha)
            w = np.zeros_like(d)
            nz = d > 0
            w[nz] = alpha * d[nz] ** (alpha - 2.0)
            w[j] *= 2.0
            g = (diff * w[:, None]).sum(axis=0)
        return float(p.sum() + p[j]), g

    s = np.array(s0, dtype=float)
    f, g = probe(s)
    best, fbest = s.copy(), f
    delta = 0.1 * fbest + 1e-300
    last_gain, stall = 0, 0
    it = 0
    for it in range(1, max_iter + 1):
        gn = math.hypot(g[0], g[1])
        if gn == 0.0:
            break
        polyak = (f - (fbest - delta)) / (gn * gn)
        step = min(0.1 / math.sqrt(it), polyak * gn)
        s = s - step * g / gn
        f, g = probe(s)
        if f < fbest:
            stall = 0 if fbest - f >= tol * tol else stall + 1
            best, fbest = s.copy(), f
            last_gain = it
        else:
            stall += 1
        if it - last_gain > 20:
            delta *= 0.5
            last_gain = it
        if stall >= STALL_WINDOW:
            break
    return best, fbest, it


def _newton_piece(Y, alpha, j, s0, iters=50):
    """Minimise the smooth piece F_j by Newton steps with backtracking."""
    s = np.array(s0, dtype=float)
    f = _value_piece(Y, s, alpha, j)
    for _ in range(iters):
        diff = s - Y
        d = np.hypot(diff[:, 0], diff[:, 1])
        if np.any(d == 0.0) and alpha < 2.0:
            return None
        w = np.ones_like(d)
        w[j] = 2.0
        g = (diff * (w * alpha * d ** (alpha - 2.0))[:, None]).sum(axis=0)
        H = np.zeros((2, 2))
        for i in range(len(Y)):
            if d[i] == 0.0:
                continue
            u = diff[i] / d[i]
            H += w[i] * alpha * d[i] ** (alpha - 2.0) * (np.eye(2) + (alpha - 2.0) * np.outer(u, u))
        try:
            step = np.linalg.solve(H, g)
        except np.linalg.LinAlgError:
            return None
        t = 1.0
        while True:
            cand = s - t * step
            fc = _value_piece(Y, cand, alpha, j)
            if fc <= f + 1e-14 * abs(f) or t < 1e-12:
                break
            t *= 0.5
        moved = float(np.hypot(*(cand - s)))
        s, f = cand, fc
        if moved <= 1e-15:
            break
    return s


def _value_piece(Y, s, alpha, j):
    p = _pow(np.hypot(Y[:, 0] - s[0], Y[:, 1] - s[1]), alpha)
    return float(p.sum() + p[j])


def _bisector_min(Y, alpha, i, j, span):
    """Minimise F_i on the bisector of y_i, y_j via the root of its slope."""
    mid = 0.5 * (Y[i] + Y[j])
    dvec = Y[j] - Y[i]
    perp = np.array([-dvec[1], dvec[0]]) / np.hypot(*dvec)

    def slope(t):
        return float(np.dot(_piece_grad(Y, mid + t * perp, alpha, i), perp))

    lo, hi = -span, span
    if slope(lo) > 0 or slope(hi) < 0:
        return None
    # F_i is convex along the line, so its slope is monotone
    t = brentq(slope, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps)
    return mid + t * perp


def _polish(Y, alpha, s, f, span):
    """Refine on the locally active smooth pieces (1, 2 or 3 farthest points)."""
    d = np.hypot(Y[:, 0] - s[0], Y[:, 1] - s[1])
    near = np.flatnonzero(d >= d.max() * (1.0 - 1e-5))
    _, first = np.unique(Y[near], axis=0, return_index=True)
    near = sorted(sorted(int(near[k]) for k in first), key=lambda q: -d[q])[:6]
    best, fbest, ref = s, f, f
    for k in (1, 2, 3):
        for sub in itertools.combinations(near, k):
            if k == 1:
                cand = _newton_piece(Y, alpha, sub[0], s)
            elif k == 2:
                cand = _bisector_min(Y, alpha, sub[0], sub[1], span)
            else:
                a, b, c = (Y[q] for q in sub)
                if orient(a, b, c) == 0:
                    continue
                cand = np.asarray(circumcircle(a, b, c).centre)
            if cand is None or not np.all(np.isfinite(cand)):
                continue
            dc = np.hypot(Y[:, 0] - cand[0], Y[:, 1] - cand[1])
            if dc.max() > dc[list(sub)].min() * (1.0 + 1e-12) + 1e-300:
                continue
            fc = _value(Y, cand, alpha)
            if fc <= ref + 1e-12 * abs(ref) and (best is s or fc < fbest):
                best, fbest = cand, fc
    return best, fbest, best is not s


def _dual_bound(Y, alpha, s, span):
    """Lagrangian lower bound on min P from multipliers recovered at s."""
    n = len(Y)
    d = np.hypot(Y[:, 0] - s[0], Y[:, 1] - s[1])
    act = np.flatnonzero(d >= d.max() * (1.0 - 1e-7))
    terms = _term_grads(Y, s, alpha)
    G = np.stack([terms.sum(axis=0) + terms[j] for j in act], axis=1)
    w = 1e3 * max(float(np.abs(G).max()), 1.0)
    A = np.vstack([G, w * np.ones((1, len(act)))])
    b = np.array([0.0, 0.0, w])
    lam_act, _ = nnls(A, b)
    if lam_act.sum() <= 0:
        return None
    lam = np.zeros(n)
    lam[act] = lam_act / lam_act.sum()
    weights = 1.0 + lam
    if alpha == 2.0:
        z = (weights[:, None] * Y).sum(axis=0) / weights.sum()
        grad_norm = 0.0
    else:
        def L(z):
            return float((weights * _pow(np.hypot(Y[:, 0] - z[0], Y[:, 1] - z[1]), alpha)).sum())

        def dL(z):
            return (weights[:, None] * _term_grads(Y, z, alpha)).sum(axis=0)

        res = minimize(L, np.asarray(s, dtype=float), jac=dL, method="BFGS",
                       options={"gtol": 1e-13, "maxiter": 500})
        z = res.x
        grad_norm = float(np.hypot(*dL(z)))
    value = float((weights * _pow(np.hypot(Y[:, 0] - z[0], Y[:, 1] - z[1]), alpha)).sum())
    bound = value - grad_norm * 2.0 * span * math.sqrt(2.0)
    return bound if math.isfinite(bound) else None


def solve_numeric(X, alpha: float = 2.0, tol: float = 1e-8, max_iter: int = 300,
                  strict: bool = False) -> NumericSolution:
    """Minimise P_alpha without any geometric structure.

    Start at the centroid and the best node of a 17x17 grid over the bounding
    box, run normalized subgradient steps (c/sqrt(k) capped by a Polyak level
    step) until the best value stalls for 200 iterations, then bracket the
    minimiser by nested shrinking grids over the box and refine on the
    locally active smooth pieces. ``certified_gap`` bounds P(s) - P(s*) using
    the Lagrangian dual at recovered multipliers.

    With ``strict=True`` a relative gap above ``tol`` raises
    ToleranceNotReached carrying the best point.
    """
    alpha = check_alpha(alpha)
    if tol <= 0:
        raise ValueError("tol must be positive")
    X = as_pointset(X)
    C = X.coords
    if X.is_singleton():
        return NumericSolution(X[0], 0.0, 0, 0.0)
    lo, hi = C.min(axis=0), C.max(axis=0)
    centre = 0.5 * (lo + hi)
    scale = float((hi - lo).max())
    Y = (C - centre) / scale
    ylo, yhi = Y.min(axis=0), Y.max(axis=0)

    gx = np.linspace(ylo[0], yhi[0], GRID)
    gy = np.linspace(ylo[1], yhi[1], GRID)
    starts = np.vstack([Y.mean(axis=0), np.array(np.meshgrid(gx, gy)).reshape(2, -1).T])
    vals = _values(Y, starts, alpha)
    s0 = starts[int(np.argmin(vals))]

    s1, f1, iters = _subgradient(Y, alpha, s0, max_iter, tol)

    pad = 1e-3
    box = ((ylo[0] - pad, yhi[0] + pad), (ylo[1] - pad, yhi[1] + pad))
    s2, f2 = _nested_grid(Y, alpha, box, max(min(1e-4, tol), 1e-12), k=17)
    if f1 < f2:
        s2, f2 = s1, f1
    span = 2.0
    s3, f3, polished = _polish(Y, alpha, s2, f2, span)
    if not polished:
        # no smooth piece explains the point: refine the grid locally instead
        w = 2e-4
        local = ((s2[0] - w, s2[0] + w), (s2[1] - w, s2[1] + w))
        s3, f3 = _nested_grid(Y, alpha, local, max(min(1e-10, tol), 1e-13), k=17)
        if f2 < f3:
            s3, f3 = s2, f2

    lb = _dual_bound(Y, alpha, s3, span)
    if lb is None:
        terms = _term_grads(Y, s3, alpha)
        d = np.hypot(Y[:, 0] - s3[0], Y[:, 1] - s3[1])
        g = terms.sum(axis=0) + terms[int(np.argmax(d))]
        gap = float(np.hypot(*g)) * 2.0 * math.sqrt(2.0)
    else:
        gap = max(f3 - lb, 0.0)
    s = centre + scale * s3
    objective = _value(C, s, alpha)
    sol = NumericSolution(Point(float(s[0]), float(s[1])), objective, iters,
                          gap * scale ** alpha)
    if strict and gap > tol * max(f3, 1e-300):
        raise ToleranceNotReached(f"relative gap {gap / f3:.3g} exceeds {tol:g}", sol)
    return sol


# ---------------------------------------------------------------- transform

def _transform_coords(C, s, alpha) -> np.ndarray:
    diff = C - s
    d = np.hypot(diff[:, 0], diff[:, 1])
    f = np.zeros_like(d)
    nz = d > 0
    f[nz] = 1.0 if alpha == 2.0 else d[nz] ** (alpha - 2.0)
    return s + diff * f[:, None]


def transform_X(X, s, alpha: float) -> PointSet:
    """x_i(s) = s + |s - x_i|^(alpha-2) (x_i - s); points at s stay at s."""
    alpha = check_alpha(alpha)
    return PointSet(_transform_coords(as_pointset(X).coords, np.asarray(s, dtype=float), alpha))


def is_transformed_optimum(X, alpha: float, s_prime, tol: float = 1e-7) -> bool:
    """Whether s_prime minimises P_2 over X(s_prime), i.e. s_prime = s*_alpha."""
    from .quadratic import solve_quadratic

    X = as_pointset(X)
    res = solve_quadratic(transform_X(X, s_prime, alpha))
    diam = X.diameter()
    return math.hypot(res.s_star[0] - s_prime[0], res.s_star[1] - s_prime[1]) <= tol * diam


def fixed_point_solve(X, alpha: float, max_iter: int = 100) -> NumericSolution:
    """Experimental: iterate s <- s*_2(X(s)) from the centroid.

    No convergence guarantee is known; a fixed point, when reached, is
    compared against ``solve_numeric``.
    """
    from .quadratic import solve_quadratic

    alpha = check_alpha(alpha)
    X = as_pointset(X)
    diam = X.diameter()
    s = start = np.asarray(X.coords.mean(axis=0))
    if diam == 0.0:
        return NumericSolution(Point(float(s[0]), float(s[1])), 0.0, 0, 0.0)
    for k in range(1, max_iter + 1):
        # solve in coordinates relative to s; translation changes nothing but
        # keeps the quadratic solve well conditioned while the iterate drifts
        with np.errstate(over="ignore", invalid="ignore"):
            local = _transform_coords(X.coords - s, np.zeros(2), alpha)
        if not np.all(np.isfinite(local)):
            raise NoConvergence(f"iteration {k} overflowed", last=Point(float(s[0]), float(s[1])))
        try:
            nxt = s + np.asarray(solve_quadratic(local).s_star)
        except MinPowerError as exc:
            raise NoConvergence(f"inner solve failed at iteration {k}: {exc}",
                                last=Point(float(s[0]), float(s[1]))) from exc
        if np.hypot(*(nxt - start)) > DIVERGED * diam:
            raise NoConvergence(f"iterate left the {DIVERGED:g} diam ball at iteration {k}",
                                last=Point(float(nxt[0]), float(nxt[1])))
        if np.hypot(*(nxt - s)) < 1e-10 * diam:
            p = Point(float(s[0]), float(s[1]))
            ref = solve_numeric(X, alpha)
            obj = _value(X.coords, s, alpha)
            dist = math.hypot(p.x - ref.s.x, p.y - ref.s.y)
            if dist > 1e-6 * diam:
                log.warning("fixed point %s is %.3g from the numeric optimum", p, dist)
            return NumericSolution(p, obj, k - 1 if k > 1 else 1,
                                   max(obj - ref.objective, 0.0) + ref.certified_gap)
        s = nxt
    raise NoConvergence(f"no fixed point after {max_iter} iterations",
                        last=Point(float(s[0]), float(s[1])))


# ---------------------------------------------------------------- equidistance

@dataclass(frozen=True)
class EquidistantReport:
    C: Point
    c_equidistant: bool
    s2: Point
    s2_equidistant: bool
    rows: tuple  # (alpha, s_alpha, C in conv M_j(C), s_alpha == C, s_alpha == s2)


def _equidistant(C, s, rel_tol):
    d = np.hypot(C[:, 0] - s[0], C[:, 1] - s[1])
    return bool(d.max() - d.min() <= rel_tol * max(d.max(), 1e-300))


def check_equidistant_props(X, alphas, tol: float = 1e-7) -> EquidistantReport:
    """Check the equidistance properties of C and s*_2 across alphas."""
    from .quadratic import _in_convex, solve_quadratic, two_centroids

    X = as_pointset(X)
    alphas = [check_alpha(a) for a in alphas]
    coords = X.coords
    diam = X.diameter()
    C = min_enclosing_circle(X).centre
    s2 = solve_quadratic(X).s_star
    c_eq = _equidistant(coords, C, 1e-9)
    s2_eq = _equidistant(coords, s2, 1e-9)
    rows = []
    for a in alphas:
        sa = solve_quadratic(X).s_star if a == 2.0 else solve_numeric(X, a).s
        at_c = math.hypot(sa[0] - C[0], sa[1] - C[1]) <= tol * diam
        at_s2 = math.hypot(sa[0] - s2[0], sa[1] - s2[1]) <= tol * diam
        in_conv = _in_convex(two_centroids(transform_X(X, C, a)).Mj, C, 1e-9)
        if c_eq and at_c != in_conv:
            if not at_c and _value(coords, sa, a) >= _value(coords, C, a):
                raise PropositionViolated(f"alpha={a}: C not beaten yet not optimal")
            raise PropositionViolated(
                f"alpha={a}: s*=C is {at_c} but C in conv(M_j(C)) is {in_conv}")
        if s2_eq and not at_s2:
            raise PropositionViolated(f"alpha={a}: s*_2 equidistant but s*_alpha differs")
        rows.append((a, sa, in_conv, at_c, at_s2))
    return EquidistantReport(C, c_eq, s2, s2_eq, tuple(rows))
