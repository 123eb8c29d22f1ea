"""Farthest-point Delaunay triangulation, Voronoi diagram, and their duality.

The triangulation is built on the hull vertices by randomized reinsertion
(Chew's scheme) with Lawson flips under the reversed in-circle test, so it is
O(n log n) including the hull. Cocircular groups are detected with the exact
predicate and re-triangulated to the lexicographically smallest choice; each
group becomes a single diagram vertex whose internal diagonals are the
zero-length edges of the face bijection.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from collections.abc import Mapping, Sequence
from typing import NamedTuple

import numpy as np

from .errors import DegenerateHull, SingletonInput, UnknownFace
from .geometry import (
    Point,
    PointSet,
    as_pointset,
    _ICC_ERRBOUND,
    _common_integers,
    convex_hull,
    incircle_filter,
)


def _pair(i, j) -> tuple[int, int]:
    return (i, j) if i < j else (j, i)


# ---------------------------------------------------------------- triangulation

@dataclass(frozen=True)
class Fpdt:
    """Farthest-point Delaunay triangulation of the hull vertices.

    ``triangles`` hold PointSet indices in CCW order; ``groups[g]`` lists the
    triangles sharing one circumcircle (a single diagram vertex).
    """

    sites: tuple[int, ...]
    triangles: tuple[tuple[int, int, int], ...]
    edges: tuple[tuple[int, int], ...]
    hull_edges: tuple[tuple[int, int], ...]
    triangle_group: tuple[int, ...]
    groups: tuple[tuple[int, ...], ...]
    tie_break: str = "lexicographic"

    def sorted_triangles(self) -> list[tuple[int, int, int]]:
        return sorted(tuple(sorted(t)) for t in self.triangles)

    def internal_edges(self) -> list[tuple[int, int]]:
        """Diagonals lying inside a cocircular group (zero-length dual edges)."""
        out = []
        for g, tris in enumerate(self.groups):
            if len(tris) < 2:
                continue
            seen: dict[tuple[int, int], int] = {}
            for t in tris:
                a, b, c = self.triangles[t]
                for e in (_pair(a, b), _pair(b, c), _pair(c, a)):
                    seen[e] = seen.get(e, 0) + 1
            out.extend(e for e, k in seen.items() if k == 2)
        return sorted(out)


class _ExactPositions:
    """Integer images of the positions (one shared power-of-two scale), built on demand."""

    def __init__(self, P):
        self.P = P
        self.ints = None

    def incircle(self, a, b, c, d) -> int:
        if self.ints is None:
            flat = _common_integers([v for p in self.P for v in p])
            self.ints = list(zip(flat[0::2], flat[1::2]))
        I = self.ints
        (ax, ay), (bx, by), (cx, cy), (dx, dy) = I[a], I[b], I[c], I[d]
        adx, ady = ax - dx, ay - dy
        bdx, bdy = bx - dx, by - dy
        cdx, cdy = cx - dx, cy - dy
        det = ((adx * adx + ady * ady) * (bdx * cdy - cdx * bdy)
               + (bdx * bdx + bdy * bdy) * (cdx * ady - adx * cdy)
               + (cdx * cdx + cdy * cdy) * (adx * bdy - bdx * ady))
        return (det > 0) - (det < 0)


def _incircle_fast(P, a, b, c, d, exact: _ExactPositions) -> int:
    """incircle() on positions into P, with the float filter inlined."""
    (ax, ay), (bx, by), (cx, cy), (dx, dy) = P[a], P[b], P[c], P[d]
    adx, ady = ax - dx, ay - dy
    bdx, bdy = bx - dx, by - dy
    cdx, cdy = cx - dx, cy - dy
    bc, cb = bdx * cdy, cdx * bdy
    ca, ac = cdx * ady, adx * cdy
    ab, ba = adx * bdy, bdx * ady
    alift = adx * adx + ady * ady
    blift = bdx * bdx + bdy * bdy
    clift = cdx * cdx + cdy * cdy
    det = alift * (bc - cb) + blift * (ca - ac) + clift * (ab - ba)
    bound = _ICC_ERRBOUND * ((abs(bc) + abs(cb)) * alift + (abs(ca) + abs(ac)) * blift
                             + (abs(ab) + abs(ba)) * clift)
    if det > bound:
        return 1
    if -det > bound:
        return -1
    return exact.incircle(a, b, c, d)


def _chew(P: list[tuple[float, float]], rng, exact: _ExactPositions | None = None
          ) -> dict[tuple[int, int], int]:
    """Triangulate a strictly convex CCW polygon (positions 0..h-1).

    Returns the map directed edge (u, v) -> w for every CCW triangle (u, v, w).
    """
    h = len(P)
    exact = exact or _ExactPositions(P)
    prev = [(i - 1) % h for i in range(h)]
    nxt = [(i + 1) % h for i in range(h)]
    order = rng.permutation(h).tolist()
    removed = []
    for p in order[: h - 3]:
        q, r = prev[p], nxt[p]
        removed.append((p, q, r))
        nxt[q], prev[r] = r, q
    a = order[-1]
    b = nxt[a]
    c = nxt[b]
    opp: dict[tuple[int, int], int] = {}

    def add(u, v, w):
        opp[(u, v)] = w
        opp[(v, w)] = u
        opp[(w, u)] = v

    def drop(u, v, w):
        del opp[(u, v)], opp[(v, w)], opp[(w, u)]

    add(a, b, c)
    for p, q, r in reversed(removed):
        add(q, p, r)
        stack = [(q, r)]
        while stack:
            u, v = stack.pop()
            # triangle (u, p, v) is CCW; w sits across the edge u-v
            w = opp.get((u, v))
            if w is None:
                continue
            if _incircle_fast(P, u, p, v, w, exact) < 0:
                drop(u, p, v)
                drop(u, v, w)
                add(u, p, w)
                add(p, v, w)
                stack.append((w, v))
                stack.append((u, w))
    return opp


def _lex_smallest_triangulation(cycle: list[int]) -> list[tuple[int, int, int]]:
    """Lexicographically smallest triangulation of a convex polygon.

    ``cycle`` lists vertex labels in CCW order. Any triangle of polygon
    vertices extends to a triangulation and the pieces it cuts off are
    independent, so taking the three smallest labels at every level is optimal.
    """
    out = []
    stack = [cycle]
    while stack:
        poly = stack.pop()
        if len(poly) < 3:
            continue
        picks = sorted(heapq.nsmallest(3, range(len(poly)), key=poly.__getitem__))
        i, j, k = picks
        out.append((poly[i], poly[j], poly[k]))
        stack.append(poly[i: j + 1])
        stack.append(poly[j: k + 1])
        stack.append(poly[k:] + poly[: i + 1])
    return out


def _triangles_from_opp(opp):
    # each CCW triangle once, rotated to start at its smallest position
    return sorted((u, v, w) for (u, v), w in opp.items() if u < v and u < w)


def build_fpdt(X, seed: int = 0) -> Fpdt:
    """Farthest-point Delaunay triangulation of conv(X)'s vertices."""
    X = as_pointset(X)
    return _build_fpdt(X, convex_hull(X), seed)


def _build_fpdt(X: PointSet, hull, seed: int) -> Fpdt:
    h = len(hull.vertices)
    if h < 3:
        raise DegenerateHull(f"hull has {h} vertices; need at least 3")
    sites = list(hull.vertices)
    P = [(float(X.coords[i, 0]), float(X.coords[i, 1])) for i in sites]
    exact = _ExactPositions(P)
    opp = _chew(P, np.random.default_rng(seed), exact)
    tris = _triangles_from_opp(opp)

    # union cocircular neighbours
    tindex = {t: k for k, t in enumerate(tris)}
    parent = list(range(len(tris)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def owner(u, v):
        w = opp[(u, v)]
        t = (u, v, w)
        m = min(t)
        while t[0] != m:
            t = (t[1], t[2], t[0])
        return tindex[t]

    inner = [(u, v, w, opp[(v, u)]) for (u, v), w in opp.items() if u < v and (v, u) in opp]
    if inner:
        Q = np.asarray(inner, dtype=np.int64)
        Pa = np.asarray(P, dtype=float)
        unsure = incircle_filter(Pa[Q[:, 0]], Pa[Q[:, 1]], Pa[Q[:, 2]], Pa[Q[:, 3]]) == 0
        for k in np.flatnonzero(unsure).tolist():
            u, v, w, z = inner[k]
            if exact.incircle(u, v, w, z) != 0:
                continue
            ra, rb = find(owner(u, v)), find(owner(v, u))
            if ra != rb:
                parent[ra] = rb

    members: dict[int, list[int]] = {}
    for k in range(len(tris)):
        members.setdefault(find(k), []).append(k)

    final_tris: list[tuple[int, int, int]] = []
    tgroup: list[int] = []
    groups: list[tuple[int, ...]] = []
    for root in sorted(members, key=lambda r: min(members[r])):
        ks = members[root]
        gid = len(groups)
        if len(ks) == 1:
            local = [tris[ks[0]]]
        else:
            pos = sorted({p for k in ks for p in tris[k]})
            labels = [sites[p] for p in pos]
            back = {sites[p]: p for p in pos}
            local = []
            for t in _lex_smallest_triangulation(labels):
                local.append(tuple(sorted(back[s] for s in t)))
        ids = []
        for t in local:
            ids.append(len(final_tris))
            final_tris.append(tuple(sites[p] for p in t))
            tgroup.append(gid)
        groups.append(tuple(ids))

    edges = set()
    for a, b, c in final_tris:
        edges.update((_pair(a, b), _pair(b, c), _pair(c, a)))
    hull_edges = tuple(_pair(sites[k], sites[(k + 1) % h]) for k in range(h))
    return Fpdt(
        sites=tuple(sites),
        triangles=tuple(final_tris),
        edges=tuple(sorted(edges)),
        hull_edges=hull_edges,
        triangle_group=tuple(tgroup),
        groups=tuple(groups),
    )


# ---------------------------------------------------------------- diagram

class FpvdVertex(NamedTuple):
    point: Point
    sites: tuple[int, ...]


class FpvdEdge(NamedTuple):
    """A bisector piece: bounded segment or ray from ``origin``.

    ``direction`` is a unit vector; ``length`` is ``inf`` for rays.
    ``ends`` are vertex ids, -1 marking the open end of a ray.
    """

    sites: tuple[int, int]
    origin: Point
    direction: Point
    length: float
    ends: tuple[int, int]

    @property
    def kind(self) -> str:
        return "ray" if math.isinf(self.length) else "segment"

    def point_at(self, u: float) -> Point:
        return Point(self.origin.x + u * self.direction.x,
                     self.origin.y + u * self.direction.y)


class Region(NamedTuple):
    site: int
    edges: tuple[int, ...]
    neighbours: tuple[int, ...]


class _EdgeView(Sequence):
    """Read-only list of FpvdEdge built on demand from the packed arrays."""

    def __init__(self, es, eo, ed, el, ends):
        self._a = (es, eo, ed, el, ends)
        self._cache: dict[int, FpvdEdge] = {}

    def __len__(self):
        return len(self._a[0])

    def __getitem__(self, k):
        if isinstance(k, slice):
            return [self[i] for i in range(*k.indices(len(self)))]
        k = range(len(self))[k]
        e = self._cache.get(k)
        if e is None:
            es, eo, ed, el, ends = self._a
            e = FpvdEdge((int(es[k, 0]), int(es[k, 1])), Point(float(eo[k, 0]), float(eo[k, 1])),
                         Point(float(ed[k, 0]), float(ed[k, 1])), float(el[k]),
                         (int(ends[k, 0]), int(ends[k, 1])))
            self._cache[k] = e
        return e

    def __repr__(self):
        return f"<{len(self)} diagram edges>"


class _VertexView(Sequence):
    def __init__(self, centres, groups, triangles):
        self._c, self._g, self._t = centres, groups, triangles
        self._cache: dict[int, FpvdVertex] = {}

    def __len__(self):
        return len(self._c)

    def __getitem__(self, k):
        if isinstance(k, slice):
            return [self[i] for i in range(*k.indices(len(self)))]
        k = range(len(self))[k]
        v = self._cache.get(k)
        if v is None:
            g = self._g[k]
            sites = tuple(sorted({q for t in g for q in self._t[t]}))
            v = FpvdVertex(Point(float(self._c[k, 0]), float(self._c[k, 1])), sites)
            self._cache[k] = v
        return v

    def __repr__(self):
        return f"<{len(self)} diagram vertices>"


class _RegionView(Mapping):
    """site -> Region, from CSR arrays of fan neighbours and their edge ids."""

    def __init__(self, sites, start, nbr, eid):
        self._pos = {j: k for k, j in enumerate(sites)}
        self._sites = sites
        self._start, self._nbr, self._eid = start, nbr, eid

    def __len__(self):
        return len(self._sites)

    def __iter__(self):
        return iter(self._sites)

    def __getitem__(self, j):
        k = self._pos[j]
        a, b = self._start[k], self._start[k + 1]
        e = self._eid[a:b]
        return Region(j, tuple(int(v) for v in e[e >= 0]), tuple(self._nbr[a:b].tolist()))


@dataclass(frozen=True)
class Fpvd:
    sites: tuple[int, ...]
    vertices: Sequence[FpvdVertex]
    edges: Sequence[FpvdEdge]
    regions: Mapping
    fpdt: Fpdt | None
    triangle_vertex: tuple[int, ...]
    zero_length_edges: tuple[tuple[int, int], ...]
    # packed arrays for vectorized scans
    edge_sites: np.ndarray = field(repr=False)
    edge_origin: np.ndarray = field(repr=False)
    edge_dir: np.ndarray = field(repr=False)
    edge_len: np.ndarray = field(repr=False)
    tri_sites: np.ndarray = field(repr=False)
    tri_point: np.ndarray = field(repr=False)

    @property
    def n_rays(self) -> int:
        return int(np.count_nonzero(np.isinf(self.edge_len)))

    def edges_for(self, pair) -> list[int]:
        i, j = _pair(*pair)
        es = self.edge_sites
        return np.flatnonzero((es[:, 0] == i) & (es[:, 1] == j)).tolist()


def _normalize(dx, dy) -> Point:
    dx, dy = float(dx), float(dy)
    L = math.hypot(dx, dy)
    return Point(dx / L + 0.0, dy / L + 0.0)


def _pack(sites, vertices, edges, regions, fpdt, tri_vertex, zero):
    E = len(edges)
    es = np.array([e.sites for e in edges], dtype=np.int64).reshape(E, 2)
    eo = np.array([e.origin for e in edges], dtype=float).reshape(E, 2)
    ed = np.array([e.direction for e in edges], dtype=float).reshape(E, 2)
    el = np.array([e.length for e in edges], dtype=float).reshape(E)
    if fpdt is not None:
        ts = np.array(fpdt.triangles, dtype=np.int64).reshape(-1, 3)
        tp = np.array([vertices[v].point for v in tri_vertex], dtype=float).reshape(-1, 2)
    else:
        ts = np.zeros((0, 3), dtype=np.int64)
        tp = np.zeros((0, 2))
    for a in (es, eo, ed, el, ts, tp):
        a.setflags(write=False)
    return Fpvd(tuple(sites), tuple(vertices), tuple(edges), regions, fpdt,
                tuple(tri_vertex), tuple(zero), es, eo, ed, el, ts, tp)


def _fpvd_two(X: PointSet, a: int, b: int) -> Fpvd:
    pa, pb = X[a], X[b]
    mid = Point((pa.x + pb.x) / 2.0, (pa.y + pb.y) / 2.0)
    d = _normalize(-(pb.y - pa.y), pb.x - pa.x)
    pair = _pair(a, b)
    edges = [FpvdEdge(pair, mid, d, math.inf, (-1, -1)),
             FpvdEdge(pair, mid, Point(-d.x, -d.y), math.inf, (-1, -1))]
    regions = {a: Region(a, (0, 1), (b,)), b: Region(b, (0, 1), (a,))}
    return _pack((a, b), [], edges, regions, None, [], [])


def build_fpvd(X, seed: int = 0) -> Fpvd:
    """Farthest-point Voronoi diagram, derived from the triangulation by duality."""
    X = as_pointset(X)
    hull = convex_hull(X)
    if len(hull.vertices) == 1:
        raise SingletonInput("farthest-point diagram needs two distinct points")
    if len(hull.vertices) == 2:
        return _fpvd_two(X, *hull.vertices)

    D = _build_fpdt(X, hull, seed)
    C = X.coords
    T = np.asarray(D.triangles, dtype=np.int64).reshape(-1, 3)
    tgroup = np.asarray(D.triangle_group, dtype=np.int64)

    # one vertex per cocircular group, at the circumcentre of its first triangle
    # (same arithmetic as circumcircle())
    first = np.array([g[0] for g in D.groups], dtype=np.int64)
    A = C[T[first, 0]]
    bx, by = (C[T[first, 1]] - A).T
    cx, cy = (C[T[first, 2]] - A).T
    d = 2.0 * (bx * cy - by * cx)
    b2, c2 = bx * bx + by * by, cx * cx + cy * cy
    centres = np.column_stack([A[:, 0] + (cy * b2 - by * c2) / d,
                               A[:, 1] + (bx * c2 - cx * b2) / d])
    vertices = _VertexView(centres, D.groups, D.triangles)

    # directed triangle edges u -> v
    us = np.concatenate([T[:, 0], T[:, 1], T[:, 2]])
    vs = np.concatenate([T[:, 1], T[:, 2], T[:, 0]])
    tid = np.tile(np.arange(len(T)), 3)
    lo, hi = np.minimum(us, vs), np.maximum(us, vs)
    key = lo * X.n + hi
    order = np.lexsort((us > vs, key))
    ks = key[order]
    head = np.flatnonzero(np.r_[True, ks[1:] != ks[:-1]])
    twin = np.r_[head[1:], len(ks)] - head == 2
    h_ = order[head]
    t_ = order[np.minimum(head + 1, len(ks) - 1)]
    va = tgroup[tid[h_]]
    vb = np.where(twin, tgroup[tid[t_]], -1)
    zero_mask = twin & (va == vb)
    keep = ~zero_mask
    zero = [(int(p), int(q)) for p, q in zip(lo[h_][zero_mask], hi[h_][zero_mask])]

    h_, va, vb, twin = h_[keep], va[keep], vb[keep], twin[keep]
    u, v = us[h_], vs[h_]
    nx, ny = -(C[v, 1] - C[u, 1]), C[v, 0] - C[u, 0]
    nl = np.hypot(nx, ny)
    nx, ny = nx / nl + 0.0, ny / nl + 0.0
    pa = centres[va]
    pb = np.where(twin[:, None], centres[np.maximum(vb, 0)], pa)
    gap = pb - pa
    # bounded edges run from va to vb; rays keep the inward hull normal
    flip = twin & (nx * gap[:, 0] + ny * gap[:, 1] < 0.0)
    nx, ny = np.where(flip, -nx, nx) + 0.0, np.where(flip, -ny, ny) + 0.0
    length = np.where(twin, np.hypot(gap[:, 0], gap[:, 1]), math.inf)
    es = np.column_stack([lo[h_], hi[h_]])
    eo = pa
    ed = np.column_stack([nx, ny])
    ends = np.column_stack([va, vb])
    edges = _EdgeView(es, eo, ed, length, ends)

    # fan of each site: on a convex polygon, the triangulation neighbours of
    # x_j in CCW order are sorted by their polygon offset from j
    h = len(D.sites)
    pos = np.full(X.n, -1, dtype=np.int64)
    pos[np.asarray(D.sites)] = np.arange(h)
    prv = np.asarray(D.sites)[(np.arange(h) - 1) % h]
    fu = np.concatenate([us, np.asarray(D.sites)])
    fv = np.concatenate([vs, prv])
    off = (pos[fv] - pos[fu]) % h
    order = np.lexsort((off, pos[fu]))
    fu, fv = fu[order], fv[order]
    fpos = pos[fu]
    start = np.searchsorted(fpos, np.arange(h + 1))
    # edge id of each fan pair (-1 for zero-length diagonals)
    ekey = es[:, 0] * X.n + es[:, 1]
    fkey = np.minimum(fu, fv) * X.n + np.maximum(fu, fv)
    at = np.minimum(np.searchsorted(ekey, fkey), max(len(ekey) - 1, 0))
    eid = np.where(ekey[at] == fkey, at, -1)
    regions = _RegionView(tuple(D.sites), start, fv, eid)

    ts = T.copy()
    tp = centres[tgroup]
    for arr in (es, eo, ed, length, ts, tp, ends, start, fv, eid):
        arr.setflags(write=False)
    return Fpvd(tuple(D.sites), vertices, edges, regions, D,
                tuple(tgroup.tolist()), tuple(sorted(zero)), es, eo, ed, length, ts, tp)


# ---------------------------------------------------------------- bijection

@dataclass(frozen=True)
class FaceBijection:
    """Pairs b-faces of the triangulation with (2-b)-faces of the diagram.

    Triangulation faces are ``('site', j)``, ``('edge', (i, j))`` and
    ``('triangle', (i, j, k))``; their duals are ``('region', j)``,
    ``('edge', (i, j))`` and ``('vertex', (i, j, k))`` (index tuples sorted).
    A diagram edge key resolves to zero, one or two entries of ``fpvd.edges``;
    zero means a zero-length edge inside a cocircular vertex.
    """

    fpvd: Fpvd
    d_to_v: dict
    v_to_d: dict

    def pairs(self, b: int | None = None):
        kinds = {0: "site", 1: "edge", 2: "triangle"}
        return [(d, v) for d, v in self.d_to_v.items()
                if b is None or d[0] == kinds[b]]

    def geometry(self, v_face):
        """Concrete diagram object(s) of a diagram face key."""
        kind, key = v_face
        if v_face not in self.v_to_d:
            raise UnknownFace(v_face)
        F = self.fpvd
        if kind == "region":
            return F.regions[key]
        if kind == "edge":
            return [F.edges[k] for k in F.edges_for(key)]
        tri_id = [tuple(sorted(tt)) for tt in F.fpdt.triangles].index(key)
        return F.vertices[F.triangle_vertex[tri_id]]


def face_bijection(fpvd: Fpvd) -> FaceBijection:
    d2v = {}
    for j in fpvd.sites:
        d2v[("site", j)] = ("region", j)
    if fpvd.fpdt is None:
        d2v[("edge", fpvd.edges[0].sites)] = ("edge", fpvd.edges[0].sites)
    else:
        for e in fpvd.fpdt.edges:
            d2v[("edge", e)] = ("edge", e)
        for t in fpvd.fpdt.triangles:
            key = tuple(sorted(t))
            d2v[("triangle", key)] = ("vertex", key)
    v2d = {v: d for d, v in d2v.items()}
    return FaceBijection(fpvd, d2v, v2d)


def dual_face(bij: FaceBijection, face, inverse: bool = False):
    """Dual of a face; ``inverse=True`` maps diagram faces back."""
    table = bij.v_to_d if inverse else bij.d_to_v
    kind, key = face
    if isinstance(key, (tuple, list)):
        key = tuple(sorted(int(k) for k in key))
    try:
        return table[(kind, key)]
    except KeyError:
        raise UnknownFace(face) from None


# ---------------------------------------------------------------- queries

def locate_farthest(X, s, rel_tol: float = 1e-12) -> tuple[int, ...]:
    """All indices whose distance to s is within ``rel_tol`` of the maximum."""
    c = as_pointset(X).coords
    d = np.hypot(c[:, 0] - s[0], c[:, 1] - s[1])
    m = d.max()
    return tuple(int(i) for i in np.flatnonzero(d >= m * (1.0 - rel_tol)))


def locate_regions(fpvd: Fpvd, X, S, rel_tol: float = 1e-12) -> np.ndarray:
    """Site whose region contains each probe, using only diagram neighbours.

    s lies in V(x_j) iff it is at least as far from x_j as from every site
    across a boundary edge of that (convex) region.
    """
    C = as_pointset(X).coords
    S = np.atleast_2d(np.asarray(S, dtype=float))
    out = np.full(len(S), -1, dtype=np.int64)
    todo = np.ones(len(S), dtype=bool)
    for j in fpvd.sites:
        dj = ((S - C[j]) ** 2).sum(axis=1)
        ok = todo.copy()
        for k in fpvd.regions[j].neighbours:
            dk = ((S - C[k]) ** 2).sum(axis=1)
            ok &= dj >= dk * (1.0 - rel_tol)
        out[ok] = j
        todo &= ~ok
        if not todo.any():
            break
    return out


def locate_region(fpvd: Fpvd, X, s) -> int:
    return int(locate_regions(fpvd, X, [s])[0])


def in_region(fpvd: Fpvd, X, j: int, s, rel_tol: float = 1e-12) -> bool:
    C = as_pointset(X).coords
    dj = (s[0] - C[j, 0]) ** 2 + (s[1] - C[j, 1]) ** 2
    for k in fpvd.regions[j].neighbours:
        dk = (s[0] - C[k, 0]) ** 2 + (s[1] - C[k, 1]) ** 2
        if dj < dk * (1.0 - rel_tol):
            return False
    return True


# ---------------------------------------------------------------- dumps

def fpvd_to_dict(fpvd: Fpvd) -> dict:
    return {
        "sites": list(fpvd.sites),
        "vertices": [{"point": list(v.point), "sites": list(v.sites)}
                     for v in fpvd.vertices],
        "edges": [{"sites": list(e.sites), "kind": e.kind,
                   "origin": list(e.origin), "direction": list(e.direction),
                   "length": None if math.isinf(e.length) else e.length,
                   "ends": list(e.ends)} for e in fpvd.edges],
        "zero_length_edges": [list(p) for p in fpvd.zero_length_edges],
    }


def fpdt_to_dict(fpdt: Fpdt | None) -> dict:
    if fpdt is None:
        return {"triangles": [], "edges": [], "groups": [], "tie_break": None}
    return {
        "triangles": [list(t) for t in fpdt.triangles],
        "edges": [list(e) for e in fpdt.edges],
        "groups": [list(g) for g in fpdt.groups],
        "tie_break": fpdt.tie_break,
    }


def dump_structures(X, fpvd: Fpvd) -> dict:
    """JSON-ready debug dump of the diagram and its triangulation."""
    X = as_pointset(X)
    out = {"points": X.coords.tolist(), "fpvd": fpvd_to_dict(fpvd),
           "fpdt": fpdt_to_dict(fpvd.fpdt)}
    if fpvd.fpdt is None:
        out["fpdt"]["edges"] = [list(fpvd.edges[0].sites)]
    return out
