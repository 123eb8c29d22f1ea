import math

import numpy as np
import pytest

import golden as G
from minpower.analysis import (FAMILIES, alpha_sweep, antipodal_instance, approx_ratio,
                               generate_target_instance, random_points, ratio_bound,
                               ratio_limit_experiment, sample_edge_target)
from minpower.errors import DegenerateInstance, NoFeasibleM, TargetNotOnDiagram
from minpower.farthest import build_fpvd
from minpower.geometry import PointSet, convex_hull, strictly_in_hull
from minpower.quadratic import solve_quadratic, two_centroids


def test_ratio_bound_values():
    assert ratio_bound(3, 2) == pytest.approx(float(G.COLLINEAR_BOUND), rel=1e-15)
    assert ratio_bound(2, 1) == pytest.approx(float(G.BOUND_N2), rel=1e-15)
    assert ratio_bound(100, 1) == pytest.approx(float(G.BOUND_N100), rel=1e-15)
    assert ratio_bound(2, 2) == pytest.approx(float(G.PAIR_BOUND), rel=1e-15)


def test_approx_ratio_examples():
    r = approx_ratio(G.COLLINEAR)
    assert r.rho == pytest.approx(float(G.COLLINEAR_RHO), abs=1e-9)
    assert (r.k, r.n) == (2, 3) and r.slack > 0
    r = approx_ratio(G.PAIR)
    assert r.rho == pytest.approx(1.0, abs=1e-15) and r.bound == pytest.approx(float(G.PAIR_BOUND))
    assert approx_ratio(G.SQUARE).rho == pytest.approx(1.0, abs=1e-15)
    with pytest.raises(DegenerateInstance):
        approx_ratio([(1, 1), (1, 1)])


def test_duplicates_count_towards_k():
    X = [(0, 0), (0, 0), (4, 0)]
    r = approx_ratio(X)
    far = np.hypot(*(np.asarray(X, float) - np.asarray(solve_quadratic(X).s_star)).T)
    assert r.k == int(np.sum(far >= far.max() * (1 - 1e-9))) == 3


def test_families_are_seeded():
    for f in FAMILIES:
        a = random_points(f, 20, 7)
        b = random_points(f, 20, 7)
        assert a.shape == (20, 2) and np.array_equal(a, b)
    with pytest.raises(ValueError):
        random_points("spiral", 5, 0)
    col = random_points("collinear", 30, 1)
    assert len(convex_hull(PointSet(col)).vertices) == 2


def test_ratio_invariants_fuzz():
    rng = np.random.default_rng(10)
    for t in range(400):
        f = FAMILIES[t % 4]
        X = PointSet(random_points(f, int(rng.integers(2, 40)), rng))
        r = approx_ratio(X)
        assert 1.0 - 1e-12 <= r.rho <= r.bound + 1e-9
        tc = two_centroids(X)
        s = solve_quadratic(X).s_star
        rad = np.hypot(*(X.coords - np.asarray(tc.M)).T).max() / (X.n + 1)
        assert math.dist(s, tc.M) <= rad + 1e-9


def test_symmetric_instances_have_unit_ratio():
    for pairs in (2, 3, 5, 9):
        X = antipodal_instance(pairs, pairs)
        assert approx_ratio(X).rho == pytest.approx(1.0, abs=1e-9)


def test_ratio_limit_experiment():
    rows = ratio_limit_experiment(0, [2, 10, 100], trials=40)
    assert [r.n for r in rows] == [2, 10, 100]
    assert rows[0].max_rho <= 1.625 and rows[-1].max_rho <= 1.01005
    assert all(r.within_bound and r.mean_rho <= r.max_rho for r in rows)
    with pytest.raises(ValueError):
        ratio_limit_experiment(0, [5, 3])


def test_generator_edge_targets():
    rng = np.random.default_rng(12)
    for t in range(10):
        X = PointSet(rng.random((int(rng.integers(3, 12)), 2)))
        if len(convex_hull(X).vertices) < 3:
            continue
        w = sample_edge_target(X, rng)
        g = generate_target_instance(X, w)
        s = solve_quadratic(g.result).s_star
        assert math.dist(s, w) <= 1e-6 * X.diameter()
        assert convex_hull(g.result).vertices == convex_hull(g.base_hull).vertices
        if g.m:
            assert strictly_in_hull(g.base_hull, convex_hull(g.base_hull), g.y)


def test_generator_bisector_example():
    # two far nodes plus a nearby third; the target sits on the bisector of the pair
    hull = [(0.0, 0.0), (4.0, 0.0), (2.0, 0.6)]
    F = build_fpvd(hull)
    e = next(e for e in F.edges if e.sites == (0, 1))
    w = None
    for u in np.linspace(0.0, 5.0, 501):
        p = e.point_at(u)
        if strictly_in_hull(PointSet(hull), convex_hull(PointSet(hull)), p):
            w = p
            break
    assert w is not None
    g = generate_target_instance(hull, w)
    assert math.dist(solve_quadratic(g.result).s_star, w) <= 1e-6 * 4


def test_generator_vertex_target():
    tri = [(0.0, 0.0), (6.0, 0.0), (2.5, 4.0)]
    v = build_fpvd(tri).vertices[0].point
    g = generate_target_instance(tri, v)
    assert math.dist(solve_quadratic(g.result).s_star, v) <= 1e-6 * 6


def test_generator_trivial_and_errors():
    tri = [(1.0, 0.0), (-0.5, 3 ** 0.5 / 2), (-0.5, -(3 ** 0.5) / 2)]
    g = generate_target_instance(tri, (0.0, 0.0))
    assert g.m == 0 and g.y is None
    with pytest.raises(TargetNotOnDiagram):
        generate_target_instance(tri, (0.3, 0.05))
    with pytest.raises(NoFeasibleM):
        generate_target_instance(tri, (5.0, 0.0))
    with pytest.raises(NoFeasibleM):
        generate_target_instance([(0, 0), (4, 0)], (2, 0))


def test_alpha_sweep():
    rows = alpha_sweep(G.SQUARE, [1.5, 2, 3, 8])
    assert all(max(r.dist_C, r.dist_s2, r.dist_M) <= 1e-7 for r in rows)
    rows = alpha_sweep(G.COLLINEAR, [2.0])
    assert rows[0].dist_C <= 1e-6 and rows[0].dist_s2 <= 1e-6
    X = np.random.default_rng(3).random((6, 2))
    a, b = alpha_sweep(X, [2.0, 32.0])
    assert b.dist_C < a.dist_C
