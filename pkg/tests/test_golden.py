"""Recompute every frozen reference value by brute force."""

from fractions import Fraction as F

import numpy as np
import pytest

import golden as G
from oracles import brute_mec, brute_min_p2, p2


def _p2_line(xs, t):
    d = [(t - x) ** 2 for x in xs]
    return sum(d) + max(d)


def _ternary(f, lo, hi, iters=200):
    for _ in range(iters):
        a, b = lo + (hi - lo) / 3, hi - (hi - lo) / 3
        if f(a) < f(b):
            hi = b
        else:
            lo = a
    return (lo + hi) / 2


def test_collinear_optimum_by_exact_line_search():
    xs = [F(0), F(1), F(4)]
    # on the x-axis the objective is piecewise quadratic; left and right
    # one-sided slopes at t=2 are 8t-18 < 0 and 8t-10 > 0
    t = F(2)
    h = F(1, 10**9)
    assert _p2_line(xs, t) == G.COLLINEAR_P
    assert _p2_line(xs, t - h) > G.COLLINEAR_P and _p2_line(xs, t + h) > G.COLLINEAR_P
    assert abs(_ternary(lambda u: _p2_line([0, 1, 4], u), -1, 5) - 2.0) < 1e-9
    s = brute_min_p2(G.COLLINEAR)
    assert np.allclose(s, G.COLLINEAR_S, atol=1e-6)


def test_collinear_centroids_and_ratio():
    xs = [F(0), F(1), F(4)]
    M = sum(xs) / 3
    assert M == G.COLLINEAR_M
    assert [(x + sum(xs)) / 4 for x in xs] == G.COLLINEAR_MJ
    assert _p2_line(xs, M) == G.COLLINEAR_PM
    assert G.COLLINEAR_PM / G.COLLINEAR_P == G.COLLINEAR_RHO
    # two equal longest edges (k=2), n=3
    assert F(1, 3) * F(16, 9) + F(2, 3) == G.COLLINEAR_BOUND


def test_collinear_multipliers_solve_linear_system():
    # s = l0*M_0 + l2*M_2 with l0 + l2 = 1 on the x-axis
    M0, M2 = G.COLLINEAR_MJ[0], G.COLLINEAR_MJ[2]
    l2 = (2 - M0) / (M2 - M0)
    assert {0: 1 - l2, 2: l2} == G.COLLINEAR_LAMBDA


def test_cluster_optimum_by_stationarity():
    # with (10,0) farthest the objective is t^2+(t-.1)^2+(t+.1)^2+2(t-10)^2
    # derivative 2t + 2(t - 1/10) + 2(t + 1/10) + 4(t - 10) = 10t - 40
    t = F(40, 10)
    assert t == 4
    xs = [F(0), F(1, 10), F(-1, 10), F(10)]
    d = [(t - x) ** 2 for x in xs]
    assert max(d) == (t - 10) ** 2  # (10,0) really is the farthest node
    assert abs(_ternary(lambda u: _p2_line([0, 0.1, -0.1, 10], u), -1, 11) - 4.0) < 1e-6
    assert np.allclose(brute_min_p2(G.CLUSTER), G.CLUSTER_S, atol=1e-6)
    c, r = brute_mec(G.CLUSTER)
    assert np.allclose(c, G.CLUSTER_C) and r == pytest.approx(5.05)


def test_pair_and_bounds():
    assert [(x + 0) / 3 for x in (F(-1), F(1))] == G.PAIR_MJ
    assert p2(G.PAIR, (0, 0)) == 3
    assert float(G.PAIR_BOUND) == pytest.approx(1.4166666666666667)
    assert float(G.BOUND_N2) == 1.625
    assert float(G.BOUND_N100) == pytest.approx(1.01005, abs=1e-15)


def test_symmetric_instances_by_grid():
    assert np.allclose(brute_min_p2(G.SQUARE), G.SQUARE_S, atol=1e-6)
    assert np.allclose(brute_min_p2(G.EQUILATERAL), (0, 0), atol=1e-6)
    c, r = brute_mec(G.SQUARE)
    assert np.allclose(c, G.SQUARE_S) and r == pytest.approx(2 ** 0.5 / 2)
