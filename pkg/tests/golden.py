"""Frozen reference values. ``test_golden.py`` recomputes each one by brute force."""

from fractions import Fraction as F

COLLINEAR = [(0.0, 0.0), (1.0, 0.0), (4.0, 0.0)]
COLLINEAR_S = (2.0, 0.0)
COLLINEAR_P = 13
COLLINEAR_LAMBDA = {0: F(1, 4), 2: F(3, 4)}
COLLINEAR_M = F(5, 3)
COLLINEAR_MJ = [F(5, 4), F(3, 2), F(9, 4)]
COLLINEAR_PM = F(127, 9)
COLLINEAR_RHO = F(127, 9) / 13
COLLINEAR_BOUND = F(34, 27)

CLUSTER = [(0.0, 0.0), (0.1, 0.0), (-0.1, 0.0), (10.0, 0.0)]
CLUSTER_S = (4.0, 0.0)
CLUSTER_C = (4.95, 0.0)

PAIR = [(-1.0, 0.0), (1.0, 0.0)]
PAIR_MJ = [F(-1, 3), F(1, 3)]
PAIR_BOUND = F(1, 3) * F(9, 4) + F(2, 3)

SQUARE = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]
SQUARE_S = (0.5, 0.5)

EQUILATERAL = [(1.0, 0.0), (-0.5, 3 ** 0.5 / 2), (-0.5, -(3 ** 0.5) / 2)]

BOUND_N2 = F(1, 2) * F(9, 4) + F(1, 2)          # 1.625
BOUND_N100 = F(1, 2) * F(101, 100) ** 2 + F(1, 2)  # 1.01005
