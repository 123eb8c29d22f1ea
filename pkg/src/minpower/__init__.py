"""Quadratic min-power centre of planar point sets.

The geometric solver scans the farthest-point Voronoi diagram against the
2-centroids; a numeric oracle handles any path loss exponent 1 < alpha <= 64.
"""

from .analysis import (GeneratedInstance, RatioReport, alpha_sweep, approx_ratio,
                       generate_target_instance, ratio_bound, ratio_limit_experiment)
from . import errors
from .errors import *  # noqa: F401,F403
from .farthest import (FaceBijection, Fpdt, Fpvd, build_fpdt, build_fpvd, dual_face,
                       face_bijection, locate_farthest, locate_region)
from .geometry import (Circle, Hull, Point, PointSet, centroid, circumcircle, convex_hull,
                       incircle, min_enclosing_circle, orient)
from .oracle import (NumericSolution, ObjectiveEval, check_equidistant_props, eval_objective,
                     fixed_point_solve, is_transformed_optimum, solve_numeric, transform_X)
from .pointio import parse_points, write_points
from .quadratic import (MinPowerResult, TwoCentroidSet, classify_case, one_centre_checks, power,
                        recover_multipliers, solve_quadratic, two_centroids)
from .svg import emit_svg

__version__ = "0.1.0"

__all__ = [
    "GeneratedInstance",
    "RatioReport",
    "alpha_sweep",
    "approx_ratio",
    "generate_target_instance",
    "ratio_bound",
    "ratio_limit_experiment",
    "FaceBijection",
    "Fpdt",
    "Fpvd",
    "build_fpdt",
    "build_fpvd",
    "dual_face",
    "face_bijection",
    "locate_farthest",
    "locate_region",
    "Circle",
    "Hull",
    "Point",
    "PointSet",
    "centroid",
    "circumcircle",
    "convex_hull",
    "incircle",
    "min_enclosing_circle",
    "orient",
    "NumericSolution",
    "ObjectiveEval",
    "check_equidistant_props",
    "eval_objective",
    "fixed_point_solve",
    "is_transformed_optimum",
    "solve_numeric",
    "transform_X",
    "parse_points",
    "write_points",
    "MinPowerResult",
    "TwoCentroidSet",
    "classify_case",
    "one_centre_checks",
    "power",
    "recover_multipliers",
    "solve_quadratic",
    "two_centroids",
    "emit_svg",
] + [n for n in dir(errors) if n[0].isupper()]
