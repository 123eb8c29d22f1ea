"""Exception hierarchy for the minpower package."""


class MinPowerError(Exception):
    """Base class for every error raised by this package."""


class CollinearInput(MinPowerError, ValueError):
    """Three points passed to a circle construction are collinear."""


class SingletonInput(MinPowerError, ValueError):
    """The point set has a single distinct location."""


class DegenerateHull(MinPowerError, ValueError):
    """The convex hull has fewer than three extreme points."""


class UnknownFace(MinPowerError, KeyError):
    """A face identifier does not belong to the structure it was looked up in."""


class InvalidAlpha(MinPowerError, ValueError):
    """Path loss exponent outside the supported range (1, 64]."""


class NotInHull(MinPowerError, ValueError):
    """A point is not a convex combination of the given 2-centroids."""


class InconsistentResult(MinPowerError, AssertionError):
    """The |Lambda| = 1 equivalences failed for a computed solution."""


class ImplicationViolated(MinPowerError, AssertionError):
    """A structural implication relating C, M and s* failed."""


class PropositionViolated(MinPowerError, AssertionError):
    """An equidistance-based property of s*_alpha failed numerically."""


class ToleranceNotReached(MinPowerError, RuntimeError):
    """The numeric solver stopped before meeting its tolerance.

    The best point found is attached as ``solution``.
    """

    def __init__(self, message, solution=None):
        super().__init__(message)
        self.solution = solution


class NoConvergence(MinPowerError, RuntimeError):
    """The fixed-point iteration did not settle within ``max_iter`` steps."""

    def __init__(self, message, last=None):
        super().__init__(message)
        self.last = last


class DegenerateInstance(MinPowerError, ValueError):
    """All points coincide, so ratios against P(s*) = 0 are undefined."""


class TargetNotOnDiagram(MinPowerError, ValueError):
    """Target point is not on an edge or vertex of the farthest-point diagram."""


class NoFeasibleM(MinPowerError, RuntimeError):
    """No multiplicity m places the auxiliary node strictly inside the hull."""


class ParseError(MinPowerError, ValueError):
    """Malformed point file. ``line`` is 1-based, or None for whole-file errors."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class EmptyInput(MinPowerError, ValueError):
    """A point file contains no points."""


class CrossCheckFailure(MinPowerError, RuntimeError):
    """Geometric and numeric solutions disagree beyond tolerance."""
