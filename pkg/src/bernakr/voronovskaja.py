"""Voronovskaja-limit probes.

Univariate: n (B_{n,j} f - f)(x) converges, for x in (0,1] and f with a
second derivative there, to

    (1-x)/2 [ x f''(x) - (j-1) f'(x) ].

Bivariate, for the equal-degree tensor operator B_{n,n,j}, the analogous
limit is conjectural; probes against it are labelled as such.  The scaled
residuals behave like L + c/n for smooth f, so the limit is extrapolated
from the two largest degrees (first-order Richardson).
"""

from dataclasses import dataclass, field

import numpy as np

from bernakr.calculus import BivariateFunction, ScalarFunction
from bernakr.errors import PreconditionError
from bernakr.operators import eval_akr, eval_akr_2d

__all__ = [
    "DEFAULT_DEGREES_1D",
    "DEFAULT_DEGREES_2D",
    "LimitProbe",
    "conjecture_probe_2d",
    "conjecture_rhs_2d",
    "vor_probe_1d",
    "vor_rhs_1d",
]

DEFAULT_DEGREES_1D = (25, 50, 100, 200, 400, 800, 1600)
DEFAULT_DEGREES_2D = (25, 50, 100, 200, 400)

# Corner points where the bivariate formula degenerates; probes reject them.
_EXCLUDED_POINTS = ((0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0))


@dataclass(frozen=True)
class LimitProbe:
    """Scaled residuals n (Op f - f) at one point against a predicted limit."""

    point: object
    degrees: tuple
    residuals: np.ndarray = field(repr=False)
    predicted: float
    extrapolated: float
    abs_dev: float
    rel_dev: float
    conjectural: bool = False


def _check_degrees(degrees, j):
    degrees = tuple(int(n) for n in degrees)
    if not degrees:
        raise PreconditionError("need at least one degree")
    if any(b <= a for a, b in zip(degrees, degrees[1:])):
        raise PreconditionError("degrees must be strictly increasing")
    if degrees[0] < j:
        raise PreconditionError(f"all degrees must be >= j={j}")
    return degrees


def _extrapolate(degrees, residuals):
    # residual ~ L + c/n: two-point elimination of the 1/n term
    if len(degrees) == 1:
        return float(residuals[-1])
    n1, n2 = degrees[-2], degrees[-1]
    r1, r2 = residuals[-2], residuals[-1]
    return float((n2 * r2 - n1 * r1) / (n2 - n1))


def _probe(point, degrees, residuals, predicted, conjectural):
    residuals = np.asarray(residuals)
    extrapolated = _extrapolate(degrees, residuals)
    abs_dev = abs(extrapolated - predicted)
    denom = abs(predicted)
    rel_dev = abs_dev / denom if denom > 0.0 else np.inf
    return LimitProbe(point, degrees, residuals, predicted, extrapolated,
                      abs_dev, rel_dev, conjectural)


def vor_rhs_1d(f: ScalarFunction, j, x):
    """(1-x)/2 [x f''(x) - (j-1) f'(x)]; stated for x in (0, 1] only."""
    x = float(x)
    if not 0.0 < x <= 1.0:
        raise PreconditionError("the univariate limit formula needs x in (0, 1]")
    return 0.5 * (1.0 - x) * (x * f.deriv2(x) - (j - 1) * f.deriv1(x))


def vor_probe_1d(f: ScalarFunction, j, x, degrees=DEFAULT_DEGREES_1D) -> LimitProbe:
    degrees = _check_degrees(degrees, j)
    x = float(x)
    fx = f(x)
    residuals = [n * (eval_akr(f, n, j, x) - fx) for n in degrees]
    return _probe(x, degrees, residuals, vor_rhs_1d(f, j, x), conjectural=False)


def conjecture_rhs_2d(f: BivariateFunction, j, x, y):
    """Conjectured limit for the equal-degree tensor AKR operator:

        x(1-x)/2 f20 - (j-1)(1-x)/2 f10  +  y(1-y)/2 f02 - (j-1)(1-y)/2 f01.
    """
    x, y = float(x), float(y)
    if (x, y) in _EXCLUDED_POINTS:
        raise PreconditionError(f"point {(x, y)} is excluded from the bivariate formula")
    u = 0.5 * x * (1.0 - x) * f.deriv20(x, y) - 0.5 * (j - 1) * (1.0 - x) * f.deriv10(x, y)
    v = 0.5 * y * (1.0 - y) * f.deriv02(x, y) - 0.5 * (j - 1) * (1.0 - y) * f.deriv01(x, y)
    return u + v


def conjecture_probe_2d(f: BivariateFunction, j, point,
                        degrees=DEFAULT_DEGREES_2D) -> LimitProbe:
    """Probe n (B_{n,n,j} f - f) at ``point``; the comparison is conjectural."""
    degrees = _check_degrees(degrees, j)
    x, y = float(point[0]), float(point[1])
    predicted = conjecture_rhs_2d(f, j, x, y)
    fxy = f(x, y)
    residuals = [n * (eval_akr_2d(f, n, n, j, x, y) - fxy) for n in degrees]
    return _probe((x, y), degrees, residuals, predicted, conjectural=True)
