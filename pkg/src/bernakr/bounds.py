"""Closed-form error bounds and bound-vs-measurement verification.

Bound inventory (sup norms of derivative channels throughout):

* ``bernstein-1d``     |f - B_n f|        <= x(1-x)/(2n) ||f''||
* ``bivariate-old``    |f - B_{n,m} f|    <= (3/2)[x(1-x)/n ||f20|| + y(1-y)/m ||f02||]
* ``bivariate-mixed``  adds x(1-x)y(1-y)/(4nm) ||f22|| to the halved axis terms
* ``bivariate-new``    (1/2)[x(1-x)/n ||f20|| + y(1-y)/m ||f02||]
* ``akr-diff``         |B_n f - B_{n,j} f| <= omega_1(f, (j-1)/n) <= (j-1)/n ||f'||
* ``akr-1d``           |f - B_{n,j} f|    <= x(1-x)/(2n) ||f''|| + (j-1)/n ||f'||
* ``akr-2d``           axis terms of akr-1d in x and y combined

Derivative sup norms are grid maxima, not rigorous bounds; reports carry the
grid used so an under-estimate is attributable.
"""

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from bernakr.calculus import BivariateFunction, GridSpec, ScalarFunction, sample_channel
from bernakr.errors import PreconditionError
from bernakr.operators import OperatorSpec, operator_grid

__all__ = [
    "BOUND_KINDS",
    "AkrDiffBound",
    "BoundReport",
    "DerivativeNorms",
    "bound_akr_1d",
    "bound_akr_2d",
    "bound_akr_diff",
    "bound_bernstein_1d",
    "bound_bivariate_mixed",
    "bound_bivariate_new",
    "bound_bivariate_old",
    "compute_modulus",
    "estimate_derivative_norms",
    "verify_bound",
]

BOUND_KINDS = (
    "bernstein-1d",
    "bivariate-old",
    "bivariate-mixed",
    "bivariate-new",
    "akr-diff",
    "akr-1d",
    "akr-2d",
)

DEFAULT_NORM_GRID_1D = GridSpec(1001)
DEFAULT_NORM_GRID_2D = GridSpec(201, 2)


@dataclass(frozen=True)
class DerivativeNorms:
    """Grid maxima of |derivative channels|; 1-D uses d1/d2, 2-D the partials."""

    dim: int
    grid: GridSpec
    d1: float = None
    d2: float = None
    d10: float = None
    d01: float = None
    d20: float = None
    d02: float = None
    d22: float = None


def estimate_derivative_norms(f, grid=None) -> DerivativeNorms:
    if isinstance(f, ScalarFunction):
        grid = grid or DEFAULT_NORM_GRID_1D
        pts = grid.points().tolist()
        return DerivativeNorms(
            dim=1,
            grid=grid,
            d1=max(abs(f.deriv1(x)) for x in pts),
            d2=max(abs(f.deriv2(x)) for x in pts),
        )
    if isinstance(f, BivariateFunction):
        grid = grid or DEFAULT_NORM_GRID_2D
        xs, ys = grid.axes()
        pairs = [(x, y) for x in xs.tolist() for y in ys.tolist()]
        return DerivativeNorms(
            dim=2,
            grid=grid,
            d10=max(abs(f.deriv10(x, y)) for x, y in pairs),
            d01=max(abs(f.deriv01(x, y)) for x, y in pairs),
            d20=max(abs(f.deriv20(x, y)) for x, y in pairs),
            d02=max(abs(f.deriv02(x, y)) for x, y in pairs),
            d22=max(abs(f.deriv22(x, y)) for x, y in pairs),
        )
    raise PreconditionError(f"cannot estimate norms of {type(f).__name__}")


def bound_bernstein_1d(x, n, norms: DerivativeNorms):
    return 0.5 * norms.d2 * x * (1.0 - x) / n


def bound_bivariate_old(x, y, n, m, norms: DerivativeNorms):
    return 1.5 * (x * (1.0 - x) / n * norms.d20 + y * (1.0 - y) / m * norms.d02)


def bound_bivariate_mixed(x, y, n, m, norms: DerivativeNorms):
    return (
        x * (1.0 - x) / (2.0 * n) * norms.d20
        + y * (1.0 - y) / (2.0 * m) * norms.d02
        + x * (1.0 - x) * y * (1.0 - y) / (4.0 * n * m) * norms.d22
    )


def bound_bivariate_new(x, y, n, m, norms: DerivativeNorms):
    return 0.5 * (x * (1.0 - x) / n * norms.d20 + y * (1.0 - y) / m * norms.d02)


class AkrDiffBound(NamedTuple):
    """Both forms of the Bernstein-vs-AKR difference bound; the modulus form
    is None when no modulus value was supplied."""

    modulus_bound: float
    derivative_bound: float


def bound_akr_diff(n, j, deriv_sup=None, modulus=None) -> AkrDiffBound:
    if n < j:
        raise PreconditionError(f"need n >= j, got n={n}, j={j}")
    if deriv_sup is None and modulus is None:
        raise PreconditionError("need a derivative sup norm or a modulus value")
    deriv_bound = None if deriv_sup is None else (j - 1) / n * deriv_sup
    return AkrDiffBound(modulus, deriv_bound)


def bound_akr_1d(x, n, j, norms: DerivativeNorms):
    return x * (1.0 - x) / (2.0 * n) * norms.d2 + (j - 1) / n * norms.d1


def bound_akr_2d(x, y, n, m, j, norms: DerivativeNorms):
    return (
        x * (1.0 - x) / (2.0 * n) * norms.d20
        + y * (1.0 - y) / (2.0 * m) * norms.d02
        + (j - 1) / n * norms.d10
        + (j - 1) / m * norms.d01
    )


def compute_modulus(f: ScalarFunction, delta, grid=GridSpec(1001)):
    """omega_1(f, delta) over the grid: max |f(u)-f(v)| with |u-v| <= delta.

    Sliding-window scan over index offsets, O(N * window); exact on the grid.
    """
    delta = float(delta)
    if not 0.0 < delta <= 1.0:
        raise PreconditionError("need 0 < delta <= 1")
    vals = np.asarray(sample_channel(f, grid))
    h = 1.0 / (grid.resolution - 1)
    window = min(int(delta / h + 1e-12), grid.resolution - 1)
    best = 0.0
    for d in range(1, window + 1):
        gap = float(np.max(np.abs(vals[d:] - vals[:-d])))
        if gap > best:
            best = gap
    return best


@dataclass(frozen=True)
class BoundReport:
    """Pointwise bound vs measured error over a grid.

    ``max_slack`` is the minimum over the grid of (bound - error): the
    tightest the bound gets.  ``violated`` means the bound failed beyond
    rounding tolerance somewhere.
    """

    bound_kind: str
    spec: OperatorSpec
    grid: GridSpec
    bound_values: np.ndarray = field(repr=False)
    errors: np.ndarray = field(repr=False)
    max_slack: float
    violated: bool
    norms: DerivativeNorms = None
    extras: dict = field(default_factory=dict)

    @property
    def max_bound(self):
        return float(np.max(self.bound_values))

    @property
    def max_error(self):
        return float(np.max(self.errors))


_KIND_REQUIRES = {
    "bernstein-1d": ("bernstein", False),
    "bivariate-old": ("bernstein", True),
    "bivariate-mixed": ("bernstein", True),
    "bivariate-new": ("bernstein", True),
    "akr-diff": ("akr", False),
    "akr-1d": ("akr", False),
    "akr-2d": ("akr", True),
}


def verify_bound(f, spec: OperatorSpec, bound_kind, grid=None, norm_grid=None,
                 norms=None) -> BoundReport:
    """Measure |f - (operator) f| over the grid and compare against the bound.

    For ``akr-diff`` the measured quantity is |B_n f - B_{n,j} f| and the
    checked bound is the derivative form; the grid modulus omega_1(f,(j-1)/n)
    is reported alongside in ``extras``.  Pass precomputed ``norms`` to reuse
    derivative sup norms across several bounds for the same function.
    """
    if bound_kind not in _KIND_REQUIRES:
        raise PreconditionError(f"unknown bound kind {bound_kind!r}; choose from {BOUND_KINDS}")
    want_kind, want_bi = _KIND_REQUIRES[bound_kind]
    if spec.kind != want_kind or spec.bivariate != want_bi:
        raise PreconditionError(
            f"bound {bound_kind!r} needs a {'bivariate' if want_bi else 'univariate'} "
            f"{want_kind} operator spec, got {spec}"
        )
    if grid is None:
        grid = GridSpec(201, 2) if spec.bivariate else GridSpec(1001)
    if norms is None:
        norms = estimate_derivative_norms(f, norm_grid)
    extras = {}

    if spec.bivariate:
        xs, ys = grid.axes()
        target = sample_channel(f, grid)
        op = operator_grid(f, spec, xs, ys)
        errors = np.abs(op - target)
        xg = xs[:, None]
        yg = ys[None, :]
        if bound_kind == "bivariate-old":
            bound = bound_bivariate_old(xg, yg, spec.n, spec.m, norms)
        elif bound_kind == "bivariate-mixed":
            bound = bound_bivariate_mixed(xg, yg, spec.n, spec.m, norms)
        elif bound_kind == "bivariate-new":
            bound = bound_bivariate_new(xg, yg, spec.n, spec.m, norms)
        else:
            bound = bound_akr_2d(xg, yg, spec.n, spec.m, spec.j, norms)
        bound = np.broadcast_to(bound, errors.shape).copy()
    else:
        xs = grid.points()
        target = sample_channel(f, grid)
        if bound_kind == "akr-diff":
            bern = operator_grid(f, OperatorSpec("bernstein", spec.n), xs)
            akr = operator_grid(f, spec, xs)
            errors = np.abs(bern - akr)
            delta = (spec.j - 1) / spec.n
            both = bound_akr_diff(spec.n, spec.j, deriv_sup=norms.d1,
                                  modulus=compute_modulus(f, delta, grid))
            extras["modulus_bound"] = both.modulus_bound
            bound = np.full_like(errors, both.derivative_bound)
        else:
            op = operator_grid(f, spec, xs)
            errors = np.abs(op - target)
            if bound_kind == "bernstein-1d":
                bound = bound_bernstein_1d(xs, spec.n, norms)
            else:
                bound = bound_akr_1d(xs, spec.n, spec.j, norms)

    slack = float(np.min(bound - errors))
    violated = slack < -1e-9 * (1.0 + float(np.max(bound)))
    return BoundReport(bound_kind, spec, grid, bound, errors, slack, violated,
                       norms, extras)
