"""Function and grid types shared by every other module.

Functions are represented as evaluation channels: a value channel plus
derivative channels, each either analytic (closed form or forward-mode AD
from a parsed expression) or finite-difference-backed.  The channel origin is
recorded in ``derivative_mode`` so consumers can pick tolerances.
"""

import math
from dataclasses import dataclass

import numpy as np

from bernakr.calculus import expr as _expr
from bernakr.calculus.dual import Dual2
from bernakr.calculus.quadrature import finite_diff_1, finite_diff_2
from bernakr.errors import DomainEvalError, PreconditionError

ANALYTIC = "analytic"
FINITE_DIFF = "finite-difference"

_FD1_STEP = 1e-5
_FD2_STEP = 1e-4


def _finite(v, what):
    v = float(v)
    if not math.isfinite(v):
        raise DomainEvalError(f"{what} evaluated to a non-finite value")
    return v


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid on [0,1] (dim 1) or [0,1]^2 (dim 2), endpoints included."""

    resolution: int
    dim: int = 1

    def __post_init__(self):
        if self.resolution < 2:
            raise PreconditionError("grid resolution must be at least 2")
        if self.dim not in (1, 2):
            raise PreconditionError("grid dim must be 1 or 2")

    def points(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.resolution)

    def axes(self):
        pts = self.points()
        if self.dim == 1:
            return (pts,)
        return pts, pts


@dataclass(frozen=True)
class ScalarFunction:
    """Real function on [0,1] with value and first/second derivative channels."""

    value: callable
    d1: callable = None
    d2: callable = None
    derivative_mode: str = ANALYTIC
    name: str = ""

    def __call__(self, x):
        return _finite(self.value(x), self.name or "function")

    def deriv1(self, x):
        if self.d1 is None:
            raise PreconditionError("first-derivative channel unavailable")
        return _finite(self.d1(x), "f'")

    def deriv2(self, x):
        if self.d2 is None:
            raise PreconditionError("second-derivative channel unavailable")
        return _finite(self.d2(x), "f''")

    @staticmethod
    def from_callables(value, d1=None, d2=None, name="", fd_fallback=True):
        """Wrap plain callables; missing derivatives fall back to central
        differences (one-sided at the interval endpoints) unless disabled."""
        mode = ANALYTIC if (d1 is not None and d2 is not None) else FINITE_DIFF
        if d1 is None and fd_fallback:
            d1 = lambda x: finite_diff_1(value, x, _FD1_STEP)
        if d2 is None and fd_fallback:
            d2 = lambda x: finite_diff_2(value, x, _FD2_STEP)
        return ScalarFunction(value, d1, d2, mode, name)

    @staticmethod
    def from_ast(ast, finite_diff=False, name=""):
        def value(x):
            return _expr.eval_value(ast, {"x": float(x)})

        if finite_diff:
            return ScalarFunction.from_callables(value, name=name)

        unknown = _expr.variables_of(ast) - {"x"}
        if unknown:
            raise PreconditionError(f"expression uses unknown variables {sorted(unknown)}")
        # one-slot memo so d1 and d2 at the same x share a single AD pass;
        # written as one atomic slot assignment to stay safe under threads
        cache = [None]

        def dual_at(x):
            x = float(x)
            entry = cache[0]
            if entry is None or entry[0] != x:
                entry = (x, _expr._eval_dual(ast, {"x": Dual2.variable(x)}))
                cache[0] = entry
            return entry[1]

        return ScalarFunction(
            value, lambda x: dual_at(x).d1, lambda x: dual_at(x).d2, ANALYTIC, name
        )

    @staticmethod
    def from_expression(src, finite_diff=False, name=None):
        ast = _expr.parse_expression(src, ("x",))
        return ScalarFunction.from_ast(
            ast, finite_diff=finite_diff, name=src if name is None else name
        )


@dataclass(frozen=True)
class BivariateFunction:
    """Real function on [0,1]^2 with partial channels up to order (2,2).

    The order-(2,2) mixed channel is hybrid by default: a second central
    difference in y (step 1e-4) applied to the (2,0) channel, since
    second-order forward AD cannot reach fourth-order mixed derivatives.
    """

    value: callable
    d10: callable = None
    d01: callable = None
    d20: callable = None
    d02: callable = None
    d22: callable = None
    derivative_mode: str = ANALYTIC
    name: str = ""

    def __call__(self, x, y):
        return _finite(self.value(x, y), self.name or "function")

    def _channel(self, ch, label, x, y):
        if ch is None:
            raise PreconditionError(f"{label} channel unavailable")
        return _finite(ch(x, y), label)

    def deriv10(self, x, y):
        return self._channel(self.d10, "f^(1,0)", x, y)

    def deriv01(self, x, y):
        return self._channel(self.d01, "f^(0,1)", x, y)

    def deriv20(self, x, y):
        return self._channel(self.d20, "f^(2,0)", x, y)

    def deriv02(self, x, y):
        return self._channel(self.d02, "f^(0,2)", x, y)

    def deriv22(self, x, y):
        return self._channel(self.d22, "f^(2,2)", x, y)

    def slice_x(self, y):
        """The univariate slice t -> f(t, y) with matching channels."""
        y = float(y)
        return ScalarFunction(
            lambda t: self.value(t, y),
            (lambda t: self.d10(t, y)) if self.d10 else None,
            (lambda t: self.d20(t, y)) if self.d20 else None,
            self.derivative_mode,
            f"{self.name}(.,{y:g})",
        )

    def slice_y(self, x):
        x = float(x)
        return ScalarFunction(
            lambda t: self.value(x, t),
            (lambda t: self.d01(x, t)) if self.d01 else None,
            (lambda t: self.d02(x, t)) if self.d02 else None,
            self.derivative_mode,
            f"{self.name}({x:g},.)",
        )

    @staticmethod
    def from_callables(value, d10=None, d01=None, d20=None, d02=None, d22=None,
                       name="", fd_fallback=True):
        analytic = all(ch is not None for ch in (d10, d01, d20, d02))
        mode = ANALYTIC if analytic else FINITE_DIFF
        if fd_fallback:
            if d10 is None:
                d10 = lambda x, y: finite_diff_1(lambda t: value(t, y), x, _FD1_STEP)
            if d01 is None:
                d01 = lambda x, y: finite_diff_1(lambda t: value(x, t), y, _FD1_STEP)
            if d20 is None:
                d20 = lambda x, y: finite_diff_2(lambda t: value(t, y), x, _FD2_STEP)
            if d02 is None:
                d02 = lambda x, y: finite_diff_2(lambda t: value(x, t), y, _FD2_STEP)
        if d22 is None and d20 is not None:
            d20_ch = d20
            d22 = lambda x, y: finite_diff_2(lambda t: d20_ch(x, t), y, _FD2_STEP)
        return BivariateFunction(value, d10, d01, d20, d02, d22, mode, name)

    @staticmethod
    def from_ast(ast, finite_diff=False, name=""):
        def value(x, y):
            return _expr.eval_value(ast, {"x": float(x), "y": float(y)})

        if finite_diff:
            return BivariateFunction.from_callables(value, name=name)

        unknown = _expr.variables_of(ast) - {"x", "y"}
        if unknown:
            raise PreconditionError(f"expression uses unknown variables {sorted(unknown)}")

        cache_x = [None]
        cache_y = [None]

        def dual_x(x, y):
            key = (float(x), float(y))
            entry = cache_x[0]
            if entry is None or entry[0] != key:
                entry = (key, _expr._eval_dual(
                    ast, {"x": Dual2.variable(key[0]), "y": Dual2.constant(key[1])}
                ))
                cache_x[0] = entry
            return entry[1]

        def dual_y(x, y):
            key = (float(x), float(y))
            entry = cache_y[0]
            if entry is None or entry[0] != key:
                entry = (key, _expr._eval_dual(
                    ast, {"x": Dual2.constant(key[0]), "y": Dual2.variable(key[1])}
                ))
                cache_y[0] = entry
            return entry[1]

        d20 = lambda x, y: dual_x(x, y).d2
        return BivariateFunction(
            value,
            lambda x, y: dual_x(x, y).d1,
            lambda x, y: dual_y(x, y).d1,
            d20,
            lambda x, y: dual_y(x, y).d2,
            lambda x, y: finite_diff_2(lambda t: d20(x, t), y, _FD2_STEP),
            ANALYTIC,
            name,
        )

    @staticmethod
    def from_expression(src, finite_diff=False, name=None):
        ast = _expr.parse_expression(src, ("x", "y"))
        return BivariateFunction.from_ast(
            ast, finite_diff=finite_diff, name=src if name is None else name
        )


def sample_channel(fn, grid: GridSpec) -> np.ndarray:
    """Evaluate a scalar channel over the grid: vector (dim 1), matrix (dim 2)."""
    if grid.dim == 1:
        pts = grid.points()
        return np.array([fn(x) for x in pts.tolist()])
    xs, ys = grid.axes()
    ys_l = ys.tolist()
    return np.array([[fn(x, y) for y in ys_l] for x in xs.tolist()])
