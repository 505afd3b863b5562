"""Adaptive Simpson quadrature with Richardson error control."""

from bernakr.errors import PreconditionError, QuadratureError

DEFAULT_TOL = 1e-10
MAX_DEPTH = 40


def _simpson(f, a, fa, b, fb):
    m = 0.5 * (a + b)
    fm = f(m)
    return m, fm, abs(b - a) / 6.0 * (fa + 4.0 * fm + fb)


def _adapt(f, a, fa, b, fb, tol, whole, m, fm, depth):
    lm, flm, left = _simpson(f, a, fa, m, fm)
    rm, frm, right = _simpson(f, m, fm, b, fb)
    delta = left + right - whole
    # |S_fine - S_coarse| / 15 estimates the fine-rule error (Richardson)
    if abs(delta) <= 15.0 * tol:
        return left + right + delta / 15.0
    if depth <= 0:
        raise QuadratureError(
            f"adaptive Simpson did not converge on [{a:g}, {b:g}]"
            " (non-smooth or singular integrand?)"
        )
    half = 0.5 * tol
    return _adapt(f, a, fa, m, fm, half, left, lm, flm, depth - 1) + _adapt(
        f, m, fm, b, fb, half, right, rm, frm, depth - 1
    )


def integrate_1d(f, a, b, tol=DEFAULT_TOL):
    """Integral of ``f`` over [a, b] within ``tol`` for smooth integrands."""
    a, b = float(a), float(b)
    if tol <= 0.0:
        raise PreconditionError("tol must be positive")
    if a > b:
        raise PreconditionError(f"need a <= b, got a={a:g}, b={b:g}")
    if a == b:
        return 0.0
    fa, fb = f(a), f(b)
    m, fm, whole = _simpson(f, a, fa, b, fb)
    return _adapt(f, a, fa, b, fb, tol, whole, m, fm, MAX_DEPTH)


def finite_diff_1(f, x, h=1e-5, lo=0.0, hi=1.0):
    """First derivative by second-order differences, one-sided at endpoints."""
    x = float(x)
    if x - h >= lo and x + h <= hi:
        return (f(x + h) - f(x - h)) / (2.0 * h)
    if x + 2.0 * h <= hi:
        return (-3.0 * f(x) + 4.0 * f(x + h) - f(x + 2.0 * h)) / (2.0 * h)
    return (3.0 * f(x) - 4.0 * f(x - h) + f(x - 2.0 * h)) / (2.0 * h)


def finite_diff_2(f, x, h=1e-4, lo=0.0, hi=1.0):
    """Second derivative by second-order differences, one-sided at endpoints."""
    x = float(x)
    if x - h >= lo and x + h <= hi:
        return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)
    if x + 3.0 * h <= hi:
        return (
            2.0 * f(x) - 5.0 * f(x + h) + 4.0 * f(x + 2.0 * h) - f(x + 3.0 * h)
        ) / (h * h)
    return (
        2.0 * f(x) - 5.0 * f(x - h) + 4.0 * f(x - 2.0 * h) - f(x - 3.0 * h)
    ) / (h * h)
