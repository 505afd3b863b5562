"""Function classes behind the operator-comparison results.

Membership is grid-certified, not proved: each check scans a grid, reports
the most negative value of the tested inequality (``min_margin``) and the
point attaining it, and calls the function a member when the margin stays
above ``-tol``.  Margins inside [-tol, 0) are flagged as ``boundary`` members
(x^j itself sits exactly on the boundary of its class).

The build_* constructors synthesize members from generator functions:

* a univariate phi with phi >= 0, phi' >= 0 gives f with f' = x^(j-1) phi(x);
* a compatible bivariate pair (phi, psi) gives f with f_x = x^(j-1) phi and
  f_y = y^(j-1) psi;
* a tau with tau >= 0 and nondecreasing in each variable gives
  f(x,y) = int_0^x int_0^y t^(j-1) s^(j-1) tau(t,s) dt ds;
* omega(a(x^j), b(y^j)) composes increasing convex pieces.
"""

import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from bernakr.calculus import (
    ANALYTIC,
    BivariateFunction,
    GridSpec,
    ScalarFunction,
    integrate_1d,
)
from bernakr.errors import PreconditionError

__all__ = [
    "ClassReport",
    "build_from_phi",
    "build_from_phi_psi",
    "build_from_tau",
    "check_Kj1",
    "check_Kj2",
    "check_compatibility",
    "check_decreasing_convex",
    "check_haar_convex",
    "method_I_compose",
    "tau_generators",
]

_LIMIT_PROBE_X = 1e-6
_STABILIZATION_SAMPLES = (1e-3, 1e-4, 1e-5)
_STABILIZATION_TOL = 1e-4


@dataclass(frozen=True)
class ClassReport:
    """Outcome of a grid-certified membership test."""

    verdict: str  # "member", "non-member" or "inconclusive"
    min_margin: float
    witness: object
    tolerance: float
    boundary: bool = False
    grid: GridSpec = None

    @property
    def is_member(self):
        return self.verdict == "member"


def _default_tol(*funcs, analytic=1e-9, fd=1e-6):
    if all(f.derivative_mode == ANALYTIC for f in funcs):
        return analytic
    return fd


def _report(margins, witnesses, tol, grid):
    idx = int(np.argmin(margins))
    mm = float(margins[idx])
    verdict = "member" if mm >= -tol else "non-member"
    return ClassReport(verdict, mm, witnesses[idx], tol, -tol <= mm < 0.0, grid)


def _check_j(j):
    j = int(j)
    if j < 2:
        raise PreconditionError("class exponent j must be at least 2")
    return j


def check_Kj1(f: ScalarFunction, j, grid=GridSpec(501), tol=None):
    """Test f' >= 0 and x f''(x) - (j-1) f'(x) >= 0 over the grid."""
    j = _check_j(j)
    if tol is None:
        tol = _default_tol(f)
    margins, witnesses = [], []
    for x in grid.points().tolist():
        d1 = f.deriv1(x)
        d2 = f.deriv2(x)
        margins.append(d1)
        witnesses.append(x)
        margins.append(x * d2 - (j - 1) * d1)
        witnesses.append(x)
    return _report(margins, witnesses, tol, grid)


def check_decreasing_convex(f: ScalarFunction, grid=GridSpec(501), tol=None):
    """Test f' <= 0 and f'' >= 0 over the grid."""
    if tol is None:
        tol = _default_tol(f)
    margins, witnesses = [], []
    for x in grid.points().tolist():
        margins.append(-f.deriv1(x))
        witnesses.append(x)
        margins.append(f.deriv2(x))
        witnesses.append(x)
    return _report(margins, witnesses, tol, grid)


def _det3(c0, c1, c2):
    return (
        c0[0] * (c1[1] * c2[2] - c1[2] * c2[1])
        - c1[0] * (c0[1] * c2[2] - c0[2] * c2[1])
        + c2[0] * (c0[1] * c1[2] - c0[2] * c1[1])
    )


def check_haar_convex(f, f0, f1, grid=GridSpec(501), tol=None, subgrid=25,
                      full_grid=False):
    """Test (f0,f1)-convexity: the 3x3 determinant det[f0; f1; f] against all
    ordered point triples is non-negative.

    (f0, f1) must be a Haar pair: f0 > 0 and f1/f0 strictly increasing,
    validated on the grid.  Triples are drawn from an evenly spaced sub-grid
    (O(N^3) blowup otherwise); pass full_grid=True to scan every triple.
    """
    if tol is None:
        tol = _default_tol(f, f0, f1)
    pts = grid.points()
    v0 = np.array([f0(x) for x in pts.tolist()])
    v1 = np.array([f1(x) for x in pts.tolist()])
    if np.any(v0 <= 0.0):
        raise PreconditionError("Haar pair violated: f0 not strictly positive on the grid")
    ratio = v1 / v0
    if np.any(np.diff(ratio) <= 0.0):
        raise PreconditionError("Haar pair violated: f1/f0 not strictly increasing on the grid")

    if full_grid:
        idx = np.arange(pts.shape[0])
    else:
        idx = np.unique(np.round(np.linspace(0, pts.shape[0] - 1, subgrid)).astype(int))
    vf = np.array([f(x) for x in pts.tolist()])

    min_det = np.inf
    witness = None
    for a in range(len(idx)):
        ia = idx[a]
        for b in range(a + 1, len(idx)):
            ib = idx[b]
            for c in range(b + 1, len(idx)):
                ic = idx[c]
                d = _det3(
                    (v0[ia], v1[ia], vf[ia]),
                    (v0[ib], v1[ib], vf[ib]),
                    (v0[ic], v1[ic], vf[ic]),
                )
                if d < min_det:
                    min_det = d
                    witness = (float(pts[ia]), float(pts[ib]), float(pts[ic]))
    verdict = "member" if min_det >= -tol else "non-member"
    return ClassReport(verdict, float(min_det), witness, tol,
                       -tol <= min_det < 0.0, grid)


def check_Kj2(f: BivariateFunction, j, grid=GridSpec(101, 2), tol=None):
    """Slice-wise K_j test: both inequalities in x for every y, and in y for
    every x, over the 2-D grid."""
    j = _check_j(j)
    if tol is None:
        tol = _default_tol(f)
    margins, witnesses = [], []
    xs, ys = grid.axes()
    for x in xs.tolist():
        for y in ys.tolist():
            d10 = f.deriv10(x, y)
            d20 = f.deriv20(x, y)
            d01 = f.deriv01(x, y)
            d02 = f.deriv02(x, y)
            pt = (x, y)
            for m in (d10, x * d20 - (j - 1) * d10, d01, y * d02 - (j - 1) * d01):
                margins.append(m)
                witnesses.append(pt)
    return _report(margins, witnesses, tol, grid)


def check_compatibility(phi: BivariateFunction, psi: BivariateFunction, j,
                        grid=GridSpec(101, 2), tol=None):
    """Residual of t^(j-1) phi_y(t,s) = s^(j-1) psi_x(t,s) over the grid."""
    j = _check_j(j)
    if tol is None:
        tol = _default_tol(phi, psi, analytic=1e-8, fd=1e-6)
    margins, witnesses = [], []
    ts, ss = grid.axes()
    for t in ts.tolist():
        for s in ss.tolist():
            resid = t ** (j - 1) * phi.deriv01(t, s) - s ** (j - 1) * psi.deriv10(t, s)
            margins.append(-abs(resid))
            witnesses.append((t, s))
    return _report(margins, witnesses, tol, grid)


def _warn_if_negative(values, what, tol=1e-9):
    worst = min(values)
    if worst < -tol:
        warnings.warn(f"{what} dips to {worst:g} on the scan grid", stacklevel=3)


def build_from_phi(phi: ScalarFunction, j, f0=0.0, validate=True,
                   scan=GridSpec(201), quad_tol=1e-10) -> ScalarFunction:
    """f(x) = f0 + int_0^x t^(j-1) phi(t) dt with analytic derivative channels.

    phi >= 0 and phi' >= 0 are validated on a scan grid with a warning (not a
    failure) on violation; the class characterization admits a slightly wider
    generator set.  f'' at x = 0 is completed by the limit of
    (j-1) x^(j-2) phi(x) + x^(j-1) phi'(x), the limit term probed numerically
    near 0.
    """
    j = _check_j(j)
    f0 = float(f0)
    if validate:
        pts = scan.points().tolist()
        _warn_if_negative([phi(x) for x in pts], "phi")
        _warn_if_negative([phi.deriv1(x) for x in pts], "phi'")
        probes = [x ** (j - 1) * phi.deriv1(x) for x in _STABILIZATION_SAMPLES]
        gap1 = abs(probes[1] - probes[0])
        gap2 = abs(probes[2] - probes[1])
        # Cauchy-like: successive gaps either tiny or contracting
        if gap2 > max(_STABILIZATION_TOL, 0.5 * gap1):
            warnings.warn(
                "limit of x^(j-1) phi'(x) at 0 not numerically stabilized "
                f"(gaps {gap1:g} -> {gap2:g}); existence condition unverified",
                stacklevel=2,
            )

    @lru_cache(maxsize=None)
    def value(x):
        return f0 + integrate_1d(lambda t: t ** (j - 1) * phi(t), 0.0, x, quad_tol)

    def d1(x):
        return x ** (j - 1) * phi(x)

    def d2(x):
        if x == 0.0:
            head = (j - 1) * phi(0.0) if j == 2 else 0.0
            return head + _LIMIT_PROBE_X ** (j - 1) * phi.deriv1(_LIMIT_PROBE_X)
        return (j - 1) * x ** (j - 2) * phi(x) + x ** (j - 1) * phi.deriv1(x)

    return ScalarFunction(value, d1, d2, ANALYTIC,
                          name=f"I[{phi.name or 'phi'};j={j}]")


def build_from_phi_psi(phi: BivariateFunction, psi: BivariateFunction, j,
                       validate=True, compat_grid=GridSpec(21, 2),
                       quad_tol=1e-10) -> BivariateFunction:
    """f(x,y) = int_0^x t^(j-1) phi(t,y) dt + int_0^y s^(j-1) psi(0,s) ds.

    Requires the compatibility identity between phi_y and psi_x (checked on
    ``compat_grid``); that identity is what makes f_y = y^(j-1) psi(x,y)
    exact even though psi only enters the value along x = 0.
    """
    j = _check_j(j)
    if validate:
        rep = check_compatibility(phi, psi, j, compat_grid)
        if not rep.is_member:
            raise PreconditionError(
                "phi/psi incompatible: residual "
                f"{-rep.min_margin:g} at {rep.witness} exceeds {rep.tolerance:g}"
            )
        pts = [
            (t, s)
            for t in compat_grid.points().tolist()
            for s in compat_grid.points().tolist()
        ]
        _warn_if_negative([phi(t, s) for t, s in pts], "phi")
        _warn_if_negative([phi.deriv10(t, s) for t, s in pts], "phi_x")
        _warn_if_negative([psi(t, s) for t, s in pts], "psi")
        _warn_if_negative([psi.deriv01(t, s) for t, s in pts], "psi_y")

    @lru_cache(maxsize=None)
    def value(x, y):
        part_x = integrate_1d(lambda t: t ** (j - 1) * phi(t, y), 0.0, x, quad_tol)
        part_y = integrate_1d(lambda s: s ** (j - 1) * psi(0.0, s), 0.0, y, quad_tol)
        return part_x + part_y

    def d10(x, y):
        return x ** (j - 1) * phi(x, y)

    def d01(x, y):
        return y ** (j - 1) * psi(x, y)

    def d20(x, y):
        if x == 0.0:
            return (j - 1) * phi(0.0, y) if j == 2 else 0.0
        return (j - 1) * x ** (j - 2) * phi(x, y) + x ** (j - 1) * phi.deriv10(x, y)

    def d02(x, y):
        if y == 0.0:
            return (j - 1) * psi(x, 0.0) if j == 2 else 0.0
        return (j - 1) * y ** (j - 2) * psi(x, y) + y ** (j - 1) * psi.deriv01(x, y)

    return BivariateFunction.from_callables(
        value, d10, d01, d20, d02,
        name=f"I[{phi.name or 'phi'},{psi.name or 'psi'};j={j}]",
        fd_fallback=False,
    )


def tau_generators(tau: BivariateFunction, j, quad_tol=1e-10):
    """The generator pair induced by tau:

        phi(x,y) = int_0^y s^(j-1) tau(x,s) ds,
        psi(x,y) = int_0^x t^(j-1) tau(t,y) dt.

    Their cross partials phi_y = y^(j-1) tau and psi_x = x^(j-1) tau make the
    compatibility identity hold exactly.
    """
    j = _check_j(j)

    @lru_cache(maxsize=None)
    def phi_value(x, y):
        return integrate_1d(lambda s: s ** (j - 1) * tau(x, s), 0.0, y, quad_tol)

    @lru_cache(maxsize=None)
    def phi_d10(x, y):
        return integrate_1d(lambda s: s ** (j - 1) * tau.deriv10(x, s), 0.0, y, quad_tol)

    phi = BivariateFunction.from_callables(
        phi_value,
        d10=phi_d10,
        d01=lambda x, y: y ** (j - 1) * tau(x, y),
        name=f"phi[{tau.name or 'tau'}]",
    )

    @lru_cache(maxsize=None)
    def psi_value(x, y):
        return integrate_1d(lambda t: t ** (j - 1) * tau(t, y), 0.0, x, quad_tol)

    @lru_cache(maxsize=None)
    def psi_d01(x, y):
        return integrate_1d(lambda t: t ** (j - 1) * tau.deriv01(t, y), 0.0, x, quad_tol)

    psi = BivariateFunction.from_callables(
        psi_value,
        d10=lambda x, y: x ** (j - 1) * tau(x, y),
        d01=psi_d01,
        name=f"psi[{tau.name or 'tau'}]",
    )
    return phi, psi


def build_from_tau(tau: BivariateFunction, j, validate=True,
                   scan=GridSpec(21, 2), quad_tol=1e-10) -> BivariateFunction:
    """f(x,y) = int_0^x int_0^y t^(j-1) s^(j-1) tau(t,s) dt ds.

    tau >= 0 with nondecreasing sections (warned, not enforced) makes the
    result a member of the bivariate class.  Delegates to
    ``build_from_phi_psi`` on the ``tau_generators`` pair.
    """
    j = _check_j(j)
    if validate:
        pts = [(t, s) for t in scan.points().tolist() for s in scan.points().tolist()]
        _warn_if_negative([tau(t, s) for t, s in pts], "tau")
        _warn_if_negative([tau.deriv10(t, s) for t, s in pts], "tau_x")
        _warn_if_negative([tau.deriv01(t, s) for t, s in pts], "tau_y")

    phi, psi = tau_generators(tau, j, quad_tol)
    out = build_from_phi_psi(phi, psi, j, validate=validate, quad_tol=quad_tol)
    return BivariateFunction(
        out.value, out.d10, out.d01, out.d20, out.d02, out.d22,
        out.derivative_mode, name=f"II[{tau.name or 'tau'};j={j}]",
    )


def method_I_compose(omega: BivariateFunction, a: ScalarFunction,
                     b: ScalarFunction, j, validate=True,
                     scan=GridSpec(41)) -> BivariateFunction:
    """f(x,y) = omega(a(x^j), b(y^j)) with chain-rule partial channels.

    omega should be increasing and convex in each variable separately, and a,
    b increasing and convex; violations are warned about, since they only
    void the class-membership guarantee, not the construction.
    """
    j = _check_j(j)
    if validate:
        pts = scan.points().tolist()
        _warn_if_negative([a.deriv1(x) for x in pts], "a'")
        _warn_if_negative([a.deriv2(x) for x in pts], "a''")
        _warn_if_negative([b.deriv1(x) for x in pts], "b'")
        _warn_if_negative([b.deriv2(x) for x in pts], "b''")
        pts2 = [(u, v) for u in pts[:: max(1, len(pts) // 15)] for v in pts[:: max(1, len(pts) // 15)]]
        _warn_if_negative([omega.deriv10(u, v) for u, v in pts2], "omega_u")
        _warn_if_negative([omega.deriv20(u, v) for u, v in pts2], "omega_uu")
        _warn_if_negative([omega.deriv01(u, v) for u, v in pts2], "omega_v")
        _warn_if_negative([omega.deriv02(u, v) for u, v in pts2], "omega_vv")

    def uv(x, y):
        return a(x ** j), b(y ** j)

    def value(x, y):
        u, v = uv(x, y)
        return omega(u, v)

    def d10(x, y):
        u, v = uv(x, y)
        return omega.deriv10(u, v) * a.deriv1(x ** j) * j * x ** (j - 1)

    def d01(x, y):
        u, v = uv(x, y)
        return omega.deriv01(u, v) * b.deriv1(y ** j) * j * y ** (j - 1)

    def d20(x, y):
        u, v = uv(x, y)
        inner1 = a.deriv1(x ** j) * j * x ** (j - 1)
        inner2 = (
            a.deriv2(x ** j) * (j * x ** (j - 1)) ** 2
            + a.deriv1(x ** j) * j * (j - 1) * x ** (j - 2)
        )
        return omega.deriv20(u, v) * inner1 * inner1 + omega.deriv10(u, v) * inner2

    def d02(x, y):
        u, v = uv(x, y)
        inner1 = b.deriv1(y ** j) * j * y ** (j - 1)
        inner2 = (
            b.deriv2(y ** j) * (j * y ** (j - 1)) ** 2
            + b.deriv1(y ** j) * j * (j - 1) * y ** (j - 2)
        )
        return omega.deriv02(u, v) * inner1 * inner1 + omega.deriv01(u, v) * inner2

    return BivariateFunction.from_callables(
        value, d10, d01, d20, d02,
        name=f"I[{omega.name or 'omega'}({a.name or 'a'},{b.name or 'b'});j={j}]",
        fd_fallback=False,
    )
