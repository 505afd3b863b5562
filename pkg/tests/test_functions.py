import numpy as np
import pytest

from bernakr import catalog
from bernakr.calculus import (
    ANALYTIC,
    FINITE_DIFF,
    BivariateFunction,
    GridSpec,
    ScalarFunction,
)
from bernakr.calculus.quadrature import finite_diff_1, finite_diff_2
from bernakr.errors import DomainEvalError, PreconditionError
from tests.conftest import interior_points

ALL_1D = [src for _, src in catalog._BATTERY_1D]
ALL_2D = [src for _, src in catalog._BATTERY_2D] + [catalog.expression("ex4.3"),
                                                    catalog.expression("ex4.5")]


def assert_ad_matches_fd_1d(f, pts):
    for x in pts:
        fd1 = finite_diff_1(f.value, x, 1e-5)
        fd2 = finite_diff_2(f.value, x, 1e-4)
        d1, d2 = f.deriv1(x), f.deriv2(x)
        assert abs(d1 - fd1) < 1e-6 * (1 + abs(d1))
        assert abs(d2 - fd2) < 1e-4 * (1 + abs(d2))


@pytest.mark.parametrize("src", ALL_1D)
def test_ad_vs_fd_univariate(src, rng):
    f = ScalarFunction.from_expression(src)
    assert f.derivative_mode == ANALYTIC
    assert_ad_matches_fd_1d(f, interior_points(rng).tolist())


@pytest.mark.parametrize("src", ALL_2D)
def test_ad_vs_fd_bivariate(src, rng):
    f = BivariateFunction.from_expression(src)
    pts = list(zip(interior_points(rng).tolist(), interior_points(rng).tolist()))
    for x, y in pts:
        for d_ad, d_fd in [
            (f.deriv10(x, y), finite_diff_1(lambda t: f.value(t, y), x, 1e-5)),
            (f.deriv01(x, y), finite_diff_1(lambda t: f.value(x, t), y, 1e-5)),
        ]:
            assert abs(d_ad - d_fd) < 1e-6 * (1 + abs(d_ad))
        for d_ad, d_fd in [
            (f.deriv20(x, y), finite_diff_2(lambda t: f.value(t, y), x, 1e-4)),
            (f.deriv02(x, y), finite_diff_2(lambda t: f.value(x, t), y, 1e-4)),
        ]:
            assert abs(d_ad - d_fd) < 1e-4 * (1 + abs(d_ad))


def test_fd_mode_flag_and_agreement(rng):
    ad = ScalarFunction.from_expression("sin(pi*x/2)")
    fd = ScalarFunction.from_expression("sin(pi*x/2)", finite_diff=True)
    assert fd.derivative_mode == FINITE_DIFF
    for x in interior_points(rng, 10).tolist():
        assert fd.deriv1(x) == pytest.approx(ad.deriv1(x), abs=1e-8)
        assert fd.deriv2(x) == pytest.approx(ad.deriv2(x), abs=1e-5)


def test_from_callables_fd_fallback():
    f = ScalarFunction.from_callables(lambda x: x**3, name="cube")
    assert f.derivative_mode == FINITE_DIFF
    assert f.deriv1(0.5) == pytest.approx(0.75, abs=1e-8)
    assert f.deriv2(0.5) == pytest.approx(3.0, abs=1e-5)


def test_channels_can_be_absent():
    f = ScalarFunction.from_callables(lambda x: x, fd_fallback=False)
    with pytest.raises(PreconditionError, match="channel unavailable"):
        f.deriv1(0.5)


def test_non_finite_value_rejected():
    f = ScalarFunction.from_callables(lambda x: float("nan"), fd_fallback=False)
    with pytest.raises(DomainEvalError, match="non-finite"):
        f(0.5)


def test_bivariate_slices():
    f = catalog.get("ex4.4")
    s = f.slice_x(0.5)
    assert s(0.3) == pytest.approx(f(0.3, 0.5), rel=1e-15)
    assert s.deriv1(0.3) == pytest.approx(f.deriv10(0.3, 0.5), rel=1e-12)
    t = f.slice_y(0.25)
    assert t.deriv2(0.8) == pytest.approx(f.deriv02(0.25, 0.8), rel=1e-12)


def test_mixed_partial_channel():
    # f = x^2 y^2 has constant (2,2) mixed partial 4
    f = BivariateFunction.from_expression("x^2*y^2")
    assert f.deriv22(0.3, 0.7) == pytest.approx(4.0, abs=1e-5)


def test_grid_spec_points():
    g = GridSpec(5)
    pts = g.points()
    assert pts[0] == 0.0 and pts[-1] == 1.0
    assert np.allclose(pts, [0.0, 0.25, 0.5, 0.75, 1.0], atol=1e-16)
    with pytest.raises(PreconditionError):
        GridSpec(1)
    with pytest.raises(PreconditionError):
        GridSpec(10, 3)


def test_grid_points_are_i_over_resolution_minus_one():
    g = GridSpec(1001)
    pts = g.points()
    idx = np.arange(1001)
    assert np.max(np.abs(pts - idx / 1000)) < 1e-15
