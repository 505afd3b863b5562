import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bernakr.calculus.quadrature import finite_diff_1, finite_diff_2, integrate_1d
from bernakr.errors import PreconditionError, QuadratureError


def test_constant():
    assert integrate_1d(lambda t: 1.0, 0.0, 1.0) == pytest.approx(1.0, abs=1e-14)


def test_t_sin_half_pi_t():
    # closed form of int_0^1 t sin(pi t / 2) dt
    val = integrate_1d(lambda t: t * math.sin(math.pi * t / 2), 0.0, 1.0)
    assert val == pytest.approx(4 / math.pi**2, abs=1e-10)


def test_t4_exp_t():
    val = integrate_1d(lambda t: t**4 * math.exp(t), 0.0, 1.0)
    assert val == pytest.approx(9 * math.e - 24, abs=1e-10)


def test_partial_interval():
    val = integrate_1d(lambda t: 3 * t * t, 0.25, 0.75)
    assert val == pytest.approx(0.75**3 - 0.25**3, abs=1e-11)


def test_empty_interval():
    assert integrate_1d(lambda t: 5.0, 0.3, 0.3) == 0.0


def test_reversed_interval_rejected():
    with pytest.raises(PreconditionError):
        integrate_1d(lambda t: 1.0, 0.7, 0.3)


def test_bad_tol_rejected():
    with pytest.raises(PreconditionError):
        integrate_1d(lambda t: 1.0, 0.0, 1.0, tol=0.0)


def test_jump_integrand_hits_subdivision_cap():
    jump = lambda t: 0.0 if t < 1.0 / 3.0 else 1.0
    with pytest.raises(QuadratureError):
        integrate_1d(jump, 0.0, 1.0, tol=1e-13)


@settings(max_examples=25, deadline=None)
@given(
    alpha=st.floats(-5, 5, allow_nan=False),
    beta=st.floats(-5, 5, allow_nan=False),
)
def test_linearity(alpha, beta):
    tol = 1e-10
    f = lambda t: math.sin(math.pi * t / 2)
    g = lambda t: t * t * math.exp(t)
    combined = integrate_1d(lambda t: alpha * f(t) + beta * g(t), 0.0, 1.0, tol)
    separate = alpha * integrate_1d(f, 0.0, 1.0, tol) + beta * integrate_1d(g, 0.0, 1.0, tol)
    assert combined == pytest.approx(separate, abs=10 * tol * (1 + abs(alpha) + abs(beta)))


def test_fd2_quadratic():
    assert finite_diff_2(lambda x: x * x, 0.5, 1e-4) == pytest.approx(2.0, abs=1e-6)


def test_fd2_constant():
    assert finite_diff_2(lambda x: 7.25, 0.4) == pytest.approx(0.0, abs=1e-8)


def test_fd2_sine():
    f = lambda x: math.sin(math.pi * x / 2)
    expected = -((math.pi / 2) ** 2) * math.sin(math.pi / 4)
    assert finite_diff_2(f, 0.5) == pytest.approx(expected, abs=1e-5)


def test_fd2_one_sided_at_endpoints():
    f = lambda x: x * x
    assert finite_diff_2(f, 0.0) == pytest.approx(2.0, abs=1e-4)
    assert finite_diff_2(f, 1.0) == pytest.approx(2.0, abs=1e-4)


def test_fd1_one_sided_at_endpoints():
    f = lambda x: x * x * x
    assert finite_diff_1(f, 0.0) == pytest.approx(0.0, abs=1e-8)
    assert finite_diff_1(f, 1.0) == pytest.approx(3.0, abs=1e-8)
