import math
import warnings

import numpy as np
import pytest

from bernakr import catalog
from bernakr.calculus import BivariateFunction, GridSpec, ScalarFunction
from bernakr.classes import (
    build_from_phi,
    build_from_phi_psi,
    build_from_tau,
    check_compatibility,
    check_decreasing_convex,
    check_haar_convex,
    check_Kj1,
    check_Kj2,
    method_I_compose,
)
from bernakr.errors import PreconditionError

ONE = ScalarFunction.from_expression("1", name="1")
E1 = ScalarFunction.from_expression("x", name="e1")
E2 = ScalarFunction.from_expression("x^2", name="e2")


class TestKj1:
    def test_ej_is_boundary_member(self):
        for j in (2, 3, 5):
            ej = ScalarFunction.from_expression(f"x^{j}")
            rep = check_Kj1(ej, j)
            assert rep.is_member
            assert abs(rep.min_margin) < 1e-12

    def test_e1_fails_for_j2(self):
        rep = check_Kj1(E1, 2)
        assert rep.verdict == "non-member"
        # x * 0 - 1 * 1 = -1 at every point
        assert rep.min_margin == pytest.approx(-1.0, abs=1e-12)

    def test_example_function_is_member(self):
        rep = check_Kj1(catalog.get("ex3.1"), 2)
        assert rep.is_member

    def test_j_below_two_rejected(self):
        with pytest.raises(PreconditionError):
            check_Kj1(E2, 1)


class TestDecreasingConvex:
    def test_example_3_4(self):
        assert check_decreasing_convex(catalog.get("ex3.4")).is_member

    def test_increasing_rejected(self):
        assert check_decreasing_convex(E1).verdict == "non-member"

    def test_affine_boundary(self):
        rep = check_decreasing_convex(ScalarFunction.from_expression("1-x"))
        assert rep.is_member
        assert abs(rep.min_margin) < 1e-12


class TestHaarConvex:
    def test_f_equal_f1_gives_zero_determinants(self):
        rep = check_haar_convex(E2, ONE, E2)
        assert rep.is_member
        assert abs(rep.min_margin) < 1e-12

    def test_classical_convexity(self):
        assert check_haar_convex(E2, ONE, E1).is_member

    def test_sqrt_shape_is_not_e2_convex(self):
        rep = check_haar_convex(E1, ONE, E2)
        assert rep.verdict == "non-member"
        # hand determinant at (0, 0.25, 1): rows (1,1,1), (0,1/16,1), (0,1/4,1)
        assert rep.min_margin < -0.15

    def test_haar_pair_validated(self):
        with pytest.raises(PreconditionError, match="Haar pair"):
            check_haar_convex(E2, E1, E2)  # f0 = x vanishes at 0
        decreasing = ScalarFunction.from_expression("1-x")
        with pytest.raises(PreconditionError, match="Haar pair"):
            check_haar_convex(E2, ONE, decreasing)


# Consistency of the determinant test with convexity of x -> f(x^(1/j)):
# 20 functions with clear margins, both members and non-members.
EQUIVALENCE_BATTERY = [
    ("x^2", 2),
    ("x", 2),
    ("x^3", 2),
    ("x^4", 2),
    ("sin(pi*x/2)", 2),
    (catalog.expression("ex3.1"), 2),
    ("exp(x)-1", 2),
    ("1-x", 2),
    ("x^2+x^3", 2),
    ("x^2*exp(x)", 2),
    ("x^2/(1+x)", 2),
    (catalog.expression("ex3.4"), 2),
    ("x^2+x^4", 2),
    ("ln(1+x)", 2),
    ("2*x^2-x^3", 2),
    ("(exp(x^2)-1)/2", 2),
    ("x^5", 2),
    ("x^3", 3),
    ("x^2", 3),
    ("x^4", 3),
]


def _convex_after_root_substitution(f, j, res=49, tol=1e-7):
    us = np.linspace(0.0, 1.0, res)
    g = [f(u ** (1.0 / j)) for u in us.tolist()]
    seconds = [g[i - 1] - 2.0 * g[i] + g[i + 1] for i in range(1, res - 1)]
    return min(seconds) >= -tol


@pytest.mark.parametrize("src,j", EQUIVALENCE_BATTERY)
def test_haar_test_matches_root_substitution_convexity(src, j):
    f = ScalarFunction.from_expression(src)
    ej = ScalarFunction.from_expression(f"x^{j}")
    haar_verdict = check_haar_convex(f, ONE, ej).is_member
    assert haar_verdict == _convex_after_root_substitution(f, j)


class TestBuildFromPhi:
    def test_sine_generator_closed_form(self):
        phi = ScalarFunction.from_expression("sin(pi*x/2)")
        f = build_from_phi(phi, 2)
        assert f(1.0) == pytest.approx(4 / math.pi**2, abs=1e-9)
        reference = catalog.get("ex3.1")
        for x in (0.1, 0.37, 0.62, 0.99):
            assert f(x) == pytest.approx(reference(x), abs=1e-9)
            assert f.deriv1(x) == pytest.approx(reference.deriv1(x), rel=1e-10)
            assert f.deriv2(x) == pytest.approx(reference.deriv2(x), rel=1e-9)

    def test_zero_generator(self):
        phi = ScalarFunction.from_expression("0")
        f = build_from_phi(phi, 3, f0=2.5)
        for x in (0.0, 0.5, 1.0):
            assert f(x) == 2.5

    def test_exp_generator_j5(self):
        phi = ScalarFunction.from_expression("exp(x)")
        f = build_from_phi(phi, 5)
        assert f(1.0) == pytest.approx(9 * math.e - 24, abs=1e-9)
        reference = catalog.get("ex3.2")
        for x in (0.25, 0.75):
            assert f(x) == pytest.approx(reference(x) - reference(0.0), abs=1e-9)

    def test_derivative_channel_vs_quadrature_quotient(self, rng):
        phi = ScalarFunction.from_expression("sin(pi*x/2)")
        f = build_from_phi(phi, 2)
        h = 1e-5
        for x in (0.02 + 0.96 * rng.random(50)).tolist():
            quotient = (f(x + h) - f(x - h)) / (2 * h)
            assert abs(f.deriv1(x) - quotient) < 1e-6

    def test_membership_of_random_family(self, rng):
        # phi = a + b t + c t^2 + d (e^t - 1) + g sin(pi t/2), coefficients >= 0
        for _ in range(25):
            a, b, c, d, g = rng.uniform(0.0, 2.0, 5)
            j = int(rng.integers(2, 6))
            phi = ScalarFunction.from_callables(
                lambda t, a=a, b=b, c=c, d=d, g=g: a + b * t + c * t * t
                + d * (math.exp(t) - 1.0) + g * math.sin(math.pi * t / 2),
                d1=lambda t, b=b, c=c, d=d, g=g: b + 2 * c * t + d * math.exp(t)
                + g * (math.pi / 2) * math.cos(math.pi * t / 2),
                d2=lambda t, c=c, d=d, g=g: 2 * c + d * math.exp(t)
                - g * (math.pi / 2) ** 2 * math.sin(math.pi * t / 2),
            )
            f = build_from_phi(phi, j)
            rep = check_Kj1(f, j)
            assert rep.min_margin >= -1e-9

    def test_warns_on_inadmissible_generator(self):
        phi = ScalarFunction.from_expression("1-x")  # decreasing
        with pytest.warns(UserWarning, match="phi'"):
            build_from_phi(phi, 2)


class TestKj2:
    def test_sum_of_fixed_monomials(self):
        for j in (2, 3):
            f = BivariateFunction.from_expression(f"x^{j}+y^{j}")
            rep = check_Kj2(f, j, GridSpec(41, 2))
            assert rep.is_member
            assert abs(rep.min_margin) < 1e-11

    def test_plane_fails(self):
        f = BivariateFunction.from_expression("x+y")
        assert check_Kj2(f, 2, GridSpec(21, 2)).verdict == "non-member"

    def test_example_4_4(self):
        rep = check_Kj2(catalog.get("ex4.4"), 2, GridSpec(41, 2))
        assert rep.is_member


class TestCompatibility:
    def test_symmetric_pair(self):
        phi = BivariateFunction.from_expression("x^2+y^2")
        rep = check_compatibility(phi, phi, 2, GridSpec(31, 2))
        assert rep.is_member
        assert rep.min_margin == pytest.approx(0.0, abs=1e-14)

    def test_example_4_4_pair(self):
        gen = catalog.generator("ex4.4")
        phi = BivariateFunction.from_expression(gen["phi"])
        psi = BivariateFunction.from_expression(gen["psi"])
        rep = check_compatibility(phi, psi, 2, GridSpec(31, 2))
        assert rep.is_member
        assert -rep.min_margin < 1e-8

    def test_incompatible_pair(self):
        phi = BivariateFunction.from_expression("y")
        psi = BivariateFunction.from_expression("0")
        rep = check_compatibility(phi, psi, 2, GridSpec(31, 2))
        assert rep.verdict == "non-member"
        # residual is t^(j-1) * 1 at every (t, s), worst at t = 1
        assert rep.min_margin == pytest.approx(-1.0, abs=1e-12)


class TestBuildFromPhiPsi:
    def test_example_4_4_reconstruction(self):
        gen = catalog.generator("ex4.4")
        phi = BivariateFunction.from_expression(gen["phi"])
        psi = BivariateFunction.from_expression(gen["psi"])
        f = build_from_phi_psi(phi, psi, 2)
        assert f(1.0, 1.0) == pytest.approx(math.e - 1.0, abs=1e-8)
        reference = catalog.get("ex4.4")
        for x, y in [(0.3, 0.8), (0.5, 0.5), (1.0, 0.25)]:
            assert f(x, y) == pytest.approx(reference(x, y), abs=1e-8)
            assert f.deriv10(x, y) == pytest.approx(reference.deriv10(x, y), rel=1e-9)
            assert f.deriv02(x, y) == pytest.approx(reference.deriv02(x, y), rel=1e-9)

    def test_zero_pair(self):
        zero = BivariateFunction.from_expression("0")
        f = build_from_phi_psi(zero, zero, 2)
        assert f(0.7, 0.9) == 0.0

    def test_h_identity_pair(self):
        phi = BivariateFunction.from_expression("x^2+y^2")
        f = build_from_phi_psi(phi, phi, 2)
        reference = catalog.get("ex4.3")  # (x^2+y^2)^2 / 4
        for x, y in [(0.2, 0.9), (1.0, 1.0), (0.6, 0.3)]:
            assert f(x, y) == pytest.approx(reference(x, y), abs=1e-8)

    def test_incompatible_pair_rejected(self):
        phi = BivariateFunction.from_expression("y")
        psi = BivariateFunction.from_expression("0")
        with pytest.raises(PreconditionError, match="incompatible"):
            build_from_phi_psi(phi, psi, 2)


class TestBuildFromTau:
    def test_constant_tau(self):
        tau = BivariateFunction.from_expression("1")
        f = build_from_tau(tau, 2)
        assert f(1.0, 1.0) == pytest.approx(0.25, abs=1e-9)
        for x, y in [(0.5, 0.5), (0.9, 0.2)]:
            assert f(x, y) == pytest.approx(x * x * y * y / 4, abs=1e-9)

    def test_sine_tau_matches_closed_form(self):
        tau = BivariateFunction.from_expression("sin(pi*(x+y)/4)")
        f = build_from_tau(tau, 2)
        reference = catalog.get("ex4.6")
        for x, y in [(1.0, 1.0), (0.3, 0.7), (0.5, 0.25)]:
            assert f(x, y) == pytest.approx(reference(x, y), abs=1e-7)

    def test_exp_tau_matches_example_4_4(self):
        tau = BivariateFunction.from_expression("4*(1+x^2*y^2)*exp(x^2*y^2)")
        f = build_from_tau(tau, 2)
        reference = catalog.get("ex4.4")
        for x, y in [(1.0, 1.0), (0.4, 0.6)]:
            assert f(x, y) == pytest.approx(reference(x, y), abs=1e-7)

    def test_output_is_compatible_and_in_class(self):
        tau = BivariateFunction.from_expression("x+y")
        f = build_from_tau(tau, 2)
        rep = check_Kj2(f, 2, GridSpec(9, 2), tol=1e-6)
        assert rep.min_margin >= -1e-6


class TestMethodICompose:
    def test_additive_omega(self):
        omega = BivariateFunction.from_expression("x+y")
        ident = ScalarFunction.from_expression("x")
        f = method_I_compose(omega, ident, ident, 2)
        for x, y in [(0.3, 0.4), (1.0, 0.5)]:
            assert f(x, y) == pytest.approx(x * x + y * y, rel=1e-13)

    def test_product_omega_lands_in_class(self):
        omega = BivariateFunction.from_expression("x*y")
        ident = ScalarFunction.from_expression("x")
        f = method_I_compose(omega, ident, ident, 2)
        for x, y in [(0.3, 0.4), (0.8, 0.9)]:
            assert f(x, y) == pytest.approx(x * x * y * y, rel=1e-12)
        assert check_Kj2(f, 2, GridSpec(21, 2)).min_margin >= -1e-9

    def test_example_4_5(self):
        gen = catalog.generator("ex4.5")
        omega = BivariateFunction.from_expression(gen["omega"])
        a = ScalarFunction.from_expression(gen["a"])
        b = ScalarFunction.from_expression(gen["b"])
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")  # omega_uu of tan is 0 at the origin edge
            f = method_I_compose(omega, a, b, 2)
        reference = catalog.get("ex4.5")
        for x, y in [(0.5, 0.5), (0.9, 0.8), (0.2, 0.95)]:
            assert f(x, y) == pytest.approx(reference(x, y), rel=1e-10)
        assert check_Kj2(f, 2, GridSpec(21, 2)).min_margin >= -1e-9
