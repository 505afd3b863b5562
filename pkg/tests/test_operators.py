import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bernakr.calculus import BivariateFunction, ScalarFunction
from bernakr.errors import PreconditionError
from bernakr.operators import (
    GeneralizedOperatorSpec,
    OperatorSpec,
    akr_node_ratio,
    akr_nodes,
    bernstein_basis,
    decasteljau_eval,
    eval_akr,
    eval_akr_2d,
    eval_akr_grid,
    eval_bernstein,
    eval_bernstein_2d,
    eval_bernstein_grid,
    eval_generalized,
    uniform_nodes,
)

E0 = ScalarFunction.from_expression("1", name="e0")
E1 = ScalarFunction.from_expression("x", name="e1")
E2 = ScalarFunction.from_expression("x^2", name="e2")


class TestAkrNodes:
    def test_small_case_collapses(self):
        assert np.array_equal(akr_nodes(2, 2).nodes, [0.0, 0.0, 1.0])

    def test_n10_j2(self):
        nd = akr_nodes(10, 2).nodes
        assert nd[0] == 0.0 and nd[1] == 0.0
        assert nd[5] == pytest.approx(math.sqrt(20 / 90), rel=1e-15)
        assert nd[10] == 1.0

    def test_n5_j2(self):
        nd = akr_nodes(5, 2).nodes
        expected = [0.0, 0.0, math.sqrt(0.1), math.sqrt(0.3), math.sqrt(0.6), 1.0]
        assert np.allclose(nd, expected, rtol=1e-15, atol=0)

    def test_nondecreasing_and_dominated(self):
        for n, j in [(10, 2), (17, 3), (60, 5), (8, 8)]:
            nd = akr_nodes(n, j).nodes
            assert np.all(np.diff(nd) >= 0.0)
            assert np.all(nd <= uniform_nodes(n) + 1e-15)

    def test_domination_is_exact_in_rationals(self):
        for n, j in [(10, 2), (31, 4), (60, 8)]:
            for k in range(n + 1):
                num, den = akr_node_ratio(n, j, k)
                assert num * n**j <= k**j * den

    def test_degree_below_exponent_rejected(self):
        with pytest.raises(PreconditionError):
            akr_nodes(1, 2)
        with pytest.raises(PreconditionError):
            akr_nodes(4, 5)

    def test_j_one_rejected(self):
        with pytest.raises(PreconditionError, match="j = 1 is the Bernstein"):
            akr_nodes(10, 1)


class TestBasis:
    def test_out_of_range_rejected(self):
        with pytest.raises(PreconditionError):
            bernstein_basis(5, 1.5)
        with pytest.raises(PreconditionError):
            bernstein_basis(5, -0.1)

    def test_values(self):
        assert np.array_equal(bernstein_basis(1, 0.5), [0.5, 0.5])
        assert np.array_equal(bernstein_basis(5, 0.0), [1, 0, 0, 0, 0, 0])


class TestBernstein:
    def test_reproduces_affine(self):
        for n in (1, 4, 33):
            assert eval_bernstein(E1, n, 0.5) == pytest.approx(0.5, abs=1e-14)

    def test_partition_of_unity(self):
        for x in (0.0, 0.3, 1.0):
            assert eval_bernstein(E0, 7, x) == pytest.approx(1.0, abs=1e-14)

    def test_e2_identity(self):
        # B_n(e2; x) = x^2 + x(1-x)/n
        assert eval_bernstein(E2, 10, 0.5) == pytest.approx(0.275, abs=1e-14)

    def test_degree_zero_rejected(self):
        with pytest.raises(PreconditionError):
            eval_bernstein(E1, 0, 0.5)


class TestAkr:
    def test_fixes_ej(self):
        ej = ScalarFunction.from_expression("x^2")
        assert eval_akr(ej, 10, 2, 0.3) == pytest.approx(0.09, abs=1e-10)

    def test_fixes_constants(self):
        assert eval_akr(E0, 7, 3, 0.62) == pytest.approx(1.0, abs=1e-12)

    def test_tiny_case_by_hand(self):
        # nodes are [0,0,1]: sum is p_{2,2}(0.5) = 0.25
        assert eval_akr(E1, 2, 2, 0.5) == pytest.approx(0.25, abs=1e-15)


class TestTensorProduct:
    def test_constant(self):
        f = BivariateFunction.from_expression("1")
        assert eval_bernstein_2d(f, 3, 5, 0.21, 0.84) == pytest.approx(1.0, abs=1e-13)
        assert eval_akr_2d(f, 4, 6, 2, 0.21, 0.84) == pytest.approx(1.0, abs=1e-13)

    def test_bilinear_reproduction(self):
        f = BivariateFunction.from_expression("x*y")
        assert eval_bernstein_2d(f, 3, 3, 0.5, 0.5) == pytest.approx(0.25, abs=1e-14)

    def test_sum_of_squares(self):
        f = BivariateFunction.from_expression("x^2+y^2")
        # per-axis B_n(e2) identity: 0.5 + 2 * 0.025
        assert eval_bernstein_2d(f, 10, 10, 0.5, 0.5) == pytest.approx(0.55, abs=1e-13)

    def test_akr_fixes_xj(self):
        f = BivariateFunction.from_expression("x^2")
        assert eval_akr_2d(f, 5, 7, 2, 0.3, 0.7) == pytest.approx(0.09, abs=1e-10)

    def test_akr_product_factorizes(self):
        f = BivariateFunction.from_expression("x^2*y^2")
        assert eval_akr_2d(f, 2, 2, 2, 0.5, 0.5) == pytest.approx(0.0625, abs=1e-13)

    def test_degree_below_exponent_rejected(self):
        f = BivariateFunction.from_expression("x*y")
        with pytest.raises(PreconditionError):
            eval_akr_2d(f, 5, 1, 2, 0.5, 0.5)


class TestGeneralized:
    def test_reduces_to_bernstein(self):
        spec = GeneralizedOperatorSpec(uniform_nodes(6), np.ones(7), 6)
        assert eval_generalized(E2, spec, 0.37) == eval_bernstein(E2, 6, 0.37)

    def test_reduces_to_akr(self):
        spec = GeneralizedOperatorSpec(akr_nodes(6, 2).nodes, np.ones(7), 6)
        assert eval_generalized(E2, spec, 0.37) == eval_akr(E2, 6, 2, 0.37)

    def test_weighted_constant(self):
        spec = GeneralizedOperatorSpec(np.array([0.0, 1.0]), np.array([2.0, 2.0]), 1)
        assert eval_generalized(E0, spec, 0.5) == pytest.approx(2.0, abs=1e-15)

    def test_shape_validation(self):
        with pytest.raises(PreconditionError):
            GeneralizedOperatorSpec(np.array([0.0, 1.0]), np.array([1.0]), 1)
        with pytest.raises(PreconditionError):
            GeneralizedOperatorSpec(np.array([0.0, 1.0]), np.array([1.0, 0.0]), 1)


class TestOperatorSpec:
    def test_validation(self):
        with pytest.raises(PreconditionError):
            OperatorSpec("akr", 5, j=1)
        with pytest.raises(PreconditionError):
            OperatorSpec("akr", 2, j=3)
        with pytest.raises(PreconditionError):
            OperatorSpec("akr", 5)
        with pytest.raises(PreconditionError):
            OperatorSpec("king", 5)

    def test_labels(self):
        assert OperatorSpec("bernstein", 5).label() == "B_5"
        assert OperatorSpec("akr", 5, j=2).label() == "B_5_2"
        assert OperatorSpec("akr", 3, 4, 2).label() == "B_3_4_2"


@settings(max_examples=40, deadline=None)
@given(
    n=st.integers(min_value=1, max_value=40),
    x=st.floats(min_value=0.0, max_value=1.0, allow_nan=False),
    seed=st.integers(min_value=0, max_value=2**31),
)
def test_operator_monotone_in_node_values(n, x, seed):
    rng = np.random.default_rng(seed)
    lo = rng.uniform(-1, 1, n + 1)
    hi = lo + rng.uniform(0, 1, n + 1)
    from bernakr._kernels import basis_row, kahan_dot

    row = basis_row(n, x)
    assert kahan_dot(lo, row) <= kahan_dot(hi, row) + 1e-12


def test_fixed_function_sweep():
    # |B_{n,j}(e0) - 1| and |B_{n,j}(e_j) - x^j| small across degrees
    xs = np.linspace(0, 1, 101)
    for j in (2, 3, 5):
        ej = ScalarFunction.from_expression(f"x^{j}")
        for n in (j, j + 5, 30):
            ones = eval_akr_grid(E0, n, j, xs)
            assert np.max(np.abs(ones - 1.0)) < 1e-10
            fixed = eval_akr_grid(ej, n, j, xs)
            assert np.max(np.abs(fixed - xs**j)) < 1e-10


def test_direct_sum_agrees_with_decasteljau():
    # node-value lookup is exact at i/n, so B_n f has exactly these coefficients
    rng = np.random.default_rng(5)
    for n in (1, 13, 60):
        values = rng.uniform(-2, 2, n + 1)
        f = ScalarFunction.from_callables(
            lambda t, v=values, n=n: float(v[round(t * n)]), fd_fallback=False
        )
        for x in (0.0, 0.125, 0.5, 0.99, 1.0):
            direct = eval_bernstein_grid(f, n, [x])[0]
            dc = decasteljau_eval(values, x)
            assert abs(direct - dc) <= 1e-12 * (1 + abs(direct))
