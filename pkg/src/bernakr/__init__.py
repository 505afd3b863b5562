"""Bernstein and Aldaz-Kounchev-Render (AKR) operators on [0,1] and [0,1]^2.

Evaluation of B_n, B_{n,j} and their tensor products, the closed-form error
bounds relating them, grid-certified membership tests for the function
classes on which one operator beats the other, Voronovskaja-limit probes,
and reproduction of the associated error tables and figure data.
"""

from bernakr._kernels import BACKEND
from bernakr.calculus import (
    BivariateFunction,
    Dual2,
    GridSpec,
    ScalarFunction,
    eval_dual,
    eval_value,
    finite_diff_2,
    integrate_1d,
    parse_expression,
)
from bernakr.errors import (
    BernakrError,
    DomainEvalError,
    ExpressionError,
    NumericalError,
    PreconditionError,
    QuadratureError,
)
from bernakr.operators import (
    AkrNodes,
    GeneralizedOperatorSpec,
    OperatorSpec,
    akr_nodes,
    bernstein_basis,
    decasteljau_eval,
    eval_akr,
    eval_akr_2d,
    eval_bernstein,
    eval_bernstein_2d,
    eval_generalized,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "AkrNodes",
    "BernakrError",
    "BivariateFunction",
    "DomainEvalError",
    "Dual2",
    "ExpressionError",
    "GeneralizedOperatorSpec",
    "GridSpec",
    "NumericalError",
    "OperatorSpec",
    "PreconditionError",
    "QuadratureError",
    "ScalarFunction",
    "akr_nodes",
    "bernstein_basis",
    "decasteljau_eval",
    "eval_akr",
    "eval_akr_2d",
    "eval_bernstein",
    "eval_bernstein_2d",
    "eval_dual",
    "eval_generalized",
    "eval_value",
    "finite_diff_2",
    "integrate_1d",
    "parse_expression",
    "__version__",
]
