from bernakr.calculus.dual import Dual2
from bernakr.calculus.expr import (
    Binary,
    Const,
    NamedConst,
    Unary,
    Var,
    eval_dual,
    eval_value,
    parse_expression,
    to_string,
    variables_of,
)
from bernakr.calculus.functions import (
    ANALYTIC,
    FINITE_DIFF,
    BivariateFunction,
    GridSpec,
    ScalarFunction,
    sample_channel,
)
from bernakr.calculus.quadrature import finite_diff_1, finite_diff_2, integrate_1d

__all__ = [
    "ANALYTIC",
    "FINITE_DIFF",
    "Binary",
    "BivariateFunction",
    "Const",
    "Dual2",
    "GridSpec",
    "NamedConst",
    "ScalarFunction",
    "Unary",
    "Var",
    "eval_dual",
    "eval_value",
    "finite_diff_1",
    "finite_diff_2",
    "integrate_1d",
    "parse_expression",
    "sample_channel",
    "to_string",
    "variables_of",
]
