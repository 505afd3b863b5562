"""Exception hierarchy.

The CLI maps these onto distinct exit codes: expression problems are exit 2,
precondition violations exit 3, numerical failures exit 4.
"""


class BernakrError(Exception):
    """Base class for all library errors."""


class ExpressionError(BernakrError):
    """Malformed expression text: syntax error, unknown name, bad arity."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class PreconditionError(BernakrError, ValueError):
    """An argument violates a documented precondition."""


class NumericalError(BernakrError, ArithmeticError):
    """A computation failed numerically."""


class QuadratureError(NumericalError):
    """Adaptive quadrature hit the subdivision cap without converging."""


class DomainEvalError(NumericalError):
    """Evaluation left the real domain (ln of non-positive, sqrt of negative,
    division by zero); carries the offending sub-expression text."""

    def __init__(self, message, subexpr=None):
        if subexpr is not None:
            message = f"{message} in '{subexpr}'"
        super().__init__(message)
        self.subexpr = subexpr
