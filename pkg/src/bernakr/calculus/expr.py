"""Expression parsing and evaluation.

Grammar (precedence climbing, loosest to tightest):

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' unary)?          # right-associative
    atom    := number | name | name '(' expr ')' | '(' expr ')'

Names: variables (as allowed by the caller), constants ``pi`` and ``e``, and
the unary functions sin, cos, tan, exp, ln, sqrt.  Numbers are decimal
literals.  '^' binds tighter than unary minus, so ``-x^2 == -(x^2)``.
"""

import math
from dataclasses import dataclass

from bernakr.calculus.dual import Dual2
from bernakr.errors import DomainEvalError, ExpressionError

FUNCTIONS = ("sin", "cos", "tan", "exp", "ln", "sqrt")
NAMED_CONSTANTS = {"pi": math.pi, "e": math.e}


@dataclass(frozen=True)
class Const:
    value: float


@dataclass(frozen=True)
class NamedConst:
    name: str


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Unary:
    op: str  # 'neg' or a function name
    arg: "Node"


@dataclass(frozen=True)
class Binary:
    op: str  # '+', '-', '*', '/', '^'
    left: "Node"
    right: "Node"


Node = Const | NamedConst | Var | Unary | Binary


def _tokenize(src):
    tokens = []  # (kind, text, position)
    i, n = 0, len(src)
    while i < n:
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and src[i + 1].isdigit()):
            start = i
            while i < n and src[i].isdigit():
                i += 1
            if i < n and src[i] == ".":
                i += 1
                while i < n and src[i].isdigit():
                    i += 1
            tokens.append(("num", src[start:i], start))
            continue
        if ch.isalpha() or ch == "_":
            start = i
            while i < n and (src[i].isalnum() or src[i] == "_"):
                i += 1
            tokens.append(("name", src[start:i], start))
            continue
        if ch in "+-*/^()":
            tokens.append(("op", ch, i))
            i += 1
            continue
        raise ExpressionError(f"unexpected character {ch!r}", i)
    return tokens


class _Parser:
    def __init__(self, tokens, variables, src):
        self.tokens = tokens
        self.pos = 0
        self.variables = tuple(variables)
        self.src = src

    def _peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _next(self):
        tok = self._peek()
        if tok is None:
            raise ExpressionError("unexpected end of input", len(self.src))
        self.pos += 1
        return tok

    def _expect(self, text):
        tok = self._next()
        if tok[0] != "op" or tok[1] != text:
            raise ExpressionError(f"expected {text!r}, found {tok[1]!r}", tok[2])

    def parse(self):
        node = self.expr()
        tok = self._peek()
        if tok is not None:
            raise ExpressionError(f"unexpected trailing token {tok[1]!r}", tok[2])
        return node

    def expr(self):
        node = self.term()
        while (tok := self._peek()) and tok[0] == "op" and tok[1] in "+-":
            self.pos += 1
            node = Binary(tok[1], node, self.term())
        return node

    def term(self):
        node = self.unary()
        while (tok := self._peek()) and tok[0] == "op" and tok[1] in "*/":
            self.pos += 1
            node = Binary(tok[1], node, self.unary())
        return node

    def unary(self):
        tok = self._peek()
        if tok and tok[0] == "op" and tok[1] == "-":
            self.pos += 1
            return Unary("neg", self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        tok = self._peek()
        if tok and tok[0] == "op" and tok[1] == "^":
            self.pos += 1
            # exponent re-enters at the unary level: 'x^-2' and right
            # associativity of 'x^2^3' both come out of this
            return Binary("^", base, self.unary())
        return base

    def atom(self):
        tok = self._next()
        kind, text, at = tok
        if kind == "num":
            return Const(float(text))
        if kind == "name":
            if text in FUNCTIONS:
                self._expect("(")
                arg = self.expr()
                self._expect(")")
                return Unary(text, arg)
            if text in NAMED_CONSTANTS:
                self._maybe_call_error(text)
                return NamedConst(text)
            if text in self.variables:
                self._maybe_call_error(text)
                return Var(text)
            raise ExpressionError(f"unknown identifier {text!r}", at)
        if kind == "op" and text == "(":
            node = self.expr()
            self._expect(")")
            return node
        raise ExpressionError(f"unexpected token {text!r}", at)

    def _maybe_call_error(self, name):
        tok = self._peek()
        if tok and tok[0] == "op" and tok[1] == "(":
            raise ExpressionError(f"{name!r} is not a function", tok[2])


def parse_expression(src, variables=("x",)):
    """Parse ``src`` into an AST using the given allowed variable names."""
    if not src or not src.strip():
        raise ExpressionError("empty expression", 0)
    return _Parser(_tokenize(src), variables, src).parse()


def to_string(node):
    """Render an AST; parenthesized so that print-then-parse round-trips."""
    if isinstance(node, Const):
        return repr(node.value)
    if isinstance(node, NamedConst):
        return node.name
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Unary):
        if node.op == "neg":
            return f"(-{to_string(node.arg)})"
        return f"{node.op}({to_string(node.arg)})"
    return f"({to_string(node.left)}{node.op}{to_string(node.right)})"


def variables_of(node):
    """Variable names appearing in the tree."""
    if isinstance(node, Var):
        return {node.name}
    if isinstance(node, Unary):
        return variables_of(node.arg)
    if isinstance(node, Binary):
        return variables_of(node.left) | variables_of(node.right)
    return set()


def eval_value(node, env):
    """Evaluate with plain floats; env maps variable name -> value."""
    if isinstance(node, Const):
        return node.value
    if isinstance(node, NamedConst):
        return NAMED_CONSTANTS[node.name]
    if isinstance(node, Var):
        return env[node.name]
    if isinstance(node, Unary):
        v = eval_value(node.arg, env)
        try:
            if node.op == "neg":
                return -v
            if node.op == "sin":
                return math.sin(v)
            if node.op == "cos":
                return math.cos(v)
            if node.op == "tan":
                return math.tan(v)
            if node.op == "exp":
                return math.exp(v)
            if node.op == "ln":
                if v <= 0.0:
                    raise DomainEvalError("ln of non-positive value")
                return math.log(v)
            if node.op == "sqrt":
                if v < 0.0:
                    raise DomainEvalError("sqrt of negative value")
                return math.sqrt(v)
        except DomainEvalError as exc:
            if exc.subexpr is None:
                raise DomainEvalError(str(exc), to_string(node)) from None
            raise
        raise ExpressionError(f"unknown operator {node.op!r}")
    op = node.op
    l = eval_value(node.left, env)
    r = eval_value(node.right, env)
    try:
        if op == "+":
            return l + r
        if op == "-":
            return l - r
        if op == "*":
            return l * r
        if op == "/":
            if r == 0.0:
                raise DomainEvalError("division by zero")
            return l / r
        if op == "^":
            if l < 0.0 and r != int(r):
                raise DomainEvalError("negative base with non-integer exponent")
            if l == 0.0 and r < 0.0:
                raise DomainEvalError("zero base with negative exponent")
            return math.pow(l, r)
    except DomainEvalError as exc:
        if exc.subexpr is None:
            raise DomainEvalError(str(exc), to_string(node)) from None
        raise
    raise ExpressionError(f"unknown operator {op!r}")


def eval_dual(node, env):
    """Evaluate with Dual2 values; env maps variable name -> Dual2.

    Every variable of the tree must be assigned.  Domain failures are
    re-raised with the offending sub-expression attached.
    """
    missing = variables_of(node) - set(env)
    if missing:
        raise ExpressionError(f"unassigned variables: {sorted(missing)}")
    return _eval_dual(node, env)


def _eval_dual(node, env):
    if isinstance(node, Const):
        return Dual2.constant(node.value)
    if isinstance(node, NamedConst):
        return Dual2.constant(NAMED_CONSTANTS[node.name])
    if isinstance(node, Var):
        return env[node.name]
    try:
        if isinstance(node, Unary):
            u = _eval_dual(node.arg, env)
            if node.op == "neg":
                return -u
            return getattr(u, node.op)()
        l = _eval_dual(node.left, env)
        r = _eval_dual(node.right, env)
        if node.op == "+":
            return l + r
        if node.op == "-":
            return l - r
        if node.op == "*":
            return l * r
        if node.op == "/":
            return l / r
        if node.op == "^":
            return l.pow(r)
    except DomainEvalError as exc:
        if exc.subexpr is None:
            raise DomainEvalError(str(exc), to_string(node)) from None
        raise
    raise ExpressionError(f"unknown operator {node.op!r}")
