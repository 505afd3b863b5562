"""Bernstein basis, AKR nodes, and the operators built on them.

Univariate: the classical Bernstein operator B_n sampling f at i/n, and the
AKR operator B_{n,j} sampling f at the shifted nodes

    t_{n,k}^j = ( k(k-1)...(k-j+1) / n(n-1)...(n-j+1) )^(1/j),

which make B_{n,j} fix 1 and x^j exactly.  Bivariate versions are tensor
products acting separately in x and y.  All operator sums run through the
kernel lane: basis by triangular recurrence, compensated summation in
ascending node order, so results are reproducible bit for bit.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from bernakr import _kernels
from bernakr.errors import PreconditionError

__all__ = [
    "AkrNodes",
    "GeneralizedOperatorSpec",
    "OperatorSpec",
    "akr_node_ratio",
    "akr_nodes",
    "bernstein_basis",
    "decasteljau_eval",
    "eval_akr",
    "eval_akr_2d",
    "eval_akr_2d_grid",
    "eval_akr_grid",
    "eval_bernstein",
    "eval_bernstein_2d",
    "eval_bernstein_2d_grid",
    "eval_bernstein_grid",
    "eval_generalized",
    "operator_grid",
    "operator_nodes",
    "uniform_nodes",
]


def _check_x(x):
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise PreconditionError(f"evaluation point {x:g} outside [0, 1]")
    return x


def _check_degree(n):
    n = int(n)
    if n < 1:
        raise PreconditionError("degree must be at least 1")
    return n


def _check_akr(n, j):
    n, j = int(n), int(j)
    if j < 2:
        raise PreconditionError("AKR exponent j must be at least 2 (j = 1 is the Bernstein operator)")
    if n < j:
        raise PreconditionError(f"AKR degree must satisfy n >= j, got n={n}, j={j}")
    return n, j


@dataclass(frozen=True)
class OperatorSpec:
    """Which operator to apply: Bernstein or AKR, degrees, AKR exponent."""

    kind: str  # "bernstein" or "akr"
    n: int
    m: int = None
    j: int = None

    def __post_init__(self):
        if self.kind not in ("bernstein", "akr"):
            raise PreconditionError(f"unknown operator kind {self.kind!r}")
        _check_degree(self.n)
        if self.m is not None:
            _check_degree(self.m)
        if self.kind == "akr":
            if self.j is None:
                raise PreconditionError("AKR operator needs an exponent j")
            _check_akr(self.n, self.j)
            if self.m is not None:
                _check_akr(self.m, self.j)

    @property
    def bivariate(self):
        return self.m is not None

    def label(self):
        parts = [str(self.n)]
        if self.m is not None:
            parts.append(str(self.m))
        if self.kind == "akr":
            parts.append(str(self.j))
        return "B_" + "_".join(parts)


@dataclass(frozen=True)
class AkrNodes:
    """AKR node vector t_{n,k}^j, k = 0..n; zero for k < j, one at k = n."""

    n: int
    j: int
    nodes: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class GeneralizedOperatorSpec:
    """Bernstein-type operator with arbitrary nodes and positive weights."""

    nodes: np.ndarray
    weights: np.ndarray
    n: int

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if nodes.shape != (self.n + 1,) or weights.shape != (self.n + 1,):
            raise PreconditionError("nodes and weights must both have length n + 1")
        if np.any(weights <= 0.0):
            raise PreconditionError("weights must be strictly positive")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)


def bernstein_basis(n, x):
    """All basis values p_{n,i}(x) = C(n,i) x^i (1-x)^(n-i), i = 0..n."""
    n = int(n)
    if n < 0:
        raise PreconditionError("degree must be non-negative")
    return _kernels.basis_row(n, _check_x(x))


def uniform_nodes(n):
    """Bernstein sampling nodes i/n."""
    n = _check_degree(n)
    return np.array([i / n for i in range(n + 1)])


def akr_node_ratio(n, j, k):
    """Exact integer pair (num, den) with t_{n,k}^j = (num/den)^(1/j).

    Python integers are exact at any size, so the falling-factorial products
    need no overflow guard.
    """
    n, j = _check_akr(n, j)
    num = math.prod(range(k, k - j, -1)) if k >= j else 0
    den = math.prod(range(n, n - j, -1))
    return num, den


def akr_nodes(n, j):
    """AKR nodes for degree n and exponent j >= 2 (requires n >= j)."""
    n, j = _check_akr(n, j)
    nodes = np.empty(n + 1)
    den = float(math.prod(range(n, n - j, -1)))
    for k in range(n + 1):
        if k < j:
            nodes[k] = 0.0
        elif k == n:
            nodes[k] = 1.0
        else:
            num = float(math.prod(range(k, k - j, -1)))
            nodes[k] = (num / den) ** (1.0 / j)
    return AkrNodes(n, j, nodes)


def _values_1d(f, nodes):
    return np.array([f(t) for t in nodes.tolist()])


def _values_2d(f, xnodes, ynodes):
    ylist = ynodes.tolist()
    return np.array([[f(tx, ty) for ty in ylist] for tx in xnodes.tolist()])


def eval_bernstein(f, n, x):
    """B_n(f; x) = sum_i f(i/n) p_{n,i}(x)."""
    return eval_bernstein_grid(f, n, [_check_x(x)])[0]


def eval_bernstein_grid(f, n, xs):
    n = _check_degree(n)
    return _kernels.grid_eval_1d(_values_1d(f, uniform_nodes(n)), np.asarray(xs, dtype=float))


def eval_akr(f, n, j, x):
    """B_{n,j}(f; x) = sum_k f(t_{n,k}^j) p_{n,k}(x)."""
    return eval_akr_grid(f, n, j, [_check_x(x)])[0]


def eval_akr_grid(f, n, j, xs):
    nd = akr_nodes(n, j)
    return _kernels.grid_eval_1d(_values_1d(f, nd.nodes), np.asarray(xs, dtype=float))


def eval_bernstein_2d(f, n, m, x, y):
    """Tensor-product Bernstein value at one point of [0,1]^2."""
    return eval_bernstein_2d_grid(f, n, m, [_check_x(x)], [_check_x(y)])[0, 0]


def eval_bernstein_2d_grid(f, n, m, xs, ys):
    n, m = _check_degree(n), _check_degree(m)
    values = _values_2d(f, uniform_nodes(n), uniform_nodes(m))
    return _kernels.grid_eval_2d(values, np.asarray(xs, dtype=float), np.asarray(ys, dtype=float))


def eval_akr_2d(f, n, m, j, x, y):
    """Tensor-product AKR value at one point of [0,1]^2."""
    return eval_akr_2d_grid(f, n, m, j, [_check_x(x)], [_check_x(y)])[0, 0]


def eval_akr_2d_grid(f, n, m, j, xs, ys):
    ndx = akr_nodes(n, j)
    ndy = akr_nodes(m, j)
    values = _values_2d(f, ndx.nodes, ndy.nodes)
    return _kernels.grid_eval_2d(values, np.asarray(xs, dtype=float), np.asarray(ys, dtype=float))


def eval_generalized(f, spec: GeneralizedOperatorSpec, x):
    """sum_k f(t_{n,k}) alpha_{n,k} p_{n,k}(x) for arbitrary nodes/weights."""
    x = _check_x(x)
    values = _values_1d(f, spec.nodes) * spec.weights
    return _kernels.grid_eval_1d(values, np.array([x]))[0]


def decasteljau_eval(values, x):
    """Evaluate sum_k values[k] p_{n,k}(x) by the de Casteljau recurrence.

    Second, independent route to the same polynomial; used to cross-check the
    basis/compensated-sum route.
    """
    return _kernels.decasteljau(np.asarray(values, dtype=float), _check_x(x))


def operator_nodes(spec: OperatorSpec):
    """Sampling nodes of the operator, per axis."""
    if spec.kind == "bernstein":
        first = uniform_nodes(spec.n)
        second = uniform_nodes(spec.m) if spec.bivariate else None
    else:
        first = akr_nodes(spec.n, spec.j).nodes
        second = akr_nodes(spec.m, spec.j).nodes if spec.bivariate else None
    return (first, second) if spec.bivariate else (first,)


def operator_grid(f, spec: OperatorSpec, xs, ys=None):
    """Operator values over a grid: vector for 1-D specs, matrix for 2-D."""
    if spec.bivariate:
        if ys is None:
            ys = xs
        if spec.kind == "bernstein":
            return eval_bernstein_2d_grid(f, spec.n, spec.m, xs, ys)
        return eval_akr_2d_grid(f, spec.n, spec.m, spec.j, xs, ys)
    if spec.kind == "bernstein":
        return eval_bernstein_grid(f, spec.n, xs)
    return eval_akr_grid(f, spec.n, spec.j, xs)
