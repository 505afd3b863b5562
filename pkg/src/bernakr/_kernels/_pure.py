"""Pure-Python kernel lane.

Reference implementation of the hot numeric kernels.  The compiled lane in
``_fast.pyx`` mirrors these loops operation for operation; both lanes must
produce bit-identical doubles, so any change here has to be replicated there.
"""

import numpy as np

BACKEND = "pure"


def _basis_list(n, x):
    # Triangular (de Casteljau style) recurrence: only convex combinations of
    # non-negative terms, stable for every x in [0,1] including the endpoints.
    b = [0.0] * (n + 1)
    b[0] = 1.0
    u = 1.0 - x
    for r in range(1, n + 1):
        b[r] = x * b[r - 1]
        for i in range(r - 1, 0, -1):
            b[i] = x * b[i - 1] + u * b[i]
        b[0] = u * b[0]
    return b


def _kahan_dot(a, b):
    s = 0.0
    c = 0.0
    for k in range(len(a)):
        term = a[k] * b[k]
        y = term - c
        t = s + y
        c = (t - s) - y
        s = t
    return s


def basis_row(n, x):
    """All Bernstein basis values p_{n,0}(x) .. p_{n,n}(x)."""
    return np.array(_basis_list(int(n), float(x)))


def kahan_dot(a, b):
    """Compensated dot product, summed in ascending index order."""
    return _kahan_dot(
        [float(v) for v in np.asarray(a).ravel()],
        [float(v) for v in np.asarray(b).ravel()],
    )


def decasteljau(coeffs, x):
    """Evaluate sum_k c_k p_{n,k}(x) by repeated convex combination.

    Independent of the basis_row/kahan_dot route; used as a cross-check.
    """
    v = [float(c) for c in np.asarray(coeffs).ravel()]
    x = float(x)
    u = 1.0 - x
    n = len(v) - 1
    for r in range(1, n + 1):
        for i in range(n - r + 1):
            v[i] = u * v[i] + x * v[i + 1]
    return v[0]


def grid_eval_1d(values, xs):
    """Operator values sum_k values[k] p_{n,k}(x) for every x in xs."""
    vals = [float(v) for v in np.asarray(values).ravel()]
    n = len(vals) - 1
    xs = np.asarray(xs, dtype=float)
    out = np.empty(xs.shape[0])
    for idx, x in enumerate(xs.tolist()):
        out[idx] = _kahan_dot(vals, _basis_list(n, x))
    return out


def grid_eval_2d(values, xs, ys):
    """Tensor-product operator values over the grid xs × ys.

    Identical arithmetic to evaluating the double Kahan sum point by point
    (inner sum over the second axis, outer over the first); the inner sums
    depend only on y, so they are computed once per y instead of once per
    grid point.
    """
    values = np.asarray(values, dtype=float)
    rows = [[float(v) for v in row] for row in values]
    n = len(rows) - 1
    xs_l = [float(v) for v in np.asarray(xs, dtype=float)]
    ys_l = [float(v) for v in np.asarray(ys, dtype=float)]
    m = len(rows[0]) - 1

    bys = [_basis_list(m, y) for y in ys_l]
    inner = [[_kahan_dot(rows[i], by) for by in bys] for i in range(n + 1)]
    bxs = [_basis_list(n, x) for x in xs_l]

    out = np.empty((len(xs_l), len(ys_l)))
    for t in range(len(ys_l)):
        col = [inner[i][t] for i in range(n + 1)]
        for s in range(len(xs_l)):
            out[s, t] = _kahan_dot(col, bxs[s])
    return out
