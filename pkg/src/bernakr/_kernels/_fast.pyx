# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled kernel lane.

Mirrors ``_pure.py`` operation for operation; compiled with -ffp-contract=off
so that results stay bit-identical to the pure-Python lane.
"""

import numpy as np

BACKEND = "compiled"


cdef void _basis_into(double[::1] b, Py_ssize_t n, double x) noexcept:
    cdef double u = 1.0 - x
    cdef Py_ssize_t r, i
    b[0] = 1.0
    for r in range(1, n + 1):
        b[r] = x * b[r - 1]
        for i in range(r - 1, 0, -1):
            b[i] = x * b[i - 1] + u * b[i]
        b[0] = u * b[0]


cdef double _kahan(double[::1] a, double[::1] b) noexcept:
    cdef double s = 0.0, c = 0.0, term, y, t
    cdef Py_ssize_t k, nlen = a.shape[0]
    for k in range(nlen):
        term = a[k] * b[k]
        y = term - c
        t = s + y
        c = (t - s) - y
        s = t
    return s


def basis_row(n, x):
    """All Bernstein basis values p_{n,0}(x) .. p_{n,n}(x)."""
    cdef Py_ssize_t nn = int(n)
    out = np.zeros(nn + 1)
    cdef double[::1] b = out
    _basis_into(b, nn, float(x))
    return out


def kahan_dot(a, b):
    """Compensated dot product, summed in ascending index order."""
    cdef double[::1] av = np.ascontiguousarray(a, dtype=np.float64).ravel()
    cdef double[::1] bv = np.ascontiguousarray(b, dtype=np.float64).ravel()
    return _kahan(av, bv)


def decasteljau(coeffs, x):
    """Evaluate sum_k c_k p_{n,k}(x) by repeated convex combination."""
    arr = np.array(coeffs, dtype=np.float64).ravel()
    cdef double[::1] v = arr
    cdef double xx = float(x)
    cdef double u = 1.0 - xx
    cdef Py_ssize_t n = v.shape[0] - 1
    cdef Py_ssize_t r, i
    for r in range(1, n + 1):
        for i in range(n - r + 1):
            v[i] = u * v[i] + xx * v[i + 1]
    return v[0]


def grid_eval_1d(values, xs):
    """Operator values sum_k values[k] p_{n,k}(x) for every x in xs."""
    cdef double[::1] vals = np.ascontiguousarray(values, dtype=np.float64).ravel()
    cdef double[::1] xv = np.ascontiguousarray(xs, dtype=np.float64).ravel()
    cdef Py_ssize_t n = vals.shape[0] - 1
    cdef Py_ssize_t npts = xv.shape[0]
    out = np.empty(npts)
    cdef double[::1] ov = out
    basis = np.zeros(n + 1)
    cdef double[::1] bv = basis
    cdef Py_ssize_t idx
    for idx in range(npts):
        _basis_into(bv, n, xv[idx])
        ov[idx] = _kahan(vals, bv)
    return out


def grid_eval_2d(values, xs, ys):
    """Tensor-product operator values over the grid xs × ys.

    Same arithmetic as the point-by-point double Kahan sum; the y-only inner
    sums are hoisted out of the x loop.
    """
    cdef double[:, ::1] vals = np.ascontiguousarray(values, dtype=np.float64)
    cdef double[::1] xv = np.ascontiguousarray(xs, dtype=np.float64).ravel()
    cdef double[::1] yv = np.ascontiguousarray(ys, dtype=np.float64).ravel()
    cdef Py_ssize_t n = vals.shape[0] - 1
    cdef Py_ssize_t m = vals.shape[1] - 1
    cdef Py_ssize_t nx = xv.shape[0], ny = yv.shape[0]
    cdef Py_ssize_t s, t, i

    by_buf = np.zeros(m + 1)
    cdef double[::1] by = by_buf
    inner_buf = np.empty((n + 1, ny))
    cdef double[:, ::1] inner = inner_buf
    for t in range(ny):
        _basis_into(by, m, yv[t])
        for i in range(n + 1):
            inner[i, t] = _kahan(vals[i], by)

    bx_buf = np.zeros((nx, n + 1))
    cdef double[:, ::1] bx = bx_buf
    for s in range(nx):
        _basis_into(bx[s], n, xv[s])

    out = np.empty((nx, ny))
    cdef double[:, ::1] ov = out
    col_buf = np.empty(n + 1)
    cdef double[::1] col = col_buf
    for t in range(ny):
        for i in range(n + 1):
            col[i] = inner[i, t]
        for s in range(nx):
            ov[s, t] = _kahan(col, bx[s])
    return out
