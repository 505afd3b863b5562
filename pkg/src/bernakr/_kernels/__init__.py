"""Kernel backend selection.

The compiled Cython lane is preferred when its extension module built; the
pure-Python lane is the fallback.  Both lanes implement the same operation
sequence and return bit-identical doubles.  Set ``BERNAKR_KERNEL=pure`` or
``BERNAKR_KERNEL=compiled`` to force a lane at import time.
"""

import os

_choice = os.environ.get("BERNAKR_KERNEL", "auto").strip().lower()

if _choice in ("auto", ""):
    try:
        from bernakr._kernels import _fast as _impl
    except ImportError:
        from bernakr._kernels import _pure as _impl
elif _choice == "compiled":
    from bernakr._kernels import _fast as _impl
elif _choice == "pure":
    from bernakr._kernels import _pure as _impl
else:
    raise ImportError(
        f"BERNAKR_KERNEL={_choice!r} not understood (use 'auto', 'pure' or 'compiled')"
    )

BACKEND = _impl.BACKEND
basis_row = _impl.basis_row
kahan_dot = _impl.kahan_dot
decasteljau = _impl.decasteljau
grid_eval_1d = _impl.grid_eval_1d
grid_eval_2d = _impl.grid_eval_2d


def available_backends():
    """Importable kernel lanes, keyed by name (for benchmarks and tests)."""
    from bernakr._kernels import _pure

    lanes = {"pure": _pure}
    try:
        from bernakr._kernels import _fast

        lanes["compiled"] = _fast
    except ImportError:
        pass
    return lanes
