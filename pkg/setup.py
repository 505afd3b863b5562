import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("BERNAKR_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext = Extension(
            "bernakr._kernels._fast",
            ["src/bernakr/_kernels/_fast.pyx"],
            # -ffp-contract=off: the pure-Python lane is the reference; FMA
            # contraction would break bit-for-bit parity between the lanes.
            extra_compile_args=["-O2", "-ffp-contract=off"],
            optional=True,
        )
        ext_modules = cythonize([ext], language_level="3")

setup(ext_modules=ext_modules)
