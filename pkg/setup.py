"""Build script for the optional compiled FDTD kernels.

The package works without the extension (a pure-numpy kernel backend is
selected at import time); building it is strongly recommended for any
production-size grid.
"""

import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext = Extension(
        "padsim.fdtd._kernels",
        ["src/padsim/fdtd/_kernels.pyx"],
        include_dirs=[np.get_include()],
        # -ffp-contract=off keeps the compiled kernels bit-compatible with
        # the numpy backend (no FMA re-association).
        extra_compile_args=["-O3", "-fopenmp", "-ffp-contract=off"],
        extra_link_args=["-fopenmp"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    ext_modules = cythonize([ext], language_level=3)

setup(ext_modules=ext_modules)
