"""Kernel backend selection: compiled extension when available, numpy twin
otherwise.  Override with PADSIM_KERNELS=numpy|compiled or the ``backend``
argument of the solver."""

import os
import warnings

from . import kernels_numpy

try:
    from . import _kernels as _compiled
except ImportError:
    _compiled = None


def available_backends():
    names = ["numpy"]
    if _compiled is not None:
        names.insert(0, "compiled")
    return names


def get_backend(name: str | None = None):
    """Return the kernel module for ``name`` (or the best available)."""
    if name in (None, "auto"):
        name = os.environ.get("PADSIM_KERNELS", "auto")
    if name in (None, "auto"):
        return _compiled if _compiled is not None else kernels_numpy
    if name == "numpy":
        return kernels_numpy
    if name == "compiled":
        if _compiled is None:
            warnings.warn(
                "compiled kernels unavailable (extension not built); "
                "falling back to numpy"
            )
            return kernels_numpy
        return _compiled
    raise ValueError(f"unknown kernel backend {name!r}")
