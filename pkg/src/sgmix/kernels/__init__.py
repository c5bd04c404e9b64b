"""Backend selection for the hot kernels.

The environment variable SGMIX_BACKEND picks the implementation:

    SGMIX_BACKEND=numba   numba-compiled loops (default when numba imports)
    SGMIX_BACKEND=numpy   pure-numpy fallback

Both backends expose the same two functions, closure_fields and
step_arrays, with identical signatures and arithmetic.
"""

import os

from .reference import (
    STATUS_BAD_DISCRIMINANT,
    STATUS_BAD_PRESSURE,
    STATUS_BAD_TEMPERATURE,
    STATUS_NONFINITE,
    STATUS_OK,
    STATUS_ZERO_DENSITY,
)

_requested = os.environ.get("SGMIX_BACKEND", "").strip().lower()
if _requested not in ("", "numba", "numpy"):
    raise ValueError(f"SGMIX_BACKEND must be 'numba' or 'numpy', got {_requested!r}")

if _requested == "numpy":
    from . import reference as _impl

    BACKEND = "numpy"
else:
    try:
        from . import fast as _impl

        BACKEND = "numba"
    except ImportError:
        if _requested == "numba":
            raise
        from . import reference as _impl

        BACKEND = "numpy"

closure_fields = _impl.closure_fields
step_arrays = _impl.step_arrays

__all__ = [
    "BACKEND",
    "closure_fields",
    "step_arrays",
    "STATUS_OK",
    "STATUS_NONFINITE",
    "STATUS_ZERO_DENSITY",
    "STATUS_BAD_DISCRIMINANT",
    "STATUS_BAD_PRESSURE",
    "STATUS_BAD_TEMPERATURE",
]
