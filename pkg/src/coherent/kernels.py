"""Selects the simplex kernel backend at import time.

The compiled extension is used when it was built; setting the environment
variable ``COHERENT_PURE_PYTHON=1`` forces the pure-Python fallback.
"""

import os

BACKEND = "python"

if os.environ.get("COHERENT_PURE_PYTHON", "") in ("", "0"):
    try:
        from ._ckernels import leaving_row, pivot

        BACKEND = "cython"
    except ImportError:
        from ._kernels_py import leaving_row, pivot
else:
    from ._kernels_py import leaving_row, pivot

__all__ = ["BACKEND", "leaving_row", "pivot"]
