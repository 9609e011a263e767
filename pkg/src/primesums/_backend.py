"""Kernel selection.

The compiled extension is used when importable; set ``PRIMESUMS_PURE=1``
to force the numpy fallback.
"""
from __future__ import annotations

import os

if os.environ.get("PRIMESUMS_PURE", "") not in ("", "0"):
    from primesums import _kernels_py as kernels
    BACKEND = "python"
else:
    try:
        from primesums import _kernels as kernels
        BACKEND = "cython"
    except ImportError:
        from primesums import _kernels_py as kernels
        BACKEND = "python"

__all__ = ["kernels", "BACKEND"]
