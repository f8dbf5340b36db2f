"""Select the kernel implementation once, at import.

The compiled extension is preferred; set ``DEPCORR_PURE_PYTHON=1`` to force
the numpy fallback (useful for benchmarking and for debugging).
"""
import os

if os.environ.get("DEPCORR_PURE_PYTHON", "").strip() not in ("", "0"):
    from . import _kernels_py as kernels

    BACKEND = "python"
else:
    try:
        from . import _kernels as kernels

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on the build
        from . import _kernels_py as kernels

        BACKEND = "python"

__all__ = ["BACKEND", "kernels"]
