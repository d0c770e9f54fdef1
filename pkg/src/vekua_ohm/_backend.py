"""Select the kernel implementation at import time.

The compiled ``_kernels`` extension is preferred; ``_kernels_py`` is the
fallback. Set ``VEKUA_OHM_PURE=1`` to force the pure-Python kernels.
"""
import os

if os.environ.get("VEKUA_OHM_PURE", "") not in ("", "0"):
    from . import _kernels_py as kernels
    BACKEND = "python"
else:
    try:
        from . import _kernels as kernels
        BACKEND = "compiled"
    except ImportError:
        from . import _kernels_py as kernels
        BACKEND = "python"

__all__ = ["kernels", "BACKEND"]
