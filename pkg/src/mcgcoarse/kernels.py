"""Kernel selection: compiled extension when available, pure Python otherwise.

Set MCGCOARSE_PURE=1 to force the pure-Python kernel.
"""

import os

if os.environ.get("MCGCOARSE_PURE"):
    from . import _kernel_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _kernel as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import _kernel_py as _impl

        BACKEND = "python"

slope_reduce = _impl.slope_reduce
slope_det = _impl.slope_det
twist_slope = _impl.twist_slope
farey_distance = _impl.farey_distance
annular_coord = _impl.annular_coord
