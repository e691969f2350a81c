"""Kernel backend selection.

The compiled extension is preferred when importable; setting the environment
variable ``VCLOCK_PURE`` to a non-empty value other than ``0`` forces the
pure-Python kernels. The choice is made once at import.
"""

import os

if os.environ.get("VCLOCK_PURE", "0") not in ("", "0"):
    from . import _kernels_py as kernels

    BACKEND = "pure"
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        from . import _kernels_py as kernels  # type: ignore[no-redef]

        BACKEND = "pure"


def backend_name() -> str:
    """Name of the kernel backend in use: 'compiled' or 'pure'."""
    return BACKEND
