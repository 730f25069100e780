"""Kernel backend selection.

The compiled extension is preferred; the pure-numpy module is the fallback.
Set VQEMAXCUT_FORCE_PYTHON_KERNELS=1 to force the fallback (used by tests
and the kernel benchmark).
"""

import os

from . import _kernels_py

if os.environ.get("VQEMAXCUT_FORCE_PYTHON_KERNELS"):
    kernels = _kernels_py
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]
    except ImportError:
        kernels = _kernels_py

backend_name: str = kernels.BACKEND


def available_backends():
    """All importable kernel modules, compiled first."""
    out = []
    try:
        from . import _kernels

        out.append(_kernels)
    except ImportError:
        pass
    out.append(_kernels_py)
    return out
