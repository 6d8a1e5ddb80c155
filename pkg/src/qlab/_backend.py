"""Select the kernel implementation once, at import.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
pure-Python ``_pykernels``.  Setting ``QLAB_PURE_PYTHON=1`` forces the
fallback.
"""
import os

from . import _pykernels

if os.environ.get("QLAB_PURE_PYTHON", "").strip() not in ("", "0"):
    kernels = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as kernels
        BACKEND = "cython"
    except ImportError:
        kernels = _pykernels
        BACKEND = "python"

OK = _pykernels.OK
NO_CONVERGENCE = _pykernels.NO_CONVERGENCE
POLE = _pykernels.POLE
