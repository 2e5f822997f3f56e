"""Backend selection for the grid kernels.

The compiled extension is preferred; the pure-numpy module is a drop-in
fallback.  Set PADE_FORGE_FORCE_PYTHON=1 to force the fallback (used by
the benchmark and by CI environments without a compiler).
"""

import os

from . import _pykernels

if os.environ.get("PADE_FORGE_FORCE_PYTHON"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

horner_eval = _impl.horner_eval
rational_eval = _impl.rational_eval
smallest_partial_sum_order = _impl.smallest_partial_sum_order

__all__ = [
    "BACKEND",
    "horner_eval",
    "rational_eval",
    "smallest_partial_sum_order",
]
