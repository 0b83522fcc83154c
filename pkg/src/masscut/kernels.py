"""Kernel backend selection.

The compiled extension is preferred when it imported cleanly; otherwise the
pure numpy fallback is used.  ``MASSCUT_BACKEND=python|cython`` forces a
choice (read once, at import time).  Both backends expose the same two
functions and agree to floating-point roundoff; per-process determinism
holds for whichever backend is active.
"""

import os

from . import _kernels_py

_requested = os.environ.get("MASSCUT_BACKEND", "auto").strip().lower()

if _requested in ("", "auto"):
    try:
        from . import _kernels as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"
elif _requested == "python":
    _impl = _kernels_py
    BACKEND = "python"
elif _requested == "cython":
    from . import _kernels as _impl

    BACKEND = "cython"
else:
    raise ValueError(f"MASSCUT_BACKEND must be 'auto', 'python' or 'cython', got {_requested!r}")

orthant_accumulate = _impl.orthant_accumulate
smoothed_orthant_measures = _impl.smoothed_orthant_measures


def get_backend():
    """Name of the active kernel backend, 'cython' or 'python'."""
    return BACKEND
