"""Kernel backend selection.

The compiled Cython module is used when it was built; otherwise the numpy
implementation is used. Set ``CHIRALRET_BACKEND=python`` to force the
fallback (useful for benchmarking and cross-checking).
"""

import os

from . import _kernels_py

_requested = os.environ.get("CHIRALRET_BACKEND", "auto").lower()

_impl = _kernels_py
if _requested != "python":
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
    except ImportError:
        if _requested == "cython":
            raise

BACKEND = _impl.BACKEND
closed_terms = _impl.closed_terms
limit_grid = _impl.limit_grid
trace_terms = _impl.trace_terms


def available_backends():
    out = {"python": _kernels_py}
    try:
        from . import _ckernels
        out["cython"] = _ckernels
    except ImportError:
        pass
    return out
