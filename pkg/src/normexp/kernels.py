"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the pure-Python module.
Set ``NORMEXP_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels

try:
    if os.environ.get("NORMEXP_PURE_PYTHON"):
        raise ImportError("pure Python forced")
    from . import _ckernels as _active
    BACKEND = "cython"
except ImportError:
    _active = _pykernels
    BACKEND = "python"

defeasible_fixpoint = _active.defeasible_fixpoint
neighborhood_classes = _active.neighborhood_classes
IMPOSSIBLE = _pykernels.IMPOSSIBLE


def backends() -> dict:
    """Every importable backend by name, for cross-checking and benchmarks."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels
        out["cython"] = _ckernels
    except ImportError:
        pass
    return out
