"""Kernel selection: the compiled extension if importable, else the numpy twin.

Set REGULAB_PURE_PYTHON=1 to force the fallback.
"""
from __future__ import annotations

import os

from . import _fallback

BACKEND = "numpy"
_impl = _fallback
if not os.environ.get("REGULAB_PURE_PYTHON"):
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on the build
        _impl = _fallback

character_sum = _impl.character_sum
k3_direct_exact = _impl.k3_direct_exact
k3_direct_float = _impl.k3_direct_float
