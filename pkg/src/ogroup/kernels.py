"""Kernel backend selection.

Prefers the compiled extension and falls back to the pure-Python twin.
Set ``OGROUP_PURE_PYTHON=1`` to force the fallback (used by the parity
tests and the benchmark).
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("OGROUP_PURE_PYTHON"):
    _impl = _kernels_py
    BACKEND = "pure"
else:
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "pure"

MAX_KERNEL_ORDER = _kernels_py.MAX_KERNEL_ORDER

closure_mask = _impl.closure_mask
all_subgroup_masks = _impl.all_subgroup_masks
normal_subgroup_masks = _impl.normal_subgroup_masks
search_morphisms = _impl.search_morphisms
canonical_encoding = _impl.canonical_encoding


def backend() -> str:
    """Name of the active kernel backend: ``compiled`` or ``pure``."""
    return BACKEND
