"""Kernel dispatch: the compiled extension when importable, numpy otherwise.

Set ``HCLASS_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

_FORCE_PURE = os.environ.get("HCLASS_PURE_PYTHON", "") not in ("", "0")

try:
    if _FORCE_PURE:
        raise ImportError("pure python requested")
    from . import _kernels as _impl  # type: ignore[attr-defined]

    BACKEND = "cython"
except ImportError:
    _impl = _kernels_py
    BACKEND = "python"

kloosterman_brute = _impl.kloosterman_brute
unit_kloosterman_brute = _impl.unit_kloosterman_brute
lattice_sum_F0 = _impl.lattice_sum_F0
sqrt_count_scan = _impl.sqrt_count_scan

__all__ = [
    "BACKEND",
    "kloosterman_brute",
    "unit_kloosterman_brute",
    "lattice_sum_F0",
    "sqrt_count_scan",
]
