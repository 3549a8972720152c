"""Kernel backend selection.

The hot loops (row reduction, modular matmul) exist twice: a compiled
Cython extension and a pure-Python fallback.  The compiled module is
preferred when present; set FPFUN_BACKEND=python or FPFUN_BACKEND=cython
to force a choice.  Both backends implement the same deterministic
algorithm and return bit-identical results.
"""

from __future__ import annotations

import os

import numpy as np

from . import kernels_py

_compiled = None
_forced = os.environ.get("FPFUN_BACKEND", "").strip().lower()
if _forced != "python":
    try:
        from . import _kernels as _compiled  # type: ignore[no-redef]
    except ImportError:
        _compiled = None
        if _forced == "cython":
            raise ImportError(
                "FPFUN_BACKEND=cython but fpfun._core._kernels is not built")

BACKEND = "cython" if _compiled is not None else "python"


def _use_compiled(arr: np.ndarray, p: int) -> bool:
    return (_compiled is not None and arr.dtype == np.int64
            and p < kernels_py.INT64_MAX_PRIME)


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    if _use_compiled(a, p):
        return _compiled.rref(a, p)
    return kernels_py.rref(a, p)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if _use_compiled(a, p) and b.dtype == np.int64:
        return _compiled.matmul(a, b, p)
    return kernels_py.matmul(a, b, p)
