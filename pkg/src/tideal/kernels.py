"""Kernel dispatch: the compiled extension when importable, else the numpy fallback.

Set ``TIDEAL_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import os

import numpy as np

from . import _fallback

BACKEND = "python"
_impl = _fallback
if os.environ.get("TIDEAL_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled  # type: ignore[attr-defined]

        _impl = _compiled
        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on the build
        pass


def _prepare(A: np.ndarray, p: int, copy: bool) -> np.ndarray:
    arr = np.array(A, dtype=np.int64, order="C", copy=True) if copy else A
    if arr.dtype != np.int64 or not arr.flags.c_contiguous:
        arr = np.ascontiguousarray(arr, dtype=np.int64)
    np.remainder(arr, p, out=arr)
    return arr


def rref_mod_p(A: np.ndarray, p: int, copy: bool = True) -> tuple[np.ndarray, int, np.ndarray, np.ndarray]:
    """Return ``(R, rank, pivot_cols, pivot_rows)`` with R the RREF of A mod p."""
    arr = _prepare(A, p, copy)
    r, pcols, prows = _impl.rref_mod_p(arr, p)
    return arr, int(r), pcols, prows


def rank_mod_p(A: np.ndarray, p: int, copy: bool = True) -> int:
    arr = _prepare(A, p, copy)
    return int(_impl.rank_mod_p(arr, p))


def expand_arrangements(codes, lengths, counts, total: int) -> np.ndarray:
    return _impl.expand_arrangements(
        np.asarray(codes, dtype=np.int64),
        np.asarray(lengths, dtype=np.int64),
        np.asarray(counts, dtype=np.int64),
        int(total),
    )


def implementations():
    """Both backends that can be loaded here, keyed by name (used by the benchmark)."""
    out = {"python": _fallback}
    try:
        from . import _kernels as _compiled  # type: ignore[attr-defined]

        out["cython"] = _compiled
    except ImportError:  # pragma: no cover
        pass
    return out
