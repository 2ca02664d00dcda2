"""Pure-Python/numpy versions of the compiled kernels, with identical results."""
from __future__ import annotations

import numpy as np


def rref_mod_p(A: np.ndarray, p: int) -> tuple[int, np.ndarray, np.ndarray]:
    """Reduced row echelon form mod ``p`` in place; see the compiled twin."""
    nr, nc = A.shape
    order = np.arange(nr, dtype=np.int64)
    r = 0
    pcols: list[int] = []
    prows: list[int] = []
    for c in range(nc):
        if r == nr:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
            order[[r, piv]] = order[[piv, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r, c:] = (A[r, c:] * inv) % p
        f = A[:, c].copy()
        f[r] = 0
        rows = np.flatnonzero(f)
        if rows.size:
            A[np.ix_(rows, np.arange(c, nc))] = (
                A[np.ix_(rows, np.arange(c, nc))] - np.outer(f[rows], A[r, c:]) % p
            ) % p
        pcols.append(c)
        prows.append(int(order[r]))
        r += 1
    return r, np.array(pcols, dtype=np.int64), np.array(prows, dtype=np.int64)


def rank_mod_p(A: np.ndarray, p: int) -> int:
    nr, nc = A.shape
    r = 0
    for c in range(nc):
        if r == nr:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv], c:] = A[[piv, r], c:]
        inv = pow(int(A[r, c]), -1, p)
        A[r, c:] = (A[r, c:] * inv) % p
        below = A[r + 1 :, c]
        rows = np.flatnonzero(below) + r + 1
        if rows.size:
            sub = A[rows, c:]
            A[rows, c:] = (sub - np.outer(A[rows, c], A[r, c:]) % p) % p
        r += 1
    return r


def expand_arrangements(
    codes: np.ndarray, lengths: np.ndarray, counts: np.ndarray, total: int
) -> np.ndarray:
    q = len(codes)
    shifts = [4 * int(x) for x in lengths]
    cds = [int(x) for x in codes]
    left = [int(x) for x in counts]
    nslots = sum(left)
    out: list[int] = []

    def rec(depth: int, acc: int) -> None:
        if depth == nslots:
            out.append(acc)
            return
        for k in range(q):
            if left[k]:
                left[k] -= 1
                rec(depth + 1, (acc << shifts[k]) | cds[k])
                left[k] += 1

    rec(0, 0)
    if len(out) != total:
        raise ValueError("arrangement count mismatch")
    return np.array(out, dtype=np.int64)
