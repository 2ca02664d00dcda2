# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: dense elimination mod p and multiset word expansion."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()


def rref_mod_p(cnp.ndarray[int64_t, ndim=2] A not None, int64_t p):
    """Reduce ``A`` (C-contiguous, entries in [0, p)) to reduced row echelon form in place.

    Rows are scanned in their original order, so the returned pivot rows are
    the lexicographically first maximal independent subset.
    Returns ``(rank, pivot_cols, pivot_rows)``.
    """
    cdef Py_ssize_t nr = A.shape[0], nc = A.shape[1]
    cdef int64_t[:, ::1] a = A
    cdef int64_t[::1] order = np.arange(nr, dtype=np.int64)
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef int64_t inv, f, tmp, x
    pcols = []
    prows = []
    for c in range(nc):
        if r == nr:
            break
        piv = -1
        for i in range(r, nr):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(nc):
                tmp = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = tmp
            tmp = order[r]
            order[r] = order[piv]
            order[piv] = tmp
        inv = _inv_mod(a[r, c], p)
        for j in range(c, nc):
            a[r, j] = (a[r, j] * inv) % p
        for i in range(nr):
            if i == r:
                continue
            f = a[i, c]
            if f == 0:
                continue
            for j in range(c, nc):
                x = a[r, j]
                if x != 0:
                    a[i, j] = (a[i, j] - f * x) % p
                    if a[i, j] < 0:
                        a[i, j] += p
        pcols.append(c)
        prows.append(order[r])
        r += 1
    return r, np.array(pcols, dtype=np.int64), np.array(prows, dtype=np.int64)


def rank_mod_p(cnp.ndarray[int64_t, ndim=2] A not None, int64_t p):
    """Rank mod ``p`` by forward elimination only (A is overwritten)."""
    cdef Py_ssize_t nr = A.shape[0], nc = A.shape[1]
    cdef int64_t[:, ::1] a = A
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef int64_t inv, f, tmp, x
    for c in range(nc):
        if r == nr:
            break
        piv = -1
        for i in range(r, nr):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, nc):
                tmp = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = tmp
        inv = _inv_mod(a[r, c], p)
        for j in range(c, nc):
            a[r, j] = (a[r, j] * inv) % p
        for i in range(r + 1, nr):
            f = a[i, c]
            if f == 0:
                continue
            for j in range(c, nc):
                x = a[r, j]
                if x != 0:
                    a[i, j] = (a[i, j] - f * x) % p
                    if a[i, j] < 0:
                        a[i, j] += p
        r += 1
    return r


cdef int64_t _inv_mod(int64_t a, int64_t p):
    cdef int64_t t = 0, newt = 1, r = p, newr = a % p, q, tmp
    if newr < 0:
        newr += p
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def expand_arrangements(cnp.ndarray[int64_t, ndim=1] codes not None,
                        cnp.ndarray[int64_t, ndim=1] lengths not None,
                        cnp.ndarray[int64_t, ndim=1] counts not None,
                        int64_t total):
    """Concatenate every distinct arrangement of a multiset of packed words.

    ``codes[i]`` packs a word with 4 bits per letter, ``lengths[i]`` is its
    letter count and ``counts[i]`` its multiplicity. ``total`` is the number of
    distinct arrangements (the multinomial coefficient), used to size the output.
    """
    cdef Py_ssize_t q = codes.shape[0]
    cdef Py_ssize_t nslots = 0, i
    for i in range(q):
        nslots += counts[i]
    out = np.empty(total, dtype=np.int64)
    cdef int64_t[::1] o = out
    cdef int64_t[::1] cd = np.ascontiguousarray(codes)
    cdef int64_t[::1] sh = np.ascontiguousarray(lengths) * 4
    cdef int64_t[::1] left = np.array(counts, dtype=np.int64)
    cdef int64_t[::1] choice = np.full(nslots + 1, -1, dtype=np.int64)
    cdef int64_t[::1] acc = np.zeros(nslots + 1, dtype=np.int64)
    cdef Py_ssize_t depth = 0, written = 0
    cdef int64_t k
    # iterative depth-first search over slot choices
    while depth >= 0:
        if depth == nslots:
            if written >= total:
                raise ValueError("arrangement count mismatch")
            o[written] = acc[depth]
            written += 1
            depth -= 1
            if depth >= 0:
                left[choice[depth]] += 1
            continue
        k = choice[depth] + 1
        while k < q and left[k] == 0:
            k += 1
        if k >= q:
            choice[depth] = -1
            depth -= 1
            if depth >= 0:
                left[choice[depth]] += 1
            continue
        choice[depth] = k
        left[k] -= 1
        acc[depth + 1] = (acc[depth] << sh[k]) | cd[k]
        depth += 1
    if written != total:
        raise ValueError("arrangement count mismatch")
    return out
