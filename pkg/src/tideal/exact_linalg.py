"""Exact rank of sparse rational matrices.

Three tools:

* :func:`rank_exact` runs fraction-free integer elimination with Markowitz pivoting.
* :func:`rank_modular` computes ranks modulo random primes below 2^21. Each one
  is a lower bound on the rational rank. Large dense cases use blocked
  elimination whose updates are float64 matrix products, exact at that size.
* :func:`certified_rank` handles integer matrices streamed in row chunks. It
  pairs a modular lower bound with a multi-prime proof that every row lies in
  the span of the chosen basis, so the answer is exact.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt, lcm, prod
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np
import sympy

from . import kernels

PRIME_LOW = 1 << 25
PRIME_HIGH = 1 << 26
SMALL_PRIME_LOW = 1 << 20
SMALL_PRIME_HIGH = 1 << 21
_BLOCK = 128
_BLOCKED_MIN_ENTRIES = 250_000
_INNER_CHUNK = 1024


@dataclass
class SparseMatrix:
    """Rows of ``(column, value)`` pairs with strictly increasing columns and no zeros."""

    rows: list[list[tuple[int, Fraction | int]]]
    ncols: int

    def __post_init__(self) -> None:
        for row in self.rows:
            cols = [c for c, _ in row]
            if any(a >= b for a, b in zip(cols, cols[1:])):
                raise ValueError("column indices must be strictly increasing")
            if any(v == 0 for _, v in row):
                raise ValueError("explicit zero entry")
            if cols and not (0 <= cols[0] and cols[-1] < self.ncols):
                raise ValueError("column index out of range")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @classmethod
    def from_dicts(cls, rows: Iterable[dict[int, Fraction | int]], ncols: int) -> "SparseMatrix":
        return cls([sorted((c, v) for c, v in r.items() if v) for r in rows], ncols)

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[Fraction | int]]) -> "SparseMatrix":
        ncols = len(dense[0]) if dense else 0
        return cls([[(j, v) for j, v in enumerate(r) if v] for r in dense], ncols)

    def to_dense(self) -> list[list[Fraction | int]]:
        out = [[0] * self.ncols for _ in self.rows]
        for i, row in enumerate(self.rows):
            for c, v in row:
                out[i][c] = v
        return out

    def dump(self) -> str:
        """Triplet lines ``row col num/den`` (0-based indices)."""
        lines = []
        for i, row in enumerate(self.rows):
            for c, v in row:
                q = Fraction(v)
                lines.append(f"{i} {c} {q.numerator}/{q.denominator}")
        return "\n".join(lines)

    @classmethod
    def parse(cls, text: str, nrows: int, ncols: int) -> "SparseMatrix":
        rows: list[dict[int, Fraction]] = [dict() for _ in range(nrows)]
        for line in text.splitlines():
            if not line.strip():
                continue
            i, c, v = line.split()
            rows[int(i)][int(c)] = Fraction(v)
        return cls.from_dicts(rows, ncols)


def _integer_rows(M: SparseMatrix) -> list[dict[int, int]]:
    out = []
    for row in M.rows:
        if not row:
            continue
        den = lcm(*(Fraction(v).denominator for _, v in row))
        irow = {c: int(Fraction(v) * den) for c, v in row}
        g = 0
        for v in irow.values():
            g = gcd(g, v)
        out.append({c: v // g for c, v in irow.items()})
    return out


def rank_exact(M: SparseMatrix) -> int:
    """Rational rank via fraction-free elimination.

    Pivots minimise the Markowitz count (r-1)(c-1). Ties go to the lowest column,
    then the lowest row, so runs are reproducible.
    """
    rows: dict[int, dict[int, int]] = dict(enumerate(_integer_rows(M)))
    colidx: dict[int, set[int]] = {}
    for i, r in rows.items():
        for c in r:
            colidx.setdefault(c, set()).add(i)
    rank = 0
    while rows:
        best = None
        for c in sorted(colidx):
            cs = colidx[c]
            if not cs:
                continue
            for i in sorted(cs):
                cost = (len(rows[i]) - 1) * (len(cs) - 1)
                key = (cost, c, i)
                if best is None or key < best:
                    best = key
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        _, pc, pr = best
        prow = rows.pop(pr)
        for c in prow:
            colidx[c].discard(pr)
        pv = prow[pc]
        for i in sorted(colidx[pc]):
            row = rows[i]
            f = row[pc]
            for c in row:
                colidx[c].discard(i)
            new: dict[int, int] = {}
            for c, v in row.items():
                new[c] = pv * v
            for c, v in prow.items():
                new[c] = new.get(c, 0) - f * v
            new = {c: v for c, v in new.items() if v}
            g = 0
            for v in new.values():
                g = gcd(g, v)
                if g == 1:
                    break
            if g > 1:
                new = {c: v // g for c, v in new.items()}
            if new:
                rows[i] = new
                for c in new:
                    colidx.setdefault(c, set()).add(i)
            else:
                del rows[i]
        rank += 1
    return rank


def random_primes(
    count: int,
    seed: int | None = 0,
    exclude: Iterable[int] = (),
    low: int = PRIME_LOW,
    high: int = PRIME_HIGH,
) -> list[int]:
    """Distinct primes in [low, high), reproducible for a given seed."""
    rng = random.Random(seed)
    seen = set(exclude)
    out: list[int] = []
    while len(out) < count:
        p = int(sympy.nextprime(rng.randrange(low, high - 4096)))
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


def matmul_mod(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """A @ B mod p for entries in [0, p) with p < 2^26, without int64 overflow."""
    inner = A.shape[1]
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for s in range(0, inner, _INNER_CHUNK):
        out += (A[:, s : s + _INNER_CHUNK] @ B[s : s + _INNER_CHUNK]) % p
        out %= p
    return out


def _sparse_mod_p(M: SparseMatrix, p: int) -> tuple[list[np.ndarray], list[np.ndarray]] | None:
    cols, vals = [], []
    for row in M.rows:
        c = np.fromiter((x for x, _ in row), dtype=np.int64, count=len(row))
        v = []
        for _, x in row:
            q = Fraction(x)
            if q.denominator % p == 0:
                return None
            v.append(q.numerator * pow(q.denominator, -1, p) % p)
        cols.append(c)
        vals.append(np.array(v, dtype=np.int64))
    return cols, vals


def _dense_mod_p(M: SparseMatrix, p: int, rng: np.random.Generator) -> np.ndarray | None:
    """The matrix mod p, compressed by a random projection when very rectangular.

    Compression multiplies by a random matrix on the long side. The rank can only
    drop, so the result stays a valid lower bound.
    """
    data = _sparse_mod_p(M, p)
    if data is None:
        return None
    cols, vals = data
    nr, nc = M.nrows, M.ncols
    if nc > 2 * nr + 16:
        width = nr + 8
        out = np.zeros((nr, width), dtype=np.int64)
        for start in range(0, nc, 4096):
            R = rng.integers(0, p, size=(min(4096, nc - start), width), dtype=np.int64)
            for i, (c, v) in enumerate(zip(cols, vals)):
                sel = (c >= start) & (c < start + R.shape[0])
                if not sel.any():
                    continue
                cc, vv = c[sel] - start, v[sel]
                for s in range(0, len(cc), _INNER_CHUNK):
                    part = (vv[s : s + _INNER_CHUNK, None] * R[cc[s : s + _INNER_CHUNK]]) % p
                    out[i] = (out[i] + part.sum(axis=0)) % p
        return out
    if nr > 2 * nc + 16:
        # out = L @ M with L random; column i of L is drawn when row i is visited
        height = nc + 8
        out = np.zeros((height, nc), dtype=np.int64)
        for c, v in zip(cols, vals):
            col = rng.integers(0, p, size=(height, 1), dtype=np.int64)
            out[:, c] = (out[:, c] + col * v[None, :]) % p
        return out
    dense = np.zeros((nr, nc), dtype=np.int64)
    for i, (c, v) in enumerate(zip(cols, vals)):
        dense[i, c] = v
    return dense


def _fmod_inplace(X: np.ndarray, p: int) -> None:
    """X <- X mod p for integral float64 entries of magnitude below 2^52."""
    q = np.floor(X * (1.0 / p))
    X -= q * p
    X[X < 0] += p
    X[X >= p] -= p


def rank_mod_p_blocked(A: np.ndarray, p: int, block: int = _BLOCK) -> int:
    """Rank of A mod p (p < 2^21) by panel elimination with float64 Schur updates.

    Each panel is reduced by the integer kernel. The trailing update multiplies
    matrices with inner dimension at most ``block``, so every float64 dot
    product stays below 2^53 and is exact.
    """
    if p >= SMALL_PRIME_HIGH or block * (p - 1) ** 2 >= 1 << 52:
        raise ValueError("prime too large for exact float64 updates")
    X = np.remainder(np.asarray(A, dtype=np.int64), p).astype(np.float64)
    rank = 0
    while X.shape[0] and X.shape[1]:
        w = min(block, X.shape[1])
        _, k, pcols, prows = kernels.rref_mod_p(X[:, :w].astype(np.int64), p)
        rest = X[:, w:]
        if k:
            S = X[np.ix_(prows, pcols)].astype(np.int64)
            R, _, _, _ = kernels.rref_mod_p(np.hstack([S, np.eye(k, dtype=np.int64)]), p)
            Sinv = R[:, k:].astype(np.float64)
            N = Sinv @ rest[prows]
            _fmod_inplace(N, p)
            keep = np.ones(X.shape[0], dtype=bool)
            keep[prows] = False
            F = X[keep][:, pcols]
            rest = rest[keep]
            rest -= F @ N
            _fmod_inplace(rest, p)
            rank += k
        X = np.ascontiguousarray(rest)
    return rank


def _rank_dense_mod_p(A: np.ndarray, p: int) -> int:
    if A.size >= _BLOCKED_MIN_ENTRIES:
        return rank_mod_p_blocked(A, p)
    return kernels.rank_mod_p(A, p, copy=False)


@dataclass(frozen=True)
class ModularRank:
    lower_bound: int
    agreed: bool
    ranks: tuple[int, ...]
    primes: tuple[int, ...]


def rank_modular(
    M: SparseMatrix, prime_count: int = 2, seed: int | None = 0, stop_at: int | None = None
) -> ModularRank:
    """Rank modulo ``prime_count`` random primes; the max is a certified lower bound.

    Stops early once some prime reaches ``stop_at``.
    """
    if prime_count < 1:
        raise ValueError("prime_count must be positive")
    rng = np.random.default_rng(seed)
    ranks, used = [], []
    pool_seed = seed
    while len(ranks) < prime_count:
        (p,) = random_primes(1, pool_seed, exclude=used, low=SMALL_PRIME_LOW, high=SMALL_PRIME_HIGH)
        pool_seed = None if pool_seed is None else pool_seed + 7919
        used.append(p)
        dense = _dense_mod_p(M, p, rng)
        if dense is None:
            continue
        ranks.append(_rank_dense_mod_p(dense, p))
        if stop_at is not None and ranks[-1] >= stop_at:
            break
    return ModularRank(max(ranks), len(set(ranks)) == 1, tuple(ranks), tuple(used))


def rank_modular_at(M: SparseMatrix, p: int) -> int | None:
    """Uncompressed rank modulo one given prime (None if a denominator vanishes)."""
    data = _sparse_mod_p(M, p)
    if data is None:
        return None
    dense = np.zeros((M.nrows, M.ncols), dtype=np.int64)
    for i, (c, v) in enumerate(zip(*data)):
        dense[i, c] = v
    return kernels.rank_mod_p(dense, p, copy=False)


@dataclass(frozen=True)
class RankResult:
    value: int
    certified: bool
    method: str


def rank(
    M: SparseMatrix,
    prime_count: int = 2,
    seed: int | None = 0,
    exact_limit: int = 50_000,
    exact_rows: int = 2_000,
) -> RankResult:
    """Modular first; certify by shape, or escalate to exact elimination when small.

    Exact elimination is attempted only with at most ``exact_limit`` stored
    nonzeros and ``exact_rows`` rows. Beyond that the modular lower bound is
    returned uncertified.
    """
    full = min(M.nrows, M.ncols)
    mod = rank_modular(M, prime_count, seed, stop_at=full)
    if mod.lower_bound == full:
        return RankResult(mod.lower_bound, True, "modular-full")
    nnz = sum(len(r) for r in M.rows)
    if nnz <= exact_limit and M.nrows <= exact_rows:
        return RankResult(rank_exact(M), True, "exact")
    return RankResult(mod.lower_bound, False, "modular")


# -- certified rank for integer matrices given as row chunks -----------------


class CertificationFailed(ArithmeticError):
    pass


def _det_adj(A: list[list[int]]) -> tuple[int, list[list[int]]]:
    """Determinant and adjugate of a nonsingular integer matrix, exactly."""
    r = len(A)
    if r == 0:
        return 1, []
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(r)] for i, row in enumerate(A)]
    det = Fraction(1)
    for c in range(r):
        piv = next(i for i in range(c, r) if aug[i][c] != 0)
        if piv != c:
            aug[c], aug[piv] = aug[piv], aug[c]
            det = -det
        pv = aug[c][c]
        det *= pv
        aug[c] = [x / pv for x in aug[c]]
        for i in range(r):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    d = int(det)
    adj = [[int(x * d) for x in row[r:]] for row in aug]
    return d, adj


def _row_norm_bound(row: np.ndarray) -> int:
    s = sum(int(x) * int(x) for x in row)
    return isqrt(s) + 1


@dataclass
class CertifiedRank:
    rank: int
    basis_rows: list[int]
    pivot_cols: list[int]
    primes_used: list[int] = field(default_factory=list)
    attempts: int = 1


def certified_rank(
    chunks: Callable[[], Iterator[np.ndarray]],
    ncols: int,
    seed: int = 0,
    max_attempts: int = 4,
) -> CertifiedRank:
    """Exact rank of an integer matrix delivered as an iterable of int64 row blocks.

    ``chunks`` is called once per pass and must yield the same rows every time.

    Pass one finds r rows independent mod a prime p. That gives a lower bound,
    since a nonzero minor mod p is nonzero over Z. Pass two takes the r x r
    minor A on the pivot columns and checks ``det(A)*x == x[P] @ adj(A) @ B``
    for every row x, where B holds the basis rows. The check runs mod enough
    primes that their product exceeds twice a Hadamard-type bound on the
    entries, which proves every row lies in the rational span of B.
    """
    prime_seed = seed
    for attempt in range(1, max_attempts + 1):
        (p,) = random_primes(1, prime_seed)
        prime_seed += 104729
        basis: list[np.ndarray] = []
        basis_idx: list[int] = []
        E = np.zeros((0, ncols), dtype=np.int64)
        pivots = np.zeros(0, dtype=np.int64)
        max_abs = 0
        offset = 0
        for C in chunks():
            if C.shape[0] == 0:
                continue
            max_abs = max(max_abs, int(np.abs(C).max(initial=0)))
            Cp = C % p
            if len(basis):
                Cp = (Cp - matmul_mod(Cp[:, pivots], E, p)) % p
            keep = np.flatnonzero(Cp.any(axis=1))
            if keep.size:
                _, r, _, prows = kernels.rref_mod_p(Cp[keep], p)
                if r:
                    for j in prows:
                        basis.append(C[keep[j]].copy())
                        basis_idx.append(offset + int(keep[j]))
                    E, r_all, pivots, _ = kernels.rref_mod_p(np.array(basis), p)
                    E = E[:r_all]
            offset += C.shape[0]
        r = len(basis)
        if r == 0:
            # lower bound 0; the matrix is zero iff every chunk is zero, already read exactly
            return CertifiedRank(0, [], [], [p], attempt)
        B = np.array(basis, dtype=np.int64)
        A = [[int(x) for x in B[i, pivots]] for i in range(r)]
        d, adj = _det_adj(A)
        if d == 0:
            raise CertificationFailed("pivot minor singular over Q despite nonzero mod p")
        hA = prod(_row_norm_bound(B[i, pivots]) for i in range(r))
        bound = hA * max_abs * (1 + r * r * max_abs)
        primes: list[int] = []
        modulus = 1
        ps = prime_seed + 17
        while modulus <= 2 * bound:
            (q,) = random_primes(1, ps, exclude=primes)
            ps += 31337
            primes.append(q)
            modulus *= q
        checks = []
        for q in primes:
            adj_q = np.array([[x % q for x in row] for row in adj], dtype=np.int64)
            Bq = matmul_mod(adj_q, B % q, q)
            checks.append((q, d % q, Bq))
        ok = True
        for C in chunks():
            if not ok:
                break
            for q, dq, Bq in checks:
                Cq = C % q
                V = (Cq * dq - matmul_mod(Cq[:, pivots], Bq, q)) % q
                if V.any():
                    ok = False
                    break
        if ok:
            return CertifiedRank(r, basis_idx, [int(c) for c in pivots], [p, *primes], attempt)
    raise CertificationFailed(f"no certificate after {max_attempts} attempts")


def certified_rank_dense(rows: np.ndarray, seed: int = 0, chunk: int = 512) -> CertifiedRank:
    rows = np.asarray(rows, dtype=np.int64)

    def gen() -> Iterator[np.ndarray]:
        for s in range(0, rows.shape[0], chunk):
            yield rows[s : s + chunk]

    return certified_rank(gen, rows.shape[1] if rows.ndim == 2 else 0, seed)
