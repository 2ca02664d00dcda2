"""Multiplicities of irreducibles in W_{n,m}, its dimension, and the nilpotency-degree probe.

The multiplicity of S^lam is the rank of the highest-weight images
``b_T(y) P_O``. T is the row-major tableau of shape lam, and O runs over the
ordered partitions. The engine uses three reductions, all exact:

* Orbits. The image of P_{rho O} is sgn(rho) times that of P_O for rho in the
  column group. So one row per column-group orbit suffices. An orbit is named
  by the multiset of "column words": each block with its entries replaced by
  their columns.
* Quick zeros. If two equal column words of odd length occur, swapping those
  blocks is an odd column permutation that fixes O. The row is then zero.
* Structure. Each row is a signed sum of P_n(w_1, ..., w_n) over multisets of
  row words. Each such term expands into distinct arrangements, and those
  expansions are cached.

Ranks are certified by :func:`tideal.exact_linalg.certified_rank`.
"""
from __future__ import annotations

import itertools
import json
import os
import sys
import time
import multiprocessing
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial, prod
from typing import Callable, Iterator, Mapping, Sequence

import numpy as np

from .combinatorics import (
    Partition,
    as_partition,
    canonical_key,
    canonical_tableau,
    irrep_dim,
    partitions_of,
)
from .exact_linalg import SparseMatrix, certified_rank, rank_exact
from .kernels import expand_arrangements
from .multilinear import DIRECT_CAP, build_PO, enumerate_ordered_partitions, spanning_rank
from .perm_algebra import perm_sign
from .substitution import highest_weight_image

MAX_PACKED_DEGREE = 15
CHUNK_ROWS = 256


class BudgetExceeded(RuntimeError):
    def __init__(self, message: str, partial: "Decomposition | None" = None):
        super().__init__(message)
        self.partial = partial


class InconsistentResult(AssertionError):
    """Two independent computations of the same quantity disagree."""


class Decomposition:
    """Partition -> positive multiplicity, all partitions of the same m."""

    __slots__ = ("m", "mults")

    def __init__(self, m: int, mults: Mapping[Partition | Sequence[int], int] | None = None):
        self.m = m
        clean: dict[Partition, int] = {}
        for lam, c in (mults or {}).items():
            lam = as_partition(lam)
            if c < 0:
                raise ValueError("multiplicities are nonnegative")
            if c == 0:
                continue
            if lam.total != m:
                raise ValueError(f"{lam} is not a partition of {m}")
            clean[lam] = clean.get(lam, 0) + int(c)
        self.mults = dict(sorted(clean.items(), key=lambda kv: canonical_key(kv[0])))

    def __getitem__(self, lam: Partition | Sequence[int] | str) -> int:
        return self.mults.get(as_partition(lam), 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Decomposition):
            return NotImplemented
        return self.m == other.m and self.mults == other.mults

    def __iter__(self):
        return iter(self.mults.items())

    def __len__(self) -> int:
        return len(self.mults)

    def total_multiplicity(self) -> int:
        return sum(self.mults.values())

    def dimension(self) -> int:
        return sum(c * irrep_dim(lam) for lam, c in self.mults.items())

    def max_length(self) -> int:
        return max((len(lam) for lam in self.mults), default=0)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "terms": [{"partition": lam.to_json(), "mult": c} for lam, c in self.mults.items()],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data: dict) -> "Decomposition":
        return cls(int(data["m"]), {tuple(t["partition"]): int(t["mult"]) for t in data["terms"]})

    def text(self) -> str:
        if not self.mults:
            return "0"
        return " ⊕ ".join(
            f"S^{lam}" + (f" x{c}" if c != 1 else "") for lam, c in self.mults.items()
        )

    def __repr__(self) -> str:
        return f"Decomposition(m={self.m}: {self.text()})"


# -- orbit enumeration --------------------------------------------------------


def _words_from_budget(budget: list[int], length: int) -> Iterator[tuple[int, ...]]:
    """All words of the given length whose letter usage fits ``budget``."""
    if length == 0:
        yield ()
        return
    for c, b in enumerate(budget):
        if b:
            budget[c] -= 1
            for rest in _words_from_budget(budget, length - 1):
                yield (c,) + rest
            budget[c] += 1


def column_word_orbits(n: int, lam: Partition) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Multisets of n nonempty column words using column c exactly lam'_c times.

    These are in bijection with the column-group orbits on Omega_{n,|lam|}.
    Each multiset is returned as a sorted tuple of words (columns 0-based).
    """
    budget = list(lam.conjugate().parts)
    m = lam.total

    def rec(left: int, remaining: int, prev: tuple[int, ...] | None, acc: list) -> Iterator:
        if left == 0:
            if remaining == 0:
                yield tuple(acc)
            return
        max_len = remaining - (left - 1)
        min_len = 1 if prev is None else len(prev)
        # words are sorted by (length, letters), so lengths never decrease
        if left * min_len > remaining:
            return
        for L in range(min_len, max_len + 1):
            if left * L > remaining:
                break
            for w in list(_words_from_budget(budget, L)):
                if prev is not None and (L, w) < (len(prev), prev):
                    continue
                for c in w:
                    budget[c] -= 1
                acc.append(w)
                yield from rec(left - 1, remaining - L, w, acc)
                acc.pop()
                for c in w:
                    budget[c] += 1

    if n < 1 or n > m:
        return
    yield from rec(n, m, None, [])


def _quick_zero(orbit: tuple[tuple[int, ...], ...]) -> bool:
    for w, k in _counts(orbit).items():
        if k >= 2 and len(w) % 2 == 1:
            return True
    return False


def _counts(items) -> dict:
    out: dict = {}
    for x in items:
        out[x] = out.get(x, 0) + 1
    return out


def orbit_representative(lam: Partition, orbit: tuple[tuple[int, ...], ...]) -> list[list[tuple[int, int]]]:
    """Cells (row, col), 0-based, filled block by block, top to bottom within each column."""
    nxt = [0] * lam.parts[0]
    blocks = []
    for w in orbit:
        cells = []
        for c in w:
            cells.append((nxt[c], c))
            nxt[c] += 1
        blocks.append(cells)
    return blocks


@lru_cache(maxsize=16)
def _signed_perms(h: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    return tuple((p, perm_sign([x + 1 for x in p])) for p in itertools.permutations(range(h)))


def _column_perms(lam: Partition) -> list[tuple[tuple[tuple[int, ...], int], ...]]:
    return [_signed_perms(h) for h in lam.conjugate().parts]


def orbit_row_multisets(
    lam: Partition, orbit: tuple[tuple[int, ...], ...], col_perms=None
) -> dict[tuple[tuple[int, ...], ...], int]:
    """sum over the column group of sgn(tau) [multiset of row words of tau O]; letters 1-based."""
    if col_perms is None:
        col_perms = _column_perms(lam)
    blocks = orbit_representative(lam, orbit)
    active = [c for c, perms in enumerate(col_perms) if len(perms) > 1]
    acc: dict[tuple[tuple[int, ...], ...], int] = {}
    letter = [list(range(1, len(perms[0][0]) + 1)) for perms in col_perms]
    for choice in itertools.product(*(col_perms[c] for c in active)):
        sgn = 1
        for c, (p, s) in zip(active, choice):
            sgn *= s
            letter[c] = [x + 1 for x in p]
        words = sorted(tuple(letter[c][r] for r, c in cells) for cells in blocks)
        key = tuple(words)
        acc[key] = acc.get(key, 0) + sgn
    return {k: v for k, v in acc.items() if v}


def _pack(word: Sequence[int]) -> int:
    code = 0
    for x in word:
        code = (code << 4) | x
    return code


def target_words(lam: Partition) -> np.ndarray:
    """Packed codes of all words with content lam, sorted."""
    letters = list(range(1, len(lam) + 1))
    total = factorial(lam.total) // prod(factorial(p) for p in lam.parts)
    codes = expand_arrangements(letters, [1] * len(letters), list(lam.parts), total)
    return np.sort(codes)


@dataclass
class HighestWeightSystem:
    """The orbit rows for one (n, lam), ready to be streamed to the rank certifier."""

    n: int
    lam: Partition
    columns: np.ndarray
    rows: list[dict[tuple[tuple[int, ...], ...], int]]
    orbits_total: int
    orbits_quick_zero: int
    _cache: dict = field(default_factory=dict, repr=False)

    def expansion(self, M: tuple[tuple[int, ...], ...]) -> tuple[np.ndarray, np.ndarray]:
        """Column indices and coefficients of P_n(M); distinct arrangements may concatenate equally."""
        hit = self._cache.get(M)
        if hit is not None:
            return hit
        cnt = _counts(M)
        words = sorted(cnt)
        counts = [cnt[w] for w in words]
        total = factorial(len(M)) // prod(factorial(c) for c in counts)
        codes = expand_arrangements([_pack(w) for w in words], [len(w) for w in words], counts, total)
        idx = np.searchsorted(self.columns, codes)
        if np.any(self.columns[np.minimum(idx, len(self.columns) - 1)] != codes):
            raise AssertionError("expanded word outside the target content")
        weight = prod(factorial(c) for c in counts)
        cols, mult = np.unique(idx, return_counts=True)
        entry = (cols, mult.astype(np.int64) * weight)
        self._cache[M] = entry
        return entry

    def chunks(self, size: int = CHUNK_ROWS) -> Iterator[np.ndarray]:
        ncols = len(self.columns)
        for start in range(0, len(self.rows), size):
            part = self.rows[start : start + size]
            X = np.zeros((len(part), ncols), dtype=np.int64)
            for i, row in enumerate(part):
                for M, coef in row.items():
                    cols, vals = self.expansion(M)
                    X[i, cols] += coef * vals
            yield X

    def dense(self) -> np.ndarray:
        blocks = list(self.chunks())
        if not blocks:
            return np.zeros((0, len(self.columns)), dtype=np.int64)
        return np.vstack(blocks)


def highest_weight_system(n: int, m: int, lam: Partition) -> HighestWeightSystem:
    lam = as_partition(lam)
    if lam.total != m:
        raise ValueError(f"{lam} is not a partition of {m}")
    if m > MAX_PACKED_DEGREE:
        raise ValueError(f"degree {m} exceeds the packed-word limit {MAX_PACKED_DEGREE}")
    group_order = prod(factorial(h) for h in lam.conjugate().parts)
    if group_order * factorial(n) >= 1 << 62:
        raise OverflowError("row entries could overflow int64")
    rows, total, zeros = [], 0, 0
    col_perms = None
    for orbit in column_word_orbits(n, lam):
        total += 1
        if _quick_zero(orbit):
            zeros += 1
            continue
        if col_perms is None:
            col_perms = _column_perms(lam)
        row = orbit_row_multisets(lam, orbit, col_perms)
        if row:
            rows.append(row)
    return HighestWeightSystem(n, lam, target_words(lam), rows, total, zeros)


def multiplicity(n: int, m: int, lam: Partition | Sequence[int] | str, seed: int = 0) -> int:
    """Certified multiplicity of S^lam in W_{n,m}."""
    lam = as_partition(lam)
    if not 1 <= n <= m:
        raise ValueError("need 1 <= n <= m")
    if lam.total != m:
        raise ValueError(f"{lam} is not a partition of {m}")
    system = highest_weight_system(n, m, lam)
    if not system.rows:
        return 0
    return certified_rank(system.chunks, len(system.columns), seed=seed).rank


def multiplicity_reference(n: int, m: int, lam: Partition | Sequence[int] | str) -> int:
    """Unoptimised oracle: one row b_T(y) P_O per ordered partition, exact elimination."""
    lam = as_partition(lam)
    t = canonical_tableau(lam)
    rows, index = [], {}
    for O in enumerate_ordered_partitions(n, m):
        g = highest_weight_image(t, build_PO(O))
        rows.append({index.setdefault(w, len(index)): c for w, c in g.terms.items()})
    return rank_exact(SparseMatrix.from_dicts(rows, max(len(index), 1)))


# -- full decompositions ------------------------------------------------------


def default_workers() -> int:
    env = os.environ.get("TIDEAL_WORKERS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _mult_task(args: tuple[int, int, tuple[int, ...], int]) -> int:
    n, m, parts, seed = args
    return multiplicity(n, m, Partition(parts), seed)


def decompose_W(
    n: int,
    m: int,
    prune: bool = True,
    workers: int | None = None,
    budget_seconds: float | None = None,
    progress: Callable[[str], None] | None = None,
    seed: int = 0,
) -> Decomposition:
    """Multiplicity of every S^lam in W_{n,m}.

    With ``prune`` (and K = m - n >= 1), shapes with more than 2K+1 rows get 0
    without computation. Without it they are computed like every other shape.
    """
    if not 1 <= n <= m:
        raise ValueError("need 1 <= n <= m")
    K = m - n
    shapes = [
        lam for lam in partitions_of(m) if not (prune and K >= 1 and len(lam) > 2 * K + 1)
    ]
    workers = default_workers() if workers is None else max(1, workers)
    deadline = None if budget_seconds is None else time.monotonic() + budget_seconds
    found: dict[Partition, int] = {}
    if workers == 1 or len(shapes) == 1:
        for lam in shapes:
            if deadline is not None and time.monotonic() > deadline:
                raise BudgetExceeded(f"budget exhausted for W_{n},{m}", Decomposition(m, found))
            found[lam] = multiplicity(n, m, lam, seed)
            if progress:
                progress(f"W_{{{n},{m}}} {lam}: {found[lam]}")
    else:
        tasks = [(n, m, lam.parts, seed) for lam in shapes]
        # Pool.__exit__ terminates the workers, so an exhausted budget does not wait on them
        with multiprocessing.Pool(processes=workers) as pool:
            pending = [pool.apply_async(_mult_task, (t,)) for t in tasks]
            for lam, res in zip(shapes, pending):
                timeout = None if deadline is None else max(0.0, deadline - time.monotonic())
                try:
                    found[lam] = res.get(timeout=timeout)
                except multiprocessing.TimeoutError as exc:
                    raise BudgetExceeded(f"budget exhausted for W_{n},{m}", Decomposition(m, found)) from exc
                if progress:
                    progress(f"W_{{{n},{m}}} {lam}: {found[lam]}")
    return Decomposition(m, found)


@dataclass(frozen=True)
class DimensionReport:
    value: int
    direct: int | None
    direct_certified: bool | None
    via_multiplicities: int | None


def dim_W_report(n: int, m: int, method: str = "via_multiplicities", workers: int | None = None) -> DimensionReport:
    if method not in ("direct", "via_multiplicities", "both"):
        raise ValueError(f"unknown method {method!r}")
    direct = certified = via = None
    if method in ("direct", "both"):
        res = spanning_rank(n, m)
        direct, certified = res.value, res.certified
    if method in ("via_multiplicities", "both"):
        via = decompose_W(n, m, prune=True, workers=workers).dimension()
    if method == "both" and direct != via:
        raise InconsistentResult(f"dim W_{n},{m}: direct {direct} != via multiplicities {via}")
    value = via if via is not None else direct
    assert value is not None
    return DimensionReport(value, direct, certified, via)


def dim_W(n: int, m: int, method: str = "via_multiplicities", workers: int | None = None) -> int:
    return dim_W_report(n, m, method, workers).value


def nilpotency_probe(
    n: int, m_max: int | None = None, workers: int | None = None, progress: Callable[[str], None] | None = None
) -> int | None:
    """Least m <= m_max with dim W_{n,m} = m!, or None.

    Every step is certified. A full-rank modular lower bound proves equality.
    Otherwise an exact rank, or the certified multiplicities, proves the
    dimension is smaller than m!.
    """
    if n < 1:
        raise ValueError("n must be positive")
    m_max = n * n if m_max is None else m_max
    for m in range(n, m_max + 1):
        full = factorial(m)
        value: int
        if m <= DIRECT_CAP:
            res = spanning_rank(n, m)
            if res.value == full or res.certified:
                value = res.value
            else:
                value = dim_W(n, m, "via_multiplicities", workers)
        else:
            value = dim_W(n, m, "via_multiplicities", workers)
        if progress:
            progress(f"dim W_{{{n},{m}}} = {value} (m! = {full})")
        if value == full:
            return m
    return None


def _log(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)
