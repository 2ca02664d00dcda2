"""Ordered partitions of [m] and the spanning polynomials P_O of W_{n,m}."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb, factorial
from typing import Iterator, Sequence

from .combinatorics import Partition, as_partition
from .exact_linalg import RankResult, SparseMatrix, rank
from .perm_algebra import AlgebraElement, Permutation, lehmer_rank

DIRECT_CAP = 8


class DirectMethodRefused(ValueError):
    """The direct spanning-matrix method was asked for m beyond its cap."""


@dataclass(frozen=True)
class OrderedPartition:
    """An unordered set of n disjoint ordered blocks covering 1..m.

    Blocks are stored sorted by their smallest element, which makes the set
    representation canonical.
    """

    parts: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        parts = tuple(tuple(int(x) for x in b) for b in self.parts)
        if any(not b for b in parts):
            raise ValueError("blocks must be nonempty")
        flat = [x for b in parts for x in b]
        if sorted(flat) != list(range(1, len(flat) + 1)):
            raise ValueError(f"blocks must partition 1..{len(flat)}: {parts}")
        object.__setattr__(self, "parts", tuple(sorted(parts, key=min)))

    @property
    def n(self) -> int:
        return len(self.parts)

    @property
    def m(self) -> int:
        return sum(len(b) for b in self.parts)

    def block_sizes(self) -> Partition:
        return Partition(tuple(sorted((len(b) for b in self.parts), reverse=True)))

    def relabel(self, sigma: Permutation) -> "OrderedPartition":
        s = sigma.images
        return OrderedPartition(tuple(tuple(s[x - 1] for x in b) for b in self.parts))

    def __str__(self) -> str:
        return "{" + ",".join("[" + " ".join(map(str, b)) + "]" for b in self.parts) + "}"

    def to_json(self) -> list[list[int]]:
        return [list(b) for b in self.parts]

    @classmethod
    def parse(cls, text: str) -> "OrderedPartition":
        body = text.strip().strip("{}")
        blocks = []
        for chunk in body.split("]"):
            chunk = chunk.strip().lstrip(",").strip()
            if not chunk:
                continue
            blocks.append(tuple(int(x) for x in chunk.lstrip("[").replace(",", " ").split()))
        return cls(tuple(blocks))


def _set_partitions(items: list[int], n: int) -> Iterator[list[list[int]]]:
    """Set partitions of ``items`` into exactly n blocks, blocks ordered by minimum."""
    if n == 0:
        if not items:
            yield []
        return
    if len(items) < n:
        return
    first, rest = items[0], items[1:]
    # first element either starts a block alone, or joins a block of a partition of the rest
    for part in _set_partitions(rest, n - 1):
        yield [[first], *part]
    for part in _set_partitions(rest, n):
        for i in range(len(part)):
            yield [*part[:i], [first, *part[i]], *part[i + 1 :]]


def enumerate_ordered_partitions(
    n: int, m: int, shape: Partition | Sequence[int] | str | None = None
) -> Iterator[OrderedPartition]:
    """Stream every element of Omega_{n,m} once (optionally only those with the given block sizes)."""
    if n < 1 or n > m:
        return
    want = None
    if shape is not None:
        lam = as_partition(shape)
        if lam.total != m or len(lam) != n:
            raise ValueError(f"shape {lam} is not a partition of {m} into {n} parts")
        want = lam.parts
    for sp in _set_partitions(list(range(1, m + 1)), n):
        if want is not None and tuple(sorted((len(b) for b in sp), reverse=True)) != want:
            continue
        sp.sort(key=min)
        for orders in itertools.product(*(itertools.permutations(b) for b in sp)):
            yield OrderedPartition(tuple(orders))


def count_ordered_partitions(n: int, m: int) -> int:
    if n < 1 or n > m:
        return 0
    return comb(m, n) * factorial(m - 1) // factorial(n - 1)


def extend_ordered_partition(O: OrderedPartition, s: int) -> OrderedPartition:
    m = O.m
    return OrderedPartition(O.parts + tuple((m + i,) for i in range(1, s + 1)))


def symmetric_poly(blocks: Sequence[Sequence[int]]) -> AlgebraElement:
    """P_n evaluated on the block monomials x_{A_1}, ..., x_{A_n}."""
    blocks = [tuple(b) for b in blocks]
    flat = [x for b in blocks for x in b]
    m = len(flat)
    if sorted(flat) != list(range(1, m + 1)):
        raise ValueError("blocks must use each variable x_1..x_m exactly once")
    terms: dict[tuple[int, ...], int] = {}
    for order in itertools.permutations(blocks):
        key = tuple(x for b in order for x in b)
        terms[key] = terms.get(key, 0) + 1
    return AlgebraElement(m, terms)


def build_PO(O: OrderedPartition) -> AlgebraElement:
    return symmetric_poly(O.parts)


def _po_columns(O: OrderedPartition) -> list[int]:
    return sorted(
        lehmer_rank([x for b in order for x in b]) for order in itertools.permutations(O.parts)
    )


def spanning_matrix(n: int, m: int) -> SparseMatrix:
    """Rows are the coefficient vectors of P_O; columns are permutation ranks."""
    rows = [[(c, 1) for c in _po_columns(O)] for O in enumerate_ordered_partitions(n, m)]
    return SparseMatrix(rows, factorial(m))


def spanning_rank(n: int, m: int, cap: int = DIRECT_CAP, prime_count: int = 2, seed: int = 0) -> RankResult:
    if n < 1 or n > m:
        raise ValueError("need 1 <= n <= m")
    if m > cap:
        raise DirectMethodRefused(
            f"direct spanning matrix refused for m={m} > {cap}; use the highest-weight decomposition instead"
        )
    return rank(spanning_matrix(n, m), prime_count=prime_count, seed=seed)


def spanning_dimension(n: int, m: int, cap: int = DIRECT_CAP) -> int:
    """Rank of the spanning matrix, i.e. dim W_{n,m} (modular lower bound when uncertifiable)."""
    return spanning_rank(n, m, cap).value
