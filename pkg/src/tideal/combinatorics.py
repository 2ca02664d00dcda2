"""Partitions, Young diagrams, hook lengths and standard tableaux."""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod
from typing import Iterator, Sequence

TABLEAU_CAP = 12


class EnumerationRefused(ValueError):
    """Raised when a listing would exceed the configured size cap."""


@dataclass(frozen=True, order=False)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        parts = tuple(int(p) for p in self.parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def total(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, i: int) -> int:
        return self.parts[i]

    def __lt__(self, other: "Partition") -> bool:
        # canonical order is reverse-lexicographic: (4) comes before (3,1)
        return canonical_key(self) < canonical_key(other)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"

    def __repr__(self) -> str:
        return f"Partition({self.parts})"

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > j) for j in range(self.parts[0])))

    def cells(self) -> Iterator[tuple[int, int]]:
        for i, row in enumerate(self.parts):
            for j in range(row):
                yield i, j

    def to_json(self) -> list[int]:
        return list(self.parts)


def canonical_key(lam: Partition) -> tuple[int, ...]:
    return tuple(-p for p in lam.parts)


def as_partition(obj: Partition | Sequence[int] | str) -> Partition:
    if isinstance(obj, Partition):
        return obj
    if isinstance(obj, str):
        return parse_partition(obj)
    return Partition(tuple(sorted((int(x) for x in obj), reverse=True)))


_EXP_TERM = re.compile(r"^\s*(\d+)\s*\^\s*(\d+)\s*$")


def parse_partition(text: str) -> Partition:
    """Parse ``"(5,2,2,1,1,1)"`` or exponent form ``"1^3,2^2,5"``.

    Both spellings denote the same partition; parts are sorted on the way in.
    """
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    if not body.strip():
        return Partition(())
    parts: list[int] = []
    for term in body.split(","):
        m = _EXP_TERM.match(term)
        if m:
            parts.extend([int(m.group(1))] * int(m.group(2)))
        else:
            parts.append(int(term))
    if any(p <= 0 for p in parts):
        raise ValueError(f"bad partition text: {text!r}")
    return Partition(tuple(sorted(parts, reverse=True)))


def format_exponent(lam: Partition) -> str:
    """Exponent form with ascending part sizes, e.g. ``1^3,2^2,5``."""
    out = []
    for p in sorted(set(lam.parts)):
        c = lam.parts.count(p)
        out.append(f"{p}^{c}" if c > 1 else str(p))
    return ",".join(out)


@lru_cache(maxsize=None)
def _partitions(m: int, largest: int, max_length: int) -> tuple[tuple[int, ...], ...]:
    if m == 0:
        return ((),)
    if max_length == 0:
        return ()
    out = []
    for first in range(min(m, largest), 0, -1):
        for rest in _partitions(m - first, first, max_length - 1):
            out.append((first,) + rest)
    return tuple(out)


def partitions_of(m: int, max_length: int | None = None) -> list[Partition]:
    """All partitions of ``m`` (optionally with at most ``max_length`` parts).

    Output is in reverse-lexicographic order, e.g. (4),(3,1),(2,2),(2,1,1),(1,1,1,1).
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    cap = m if max_length is None else max_length
    return [Partition(p) for p in _partitions(m, m, cap)]


def hook_table(lam: Partition) -> list[list[int]]:
    conj = lam.conjugate().parts
    return [
        [(row - j - 1) + (conj[j] - i - 1) + 1 for j in range(row)]
        for i, row in enumerate(lam.parts)
    ]


@lru_cache(maxsize=None)
def _irrep_dim(parts: tuple[int, ...]) -> int:
    lam = Partition(parts)
    hooks = prod(h for row in hook_table(lam) for h in row)
    return factorial(lam.total) // hooks


def irrep_dim(lam: Partition) -> int:
    """Dimension of the Specht module, by the hook length formula."""
    return _irrep_dim(as_partition(lam).parts)


def derive_partition(lam: Partition, s: int) -> Partition:
    lam = as_partition(lam)
    if s < 0:
        raise ValueError("s must be nonnegative")
    if not lam.parts:
        return Partition((s,)) if s else lam
    return Partition((lam.parts[0] + s,) + lam.parts[1:])


@dataclass(frozen=True)
class StandardTableau:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)

    @property
    def shape(self) -> Partition:
        return Partition(tuple(len(r) for r in self.rows))

    @property
    def size(self) -> int:
        return sum(len(r) for r in self.rows)

    def columns(self) -> list[tuple[int, ...]]:
        if not self.rows:
            return []
        return [
            tuple(r[j] for r in self.rows if len(r) > j) for j in range(len(self.rows[0]))
        ]

    def row_of(self) -> dict[int, int]:
        """Entry -> 1-based row index."""
        return {x: i + 1 for i, r in enumerate(self.rows) for x in r}

    def col_of(self) -> dict[int, int]:
        return {x: j + 1 for r in self.rows for j, x in enumerate(r)}

    def is_standard(self) -> bool:
        m = self.size
        if sorted(x for r in self.rows for x in r) != list(range(1, m + 1)):
            return False
        if any(len(a) < len(b) for a, b in zip(self.rows, self.rows[1:])):
            return False
        if any(a >= b for r in self.rows for a, b in zip(r, r[1:])):
            return False
        return all(a < b for c in self.columns() for a, b in zip(c, c[1:]))

    def relabel(self, images: Sequence[int]) -> "StandardTableau":
        """Apply a permutation (one-line images, 1-based) to every entry."""
        return StandardTableau(tuple(tuple(images[x - 1] for x in r) for r in self.rows))

    def __str__(self) -> str:
        return "[" + ",".join("[" + ",".join(map(str, r)) + "]" for r in self.rows) + "]"


def canonical_tableau(lam: Partition) -> StandardTableau:
    lam = as_partition(lam)
    rows, start = [], 1
    for p in lam.parts:
        rows.append(tuple(range(start, start + p)))
        start += p
    return StandardTableau(tuple(rows))


def standard_tableaux(lam: Partition, cap: int = TABLEAU_CAP) -> list[StandardTableau]:
    """Every standard tableau of shape ``lam`` (refuses beyond ``cap`` boxes)."""
    lam = as_partition(lam)
    m = lam.total
    if m > cap:
        raise EnumerationRefused(f"standard tableaux of size {m} exceed cap {cap}")
    out: list[StandardTableau] = []
    rows: list[list[int]] = [[] for _ in lam.parts]

    def place(k: int) -> None:
        if k > m:
            out.append(StandardTableau(tuple(tuple(r) for r in rows)))
            return
        for i, target in enumerate(lam.parts):
            cur = len(rows[i])
            if cur < target and (i == 0 or len(rows[i - 1]) > cur):
                rows[i].append(k)
                place(k + 1)
                rows[i].pop()

    if m == 0:
        return [StandardTableau(())]
    place(1)
    return out


def extend_tableau(t: StandardTableau, s: int) -> StandardTableau:
    m = t.size
    if s == 0:
        return t
    if not t.rows:
        return StandardTableau((tuple(range(1, s + 1)),))
    first = t.rows[0] + tuple(range(m + 1, m + s + 1))
    return StandardTableau((first,) + t.rows[1:])


def horizontal_strips(lam: Partition, l: int) -> Iterator[Partition]:
    """Shapes obtained by adding ``l`` boxes to ``lam``, no two in one column."""
    parts = list(lam.parts) + [0]
    n = len(parts)

    def rec(i: int, left: int, acc: list[int]) -> Iterator[Partition]:
        if i == n:
            if left == 0:
                yield Partition(tuple(p for p in acc if p))
            return
        upper = left if i == 0 else min(left, parts[i - 1] - parts[i])
        for add in range(upper, -1, -1):
            acc.append(parts[i] + add)
            yield from rec(i + 1, left - add, acc)
            acc.pop()

    yield from rec(0, l, [])
