"""Polynomial GL_k characters: Schur functions, Young's rule, symmetric powers of the free algebra.

Characters are kept in the monomial symmetric basis, keyed by partitions with at
most k parts. Full polynomials, needed only for products, are dictionaries from
exponent tuples of length k to integer coefficients.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .combinatorics import (
    Partition,
    as_partition,
    canonical_key,
    derive_partition,
    horizontal_strips,
    irrep_dim,
    partitions_of,
)
from .decomposition import Decomposition

Poly = dict[tuple[int, ...], int]
POLY_TERM_LIMIT = 2_000_000


class NotACharacter(ValueError):
    """A Schur expansion produced a negative or fractional coefficient."""


@dataclass(frozen=True)
class SymmetricFunction:
    nvars: int
    coeffs: tuple[tuple[Partition, int | Fraction], ...]

    @classmethod
    def from_mapping(cls, k: int, coeffs: Mapping[Partition, int | Fraction]) -> "SymmetricFunction":
        items = []
        for lam, c in coeffs.items():
            lam = as_partition(lam)
            if len(lam) > k:
                raise ValueError(f"{lam} has more than {k} parts")
            if c:
                items.append((lam, c))
        items.sort(key=lambda kv: canonical_key(kv[0]))
        return cls(k, tuple(items))

    def as_dict(self) -> dict[Partition, int | Fraction]:
        return dict(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other: "SymmetricFunction") -> "SymmetricFunction":
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")
        acc = self.as_dict()
        for lam, c in other.coeffs:
            acc[lam] = acc.get(lam, 0) + c
        return SymmetricFunction.from_mapping(self.nvars, acc)

    def scale(self, c: int | Fraction) -> "SymmetricFunction":
        return SymmetricFunction.from_mapping(self.nvars, {lam: v * c for lam, v in self.coeffs})

    def to_poly(self) -> Poly:
        out: Poly = {}
        for lam, c in self.coeffs:
            padded = lam.parts + (0,) * (self.nvars - len(lam))
            for e in set(itertools.permutations(padded)):
                out[e] = out.get(e, 0) + c
        return out

    @classmethod
    def from_poly(cls, k: int, poly: Poly) -> "SymmetricFunction":
        """Read off monomial-basis coefficients (assumes the polynomial is symmetric)."""
        acc = {}
        for e, c in poly.items():
            if all(a >= b for a, b in zip(e, e[1:])) and c:
                acc[Partition(tuple(x for x in e if x))] = c
        return cls.from_mapping(k, acc)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*m{lam}" if c != 1 else f"m{lam}" for lam, c in self.coeffs)


@lru_cache(maxsize=None)
def kostka(lam: tuple[int, ...], mu: tuple[int, ...]) -> int:
    """Number of semistandard tableaux of shape lam and content mu (mu any composition)."""
    if sum(lam) != sum(mu):
        return 0
    if not mu:
        return 1 if not lam else 0
    last = mu[-1]
    total = 0
    parts = list(lam)
    # remove a horizontal strip of size `last` holding the largest letter
    def rec(i: int, left: int, acc: list[int]) -> None:
        nonlocal total
        if i == len(parts):
            if left == 0:
                nu = tuple(x for x in acc if x)
                total += kostka(nu, mu[:-1])
            return
        lower = parts[i + 1] if i + 1 < len(parts) else 0
        for take in range(0, min(left, parts[i] - lower) + 1):
            acc.append(parts[i] - take)
            rec(i + 1, left - take, acc)
            acc.pop()

    rec(0, last, [])
    return total


def schur_function(lam: Partition | Sequence[int] | str, k: int) -> SymmetricFunction:
    """s_lam(x_1..x_k) in the monomial basis; zero when lam has more than k rows."""
    lam = as_partition(lam)
    if len(lam) > k:
        return SymmetricFunction(k, ())
    coeffs = {}
    for mu in partitions_of(lam.total, max_length=k):
        c = kostka(lam.parts, mu.parts)
        if c:
            coeffs[mu] = c
    return SymmetricFunction.from_mapping(k, coeffs)


def schur_expand(f: SymmetricFunction) -> Decomposition:
    """Coefficients in the Schur basis by peeling off the lex-leading term."""
    acc = dict(f.coeffs)
    out: dict[Partition, int] = {}
    degrees = {lam.total for lam in acc}
    if len(degrees) > 1:
        raise ValueError("symmetric function is not homogeneous")
    m = degrees.pop() if degrees else 0
    while acc:
        lead = min(acc, key=canonical_key)
        c = acc[lead]
        if c < 0 or Fraction(c).denominator != 1:
            raise NotACharacter(f"coefficient {c} at {lead}")
        c = int(c)
        out[lead] = c
        for mu, v in schur_function(lead, f.nvars).coeffs:
            acc[mu] = acc.get(mu, 0) - c * v
            if acc[mu] == 0:
                del acc[mu]
    return Decomposition(m, out)


def young_rule(l: int, lam: Partition | Sequence[int] | str, max_length: int | None = None) -> Decomposition:
    """V^(l) tensor V^lam: every shape from adding l boxes, no two in one column."""
    lam = as_partition(lam)
    shapes = {
        nu: 1
        for nu in horizontal_strips(lam, l)
        if max_length is None or len(nu) <= max_length
    }
    return Decomposition(lam.total + l, shapes)


# -- polynomial helpers ---------------------------------------------------------


def poly_mul(a: Poly, b: Poly) -> Poly:
    if len(a) * len(b) > POLY_TERM_LIMIT * 8:
        raise MemoryError("polynomial product too large")
    out: Poly = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def complete_homogeneous(a: int, k: int) -> Poly:
    """h_a(x_1..x_k) as a polynomial."""
    out: Poly = {}
    for combo in itertools.combinations_with_replacement(range(k), a):
        e = [0] * k
        for i in combo:
            e[i] += 1
        out[tuple(e)] = out.get(tuple(e), 0) + 1
    return out


def symmetric_power_of_weights(weights: Poly, a: int, k: int) -> Poly:
    """Character of Sym^a of a module whose weight multiset is ``weights``."""
    H: list[Poly] = [{(0,) * k: 1}] + [{} for _ in range(a)]
    for w, mult in weights.items():
        for _ in range(mult):
            for j in range(1, a + 1):
                prev = H[j - 1]
                cur = H[j]
                for e, c in prev.items():
                    key = tuple(x + y for x, y in zip(e, w))
                    cur[key] = cur.get(key, 0) + c
                if len(cur) > POLY_TERM_LIMIT:
                    raise MemoryError("symmetric power character too large")
    return H[a]


# -- symmetric powers of the free algebra ----------------------------------------


@dataclass(frozen=True)
class SummandDescriptor:
    """A product of symmetric powers of irreducibles, taken ``weight`` times.

    ``factors`` lists (irrep, power) pairs, sorted. An irrep can occur twice when
    two distinct isotypic copies of it contribute, e.g. the two copies of
    V^(2,1) inside the degree-3 part of the free algebra.
    """

    factors: tuple[tuple[Partition, int], ...]
    weight: int = 1

    @property
    def sym_total(self) -> int:
        return sum(a for _, a in self.factors)

    @property
    def degree(self) -> int:
        return sum(lam.total * a for lam, a in self.factors)

    def power_of(self, lam: Partition) -> int:
        return sum(a for mu, a in self.factors if mu == lam)

    def without(self, lam: Partition) -> "SummandDescriptor":
        return SummandDescriptor(tuple(f for f in self.factors if f[0] != lam), self.weight)

    def __str__(self) -> str:
        body = " ⊗ ".join(f"Sym^{a} V^{lam}" for lam, a in self.factors) or "1"
        return f"{self.weight} x ({body})" if self.weight != 1 else body


def _factor_key(f: tuple[Partition, int]) -> tuple:
    return (f[0].total, canonical_key(f[0]), f[1])


def _slots(k: int, max_degree: int) -> list[tuple[Partition, int]]:
    """Isotypic slots of the free algebra up to a degree: (irrep, copy index)."""
    out = []
    for d in range(1, max_degree + 1):
        for lam in partitions_of(d, max_length=k):
            for copy in range(irrep_dim(lam)):
                out.append((lam, copy))
    return out


def sym_power_component(k: int, n: int, m: int) -> list[SummandDescriptor]:
    """Summands of the degree-m part of Sym^n of the free algebra on k generators."""
    if n < 1 or n > m:
        return []
    slots = _slots(k, m - n + 1)
    merged: Counter = Counter()

    def rec(start: int, left: int, deg_left: int, acc: list[int]) -> None:
        if left == 0:
            if deg_left == 0:
                cnt = Counter(acc)
                factors = tuple(sorted(((slots[i][0], c) for i, c in cnt.items()), key=_factor_key))
                merged[factors] += 1
            return
        for i in range(start, len(slots)):
            d = slots[i][0].total
            # remaining factors all have degree >= d
            if d * left > deg_left:
                break
            if deg_left - d < left - 1:
                break
            acc.append(i)
            rec(i, left - 1, deg_left - d, acc)
            acc.pop()

    rec(0, n, m, [])
    out = [SummandDescriptor(f, w) for f, w in merged.items()]
    out.sort(key=lambda d: [_factor_key(f) for f in d.factors])
    return out


def split_linear_summands(k: int, K: int) -> list[tuple[int, SummandDescriptor]]:
    """Split each summand of the degree-2K part of Sym^K as V^(c) times a residual M."""
    if K == 0:
        return [(0, SummandDescriptor(()))]
    one = Partition((1,))
    out = []
    for d in sym_power_component(k, K, 2 * K):
        c = d.power_of(one)
        out.append((c, d.without(one)))
    return out


def _poly_of(lam: Partition, k: int) -> Poly:
    return schur_function(lam, k).to_poly()


def character_poly(d: SummandDescriptor, k: int) -> Poly:
    out: Poly = {(0,) * k: 1}
    for lam, a in d.factors:
        out = poly_mul(out, symmetric_power_of_weights(_poly_of(lam, k), a, k))
    return out


def character_of_descriptor(d: SummandDescriptor, k: int) -> SymmetricFunction:
    """Character of one copy of the descriptor (its weight is not applied)."""
    return SymmetricFunction.from_poly(k, character_poly(d, k))


def multiplicity_upper_bounds(K: int, n: int, k: int | None = None) -> Decomposition:
    """Decomposition of the degree-(n+K) part of Sym^n of the free algebra, rows capped at k.

    It is computed as the sum over the split summands (c, M) of
    h_{n-K+c} * char(M): expand char(M) in Schur functions, then apply Young's rule.
    """
    if n < K:
        raise ValueError("need n >= K")
    k = 2 * K + 2 if k is None else k
    total: Counter = Counter()
    for c, M in split_linear_summands(k, K):
        inner = schur_expand(character_of_descriptor(M, k)) if M.factors else Decomposition(0, {(): 1})
        for nu, a in inner:
            for lam, b in young_rule(n - K + c, nu, max_length=k):
                total[lam] += M.weight * a * b
    return Decomposition(n + K, dict(total))


def multiplicity_upper_bounds_direct(K: int, n: int, k: int | None = None) -> Decomposition:
    """Same as :func:`multiplicity_upper_bounds` but multiplying full polynomials (test oracle)."""
    k = 2 * K + 2 if k is None else k
    acc: Poly = {}
    for c, M in split_linear_summands(k, K):
        part = poly_mul(complete_homogeneous(n - K + c, k), character_poly(M, k))
        for e, v in part.items():
            acc[e] = acc.get(e, 0) + M.weight * v
    return schur_expand(SymmetricFunction.from_poly(k, acc))


def derived_decomposition(W: Decomposition, delta: int) -> Decomposition:
    return Decomposition(W.m + delta, {derive_partition(lam, delta): c for lam, c in W})


def is_derived_decomposition(U: Decomposition, W: Decomposition) -> bool:
    delta = U.m - W.m
    if delta < 0:
        return False
    return U == derived_decomposition(W, delta)


def sum_of_products_dimension(k: int, n: int, m: int) -> int:
    """dim of the degree-m part of Sym^n(free algebra on k letters), by counting word multisets."""
    # words of length d: k^d of them; choose a multiset of n words with total length m
    @lru_cache(maxsize=None)
    def count(d_min: int, left: int, deg: int) -> int:
        if left == 0:
            return 1 if deg == 0 else 0
        total = 0
        for d in range(d_min, deg + 1):
            if d * left > deg:
                break
            words = k**d
            for j in range(1, left + 1):
                if d * j > deg:
                    break
                # multisets of size j from `words` items, all of length d
                total += _multichoose(words, j) * count(d + 1, left - j, deg - d * j)
        return total

    return count(1, n, m)


def _multichoose(a: int, b: int) -> int:
    from math import comb

    return comb(a + b - 1, b)


def descriptor_dimension(d: SummandDescriptor, k: int) -> int:
    return sum(character_poly(d, k).values())

