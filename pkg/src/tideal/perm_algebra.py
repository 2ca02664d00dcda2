"""Group algebra of S_m, acting on multilinear polynomials.

A permutation ``s`` is identified with the monomial ``x_{s(1)} x_{s(2)} ... x_{s(m)}``.
Composition is ``(st)(i) = s(t(i))``. With this convention the left action
(relabel variables) and the right action (permute places) are both plain
multiplication in the group algebra: ``s . f = s*f`` and ``f . s = f*s``.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .combinatorics import StandardTableau

Scalar = Union[int, Fraction]


def _norm(c: Scalar) -> Scalar:
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        imgs = tuple(int(x) for x in self.images)
        if sorted(imgs) != list(range(1, len(imgs) + 1)):
            raise ValueError(f"not a permutation of 1..{len(imgs)}: {imgs}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls, m: int) -> "Permutation":
        return cls(tuple(range(1, m + 1)))

    @classmethod
    def from_cycles(cls, text: str, m: int) -> "Permutation":
        """Parse cycle notation such as ``"(1 2)(3 4)"``; ``"()"`` or ``"e"`` is the identity."""
        imgs = list(range(1, m + 1))
        body = text.strip()
        if body in ("", "e", "()"):
            return cls(tuple(imgs))
        cycles = re.findall(r"\(([^()]*)\)", body)
        if not cycles or re.sub(r"\(([^()]*)\)", "", body).strip():
            raise ValueError(f"bad cycle notation: {text!r}")
        # cycles compose right to left, like permutations
        for cyc in reversed(cycles):
            pts = [int(x) for x in cyc.replace(",", " ").split()]
            if any(not 1 <= x <= m for x in pts) or len(set(pts)) != len(pts):
                raise ValueError(f"bad cycle {cyc!r} for m={m}")
            step = {a: b for a, b in zip(pts, pts[1:] + pts[:1])}
            imgs = [step.get(x, x) for x in imgs]
        return cls(tuple(imgs))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        s = self.images
        return Permutation(tuple(s[t - 1] for t in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, x in enumerate(self.images, start=1):
            inv[x - 1] = i
        return Permutation(tuple(inv))

    def sign(self) -> int:
        return perm_sign(self.images)

    def rank(self) -> int:
        """Lexicographic rank of the one-line form (Lehmer code)."""
        return lehmer_rank(self.images)

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for start in range(1, self.degree + 1):
            if start in seen:
                continue
            cyc, x = [], start
            while x not in seen:
                seen.add(x)
                cyc.append(x)
                x = self.images[x - 1]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cyc = self.cycles()
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) if cyc else "e"


def perm_sign(images: Sequence[int]) -> int:
    seen = [False] * len(images)
    sign = 1
    for i in range(len(images)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = images[j] - 1
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def lehmer_rank(images: Sequence[int]) -> int:
    m = len(images)
    rank = 0
    for i, x in enumerate(images):
        smaller = sum(1 for y in images[i + 1 :] if y < x)
        rank += smaller * factorial(m - 1 - i)
    return rank


def unrank(rank: int, m: int) -> Permutation:
    pool = list(range(1, m + 1))
    out = []
    for i in range(m, 0, -1):
        q, rank = divmod(rank, factorial(i - 1))
        out.append(pool.pop(q))
    return Permutation(tuple(out))


def all_permutations(m: int) -> Iterator[Permutation]:
    for p in itertools.permutations(range(1, m + 1)):
        yield Permutation(p)


class AlgebraElement:
    """Sparse element of Q[S_m]: permutation images -> exact rational coefficient."""

    __slots__ = ("m", "terms")

    def __init__(self, m: int, terms: Mapping[tuple[int, ...], Scalar] | None = None):
        self.m = m
        clean: dict[tuple[int, ...], Scalar] = {}
        for key, c in (terms or {}).items():
            k = key.images if isinstance(key, Permutation) else tuple(key)
            if len(k) != m:
                raise ValueError("all permutations must share the same degree")
            if c:
                clean[k] = _norm(clean.get(k, 0) + c) if k in clean else _norm(c)
        self.terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def basis(cls, p: Permutation | Sequence[int], coeff: Scalar = 1) -> "AlgebraElement":
        imgs = p.images if isinstance(p, Permutation) else tuple(p)
        return cls(len(imgs), {imgs: coeff})

    @classmethod
    def identity(cls, m: int) -> "AlgebraElement":
        return cls.basis(tuple(range(1, m + 1)))

    @classmethod
    def zero(cls, m: int) -> "AlgebraElement":
        return cls(m, {})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.m == other.m and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.m, frozenset(self.terms.items())))

    def coefficient(self, p: Permutation | Sequence[int]) -> Scalar:
        key = p.images if isinstance(p, Permutation) else tuple(p)
        return self.terms.get(key, 0)

    def _check(self, other: "AlgebraElement") -> None:
        if self.m != other.m:
            raise ValueError(f"degree mismatch: {self.m} vs {other.m}")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = _norm(out.get(k, 0) + v)
        return AlgebraElement(self.m, out)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.m, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def scale(self, c: Scalar) -> "AlgebraElement":
        return AlgebraElement(self.m, {k: _norm(v * c) for k, v in self.terms.items()})

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        return multiply(self, other)

    def items_by_rank(self) -> list[tuple[Permutation, Scalar]]:
        return sorted(
            ((Permutation(k), v) for k, v in self.terms.items()), key=lambda kv: kv[0].rank()
        )

    def dump(self) -> str:
        """One ``rank images coefficient`` line per term, ordered by permutation rank."""
        lines = []
        for p, c in self.items_by_rank():
            lines.append(f"{p.rank()} {' '.join(map(str, p.images))} {c}")
        return "\n".join(lines)

    def monomial_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for p, c in self.items_by_rank():
            mono = "".join(f"x{i}" for i in p.images)
            parts.append(f"{c}*{mono}" if c != 1 else mono)
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"AlgebraElement(m={self.m}, {self.monomial_text()})"


def multiply(f: AlgebraElement, g: AlgebraElement) -> AlgebraElement:
    """Convolution product in the group algebra."""
    f._check(g)
    out: dict[tuple[int, ...], Scalar] = {}
    gitems = list(g.terms.items())
    for s, a in f.terms.items():
        for t, b in gitems:
            key = tuple(s[i - 1] for i in t)
            out[key] = out.get(key, 0) + a * b
    return AlgebraElement(f.m, {k: _norm(v) for k, v in out.items() if v})


def act_left(sigma: Permutation, f: AlgebraElement) -> AlgebraElement:
    """Relabel variables: x_{t(1)}...x_{t(m)} -> x_{st(1)}...x_{st(m)}."""
    if sigma.degree != f.m:
        raise ValueError("degree mismatch")
    s = sigma.images
    return AlgebraElement(f.m, {tuple(s[i - 1] for i in t): c for t, c in f.terms.items()})


def act_right(f: AlgebraElement, sigma: Permutation) -> AlgebraElement:
    """Permute places: x_{i_1}...x_{i_m} -> x_{i_s(1)}...x_{i_s(m)}."""
    if sigma.degree != f.m:
        raise ValueError("degree mismatch")
    s = sigma.images
    return AlgebraElement(f.m, {tuple(t[j - 1] for j in s): c for t, c in f.terms.items()})


def _group_of_blocks(blocks: Iterable[Sequence[int]], m: int, signed: bool) -> AlgebraElement:
    """Sum (optionally signed) over the product of symmetric groups on each block."""
    blocks = [tuple(b) for b in blocks if len(b) > 1]
    terms: dict[tuple[int, ...], int] = {}
    per_block = [list(itertools.permutations(b)) for b in blocks]
    for choice in itertools.product(*per_block):
        imgs = list(range(1, m + 1))
        for b, img in zip(blocks, choice):
            for src, dst in zip(b, img):
                imgs[src - 1] = dst
        key = tuple(imgs)
        terms[key] = perm_sign(key) if signed else 1
    return AlgebraElement(m, terms)


def row_symmetrizer(t: StandardTableau) -> AlgebraElement:
    return _group_of_blocks(t.rows, t.size, signed=False)


def column_symmetrizer(t: StandardTableau) -> AlgebraElement:
    return _group_of_blocks(t.columns(), t.size, signed=True)


def young_symmetrizer(t: StandardTableau) -> AlgebraElement:
    return multiply(row_symmetrizer(t), column_symmetrizer(t))


class NonProportional(ArithmeticError):
    """e_T squared is not a multiple of e_T; indicates a bug upstream."""


def proportionality(f: AlgebraElement, g: AlgebraElement) -> Fraction | None:
    """Return c with f = c*g, or None if no such scalar exists (g must be nonzero)."""
    if not g:
        raise ValueError("reference element is zero")
    if set(f.terms) - set(g.terms):
        return None
    key = next(iter(g.terms))
    c = Fraction(f.terms.get(key, 0)) / Fraction(g.terms[key])
    for k, v in g.terms.items():
        if Fraction(f.terms.get(k, 0)) != c * v:
            return None
    return c


def idempotent_scalar(t: StandardTableau) -> Fraction:
    e = young_symmetrizer(t)
    if not e:
        raise ValueError("young symmetrizer vanished")
    beta = proportionality(multiply(e, e), e)
    if beta is None:
        raise NonProportional(f"e_T^2 is not proportional to e_T for T={t}")
    return beta


def conjugate_tableau_check(sigma: Permutation, t: StandardTableau) -> bool:
    if sigma.degree != t.size:
        raise ValueError("degree mismatch")
    e = young_symmetrizer(t)
    lhs = multiply(act_left(sigma, e), AlgebraElement.basis(sigma.inverse()))
    return lhs == young_symmetrizer(t.relabel(sigma.images))
