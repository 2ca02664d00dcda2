"""Substitutions x -> y, linearization back to V_m, and highest-weight images.

A word is a tuple of positive letter indices; ``(1, 2, 1)`` is y1 y2 y1.
"""
from __future__ import annotations

import itertools
import re
from collections import Counter
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .combinatorics import StandardTableau, canonical_tableau
from .perm_algebra import AlgebraElement, Permutation, act_left, multiply, perm_sign, young_symmetrizer

Word = tuple[int, ...]
Scalar = Union[int, Fraction]


def _norm(c: Scalar) -> Scalar:
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


class YPolynomial:
    """Sparse noncommutative polynomial in y_1, y_2, ...: word -> exact coefficient."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, Scalar] | None = None):
        self.terms: dict[Word, Scalar] = {}
        for w, c in (terms or {}).items():
            if c:
                self.terms[tuple(w)] = _norm(c)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Word, Scalar]]) -> "YPolynomial":
        acc: dict[Word, Scalar] = {}
        for w, c in pairs:
            acc[w] = acc.get(w, 0) + c
        return cls(acc)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, YPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other: "YPolynomial") -> "YPolynomial":
        acc = dict(self.terms)
        for w, c in other.terms.items():
            acc[w] = acc.get(w, 0) + c
        return YPolynomial(acc)

    def __sub__(self, other: "YPolynomial") -> "YPolynomial":
        return self + other.scale(-1)

    def scale(self, c: Scalar) -> "YPolynomial":
        return YPolynomial({w: v * c for w, v in self.terms.items()})

    def coefficient(self, w: Sequence[int]) -> Scalar:
        return self.terms.get(tuple(w), 0)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for w in sorted(self.terms):
            c = self.terms[w]
            txt = format_word(w)
            out.append(txt if c == 1 else f"{c}*{txt}")
        return " + ".join(out)

    __repr__ = __str__


def format_word(w: Sequence[int]) -> str:
    """Exponent-folded text form, e.g. ``y1 y2 y1^3``."""
    out = []
    for letter, run in itertools.groupby(w):
        k = len(list(run))
        out.append(f"y{letter}" + (f"^{k}" if k > 1 else ""))
    return " ".join(out) if out else "1"


_TOKEN = re.compile(r"y(\d+)(?:\^(\d+))?")


def parse_word(text: str) -> Word:
    body = text.strip()
    if body in ("", "1"):
        return ()
    out: list[int] = []
    pos = 0
    for m in _TOKEN.finditer(body):
        if body[pos : m.start()].strip():
            raise ValueError(f"bad word: {text!r}")
        out.extend([int(m.group(1))] * int(m.group(2) or 1))
        pos = m.end()
    if body[pos:].strip() or not out:
        raise ValueError(f"bad word: {text!r}")
    return tuple(out)


def substitute(f: AlgebraElement) -> YPolynomial:
    """x_i -> y_i."""
    return YPolynomial(dict(f.terms))


def substitute_by_tableau(t: StandardTableau, f: AlgebraElement) -> YPolynomial:
    """x_j -> y_{row of j in t}."""
    if f.m != t.size:
        raise ValueError("degree mismatch")
    row = t.row_of()
    return YPolynomial.from_pairs((tuple(row[x] for x in key), c) for key, c in f.terms.items())


def multidegree(w: Sequence[int]) -> tuple[int, ...]:
    if not w:
        return ()
    cnt = Counter(w)
    return tuple(cnt.get(i, 0) for i in range(1, max(w) + 1))


def linearize(g: YPolynomial, m: int) -> AlgebraElement:
    """Lin_m, by labelling the occurrences of y_i with its block of consecutive labels."""
    acc: dict[tuple[int, ...], Scalar] = {}
    for w, c in g.terms.items():
        if len(w) != m:
            raise ValueError(f"word {format_word(w)} is not of degree {m}")
        h = multidegree(w)
        start = 1
        positions = []
        for i, hi in enumerate(h, start=1):
            positions.append(([p for p, x in enumerate(w) if x == i], list(range(start, start + hi))))
            start += hi
        for choice in itertools.product(*(itertools.permutations(lab) for _, lab in positions)):
            imgs = [0] * m
            for (pos, _), lab in zip(positions, choice):
                for p, x in zip(pos, lab):
                    imgs[p] = x
            key = tuple(imgs)
            acc[key] = acc.get(key, 0) + c
    return AlgebraElement(m, {k: v for k, v in acc.items() if v})


def column_group(t: StandardTableau) -> list[tuple[tuple[int, ...], int]]:
    """Elements of the column group of t as (one-line images, sign)."""
    m = t.size
    cols = [c for c in t.columns() if len(c) > 1]
    out = []
    for choice in itertools.product(*(itertools.permutations(c) for c in cols)):
        imgs = list(range(1, m + 1))
        for c, img in zip(cols, choice):
            for src, dst in zip(c, img):
                imgs[src - 1] = dst
        key = tuple(imgs)
        out.append((key, perm_sign(key)))
    return out


def highest_weight_image(t: StandardTableau, f: AlgebraElement) -> YPolynomial:
    """b_T(y) f: alternating sum over the column group of tableau-substituted relabelings of f."""
    if f.m != t.size:
        raise ValueError("degree mismatch")
    row = t.row_of()
    acc: dict[Word, Scalar] = {}
    for tau, sgn in column_group(t):
        letter = [0] + [row[tau[j]] for j in range(t.size)]
        for key, c in f.terms.items():
            w = tuple(letter[x] for x in key)
            acc[w] = acc.get(w, 0) + sgn * c
    return YPolynomial(acc)


def regev_permutation(t: StandardTableau) -> Permutation:
    """The permutation sending each entry of t to the entry in the same cell of the row-major tableau."""
    canon = canonical_tableau(t.shape)
    imgs = [0] * t.size
    for r_t, r_c in zip(t.rows, canon.rows):
        for a, b in zip(r_t, r_c):
            imgs[a - 1] = b
    return Permutation(tuple(imgs))


def regev_identity_check(t: StandardTableau, g: AlgebraElement) -> bool:
    """Lin(b_T(y) g) == sigma * e_T * g, with sigma mapping t onto the row-major tableau."""
    lhs = linearize(highest_weight_image(t, g), t.size)
    rhs = act_left(regev_permutation(t), multiply(young_symmetrizer(t), g))
    return lhs == rhs


def rank_transfer(t: StandardTableau, family: Sequence[AlgebraElement]) -> tuple[int, int]:
    """(rank of {e_T f_i}, rank of {b_T(y) f_i}); these agree for every family."""
    from .exact_linalg import SparseMatrix, rank_exact

    e = young_symmetrizer(t)
    left = [multiply(e, f).terms for f in family]
    right = [highest_weight_image(t, f).terms for f in family]

    def to_matrix(rows: list[dict]) -> SparseMatrix:
        keys = sorted({k for r in rows for k in r})
        index = {k: i for i, k in enumerate(keys)}
        return SparseMatrix.from_dicts([{index[k]: v for k, v in r.items()} for r in rows], len(keys))

    return rank_exact(to_matrix(left)), rank_exact(to_matrix(right))
