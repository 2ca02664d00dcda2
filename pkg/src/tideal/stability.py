"""Stabilization of W_{n,n+K} in n, and coefficient polynomials of shifted words."""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Sequence

from .combinatorics import Partition
from .decomposition import BudgetExceeded, Decomposition, decompose_W
from .glk import is_derived_decomposition
from .substitution import Word, YPolynomial


@dataclass
class StabilizationReport:
    K: int
    n_values: list[int]
    decompositions: dict[int, Decomposition]
    derived: dict[tuple[int, int], bool]
    n_obs: int | None
    families: dict[tuple[int, ...], list[int]]
    decreases: list[tuple[tuple[int, ...], int]]
    complete: bool = True

    def to_json(self) -> dict:
        return {
            "K": self.K,
            "n": self.n_values,
            "complete": self.complete,
            "N_obs": self.n_obs,
            "decompositions": {str(n): d.to_json() for n, d in self.decompositions.items()},
            "derived": [
                {"from": a, "to": b, "derived": v} for (a, b), v in sorted(self.derived.items())
            ],
            "families": [
                {"tail": list(t), "mults": seq} for t, seq in sorted(self.families.items())
            ],
            "decreases": [{"tail": list(t), "n": n} for t, n in self.decreases],
        }


def _observed_onset(ns: list[int], derived: dict[tuple[int, int], bool]) -> int | None:
    for i, a in enumerate(ns):
        if all(derived[(a, b)] for b in ns[i + 1 :]):
            return a
    return None


def stabilization_report(
    K: int,
    n_min: int,
    n_max: int,
    budget_seconds: float | None = None,
    workers: int | None = 1,
    decomposer: Callable[[int, int], Decomposition] | None = None,
) -> StabilizationReport:
    """Decompose W_{n,n+K} for n_min..n_max and find where the derived pattern starts."""
    if n_min < max(K, 1) or n_max < n_min:
        raise ValueError("need max(K,1) <= n_min <= n_max")
    deadline = None if budget_seconds is None else time.monotonic() + budget_seconds
    decomposer = decomposer or (lambda n, m: decompose_W(n, m, prune=True, workers=workers))
    decs: dict[int, Decomposition] = {}
    complete = True
    for n in range(n_min, n_max + 1):
        if deadline is not None and time.monotonic() > deadline:
            complete = False
            break
        try:
            decs[n] = decomposer(n, n + K)
        except BudgetExceeded:
            complete = False
            break
    ns = sorted(decs)
    derived = {
        (a, b): is_derived_decomposition(decs[b], decs[a]) for a in ns for b in ns if a <= b
    }
    n_obs = _observed_onset(ns, derived) if ns else None
    families: dict[tuple[int, ...], list[int]] = {}
    for d in decs.values():
        for lam, _ in d:
            families.setdefault(lam.parts[1:], [])
    decreases = []
    for tail in families:
        seq = []
        for n in ns:
            first = n + K - sum(tail)
            if tail and first < tail[0]:
                seq.append(0)
                continue
            seq.append(decs[n][Partition((first,) + tail)] if first > 0 else 0)
        families[tail] = seq
        for i in range(1, len(seq)):
            if seq[i] < seq[i - 1]:
                decreases.append((tail, ns[i]))
    return StabilizationReport(K, ns, decs, derived, n_obs, families, decreases, complete)


# -- words and central parts ------------------------------------------------------


def central_part(u: Sequence[int]) -> tuple[int, int] | None:
    """(start, length) of the leftmost longest run of y1, 1-based; None if y1 is absent."""
    best: tuple[int, int] | None = None
    i = 0
    while i < len(u):
        if u[i] == 1:
            j = i
            while j < len(u) and u[j] == 1:
                j += 1
            if best is None or j - i > best[1]:
                best = (i + 1, j - i)
            i = j
        else:
            i += 1
    return best


def shift_word(u: Sequence[int], s: int) -> Word:
    """Insert s copies of y1 in front of the central part."""
    cp = central_part(u)
    if cp is None:
        raise ValueError("word has no central part")
    start = cp[0] - 1
    return tuple(u[:start]) + (1,) * s + tuple(u[start:])


def F_s(monomials: Sequence[Sequence[int]], s: int) -> YPolynomial:
    """Sum over a_0+..+a_r = s of y1^{a_0} m_1 y1^{a_1} ... m_r y1^{a_r}."""
    ms = [tuple(m) for m in monomials]
    r = len(ms)
    acc: dict[Word, int] = {}
    for bars in itertools.combinations(range(s + r), r):
        gaps, prev = [], -1
        for b in bars:
            gaps.append(b - prev - 1)
            prev = b
        gaps.append(s + r - prev - 1)
        w: tuple[int, ...] = (1,) * gaps[0]
        for m, a in zip(ms, gaps[1:]):
            w += m + (1,) * a
        acc[w] = acc.get(w, 0) + 1
    return YPolynomial(acc)


def F_coefficient(word: Sequence[int], monomials: Sequence[Sequence[int]], s: int) -> int:
    """Coefficient of ``word`` in F_s(monomials), without expanding F_s."""
    word = tuple(word)
    ms = [tuple(m) for m in monomials]
    if len(word) != s + sum(len(m) for m in ms):
        return 0

    @lru_cache(maxsize=None)
    def ways(i: int, pos: int) -> int:
        if i == len(ms):
            return int(all(x == 1 for x in word[pos:]))
        total = 0
        p = pos
        while True:
            if word[p : p + len(ms[i])] == ms[i]:
                total += ways(i + 1, p + len(ms[i]))
            if p < len(word) and word[p] == 1:
                p += 1
            else:
                break
        return total

    return ways(0, 0)


def P_symmetric(monomials: Sequence[Sequence[int]]) -> YPolynomial:
    """P_r(m_1, ..., m_r) on y-words: sum over all r! orderings."""
    acc: dict[Word, int] = {}
    for order in itertools.permutations([tuple(m) for m in monomials]):
        w = tuple(x for m in order for x in m)
        acc[w] = acc.get(w, 0) + 1
    return YPolynomial(acc)


def shifted_symmetric(monomials: Sequence[Sequence[int]], s: int) -> YPolynomial:
    """P^(s) = P_{r+s}(m_1..m_r, y1, ..., y1), by direct expansion."""
    return P_symmetric([*monomials, *([(1,)] * s)])


def symmetrization_identity_check(monomials: Sequence[Sequence[int]], s: int) -> bool:
    """P_{r+s}(m, y1^s) == s! * sum over orderings sigma of F_s(m_sigma)."""
    lhs = shifted_symmetric(monomials, s)
    acc = YPolynomial()
    for order in itertools.permutations(monomials):
        acc = acc + F_s(order, s)
    return lhs == acc.scale(factorial(s))


# -- coefficient polynomials ------------------------------------------------------


@dataclass
class CoeffPolyFit:
    samples: list[tuple[int, int]]
    coefficients: list[Fraction]
    residual: bool
    offset: int
    validated: list[int] = field(default_factory=list)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1 if self.coefficients else -1

    def __call__(self, s: int) -> Fraction:
        return sum((c * s**i for i, c in enumerate(self.coefficients)), Fraction(0))

    def text(self) -> str:
        return format_polynomial(self.coefficients, "s")

    def to_json(self) -> dict:
        return {
            "samples": [list(p) for p in self.samples],
            "coefficients": [str(c) for c in self.coefficients],
            "degree": self.degree,
            "residual": self.residual,
            "offset": self.offset,
        }


def newton_fit(points: Sequence[tuple[int, int | Fraction]]) -> list[Fraction]:
    """Monomial coefficients, lowest degree first, of the minimal-degree interpolant."""
    xs = [Fraction(x) for x, _ in points]
    table = [Fraction(y) for _, y in points]
    newton = [table[0]] if table else []
    for level in range(1, len(xs)):
        table = [(table[i + 1] - table[i]) / (xs[i + level] - xs[i]) for i in range(len(table) - 1)]
        newton.append(table[0])
    while newton and newton[-1] == 0:
        newton.pop()
    coeffs: list[Fraction] = []
    # expand sum_k newton[k] * prod_{j<k} (x - xs[j]) via Horner from the top
    for k in range(len(newton) - 1, -1, -1):
        shifted = [Fraction(0)] + coeffs
        for i, c in enumerate(coeffs):
            shifted[i] -= xs[k] * c
        shifted[0] += newton[k]
        coeffs = shifted
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def format_polynomial(coeffs: Sequence[Fraction], var: str) -> str:
    if not coeffs:
        return "0"
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if mono and c == 1:
            body = mono
        elif mono and c == -1:
            body = "-" + mono
        else:
            body = f"{c}" + (f"*{mono}" if mono else "")
        terms.append(body)
    return " + ".join(terms).replace("+ -", "- ")


def coefficient_polynomial(P: Sequence[Sequence[int]], u: Sequence[int], s_max: int) -> CoeffPolyFit:
    """Fit c(s) = Coef_{u^(s)}(P^(s)) / s! for s = 0..s_max, with P = P_r(m_1..m_r).

    c(s) is evaluated as sum over orderings of the coefficient in F_{s+t},
    where t = |u| - sum |m_i| counts the y1's already present in u. For t = 0
    this is exactly Coef(P^(s))/s!. A polynomial is fitted through all samples
    except the last two, which then validate it. ``residual`` is set when the
    validation fails.
    """
    if central_part(u) is None:
        raise ValueError("word has no central part")
    ms = [tuple(m) for m in P]
    offset = len(u) - sum(len(m) for m in ms)
    samples = []
    for s in range(s_max + 1):
        w = shift_word(u, s)
        if offset < 0:
            samples.append((s, 0))
            continue
        c = sum(F_coefficient(w, order, s + offset) for order in itertools.permutations(ms))
        samples.append((s, c))
    hold = 2 if s_max >= 2 else 0
    prefix = samples[: len(samples) - hold]
    coeffs = newton_fit(prefix)
    fit = CoeffPolyFit(samples, coeffs, False, offset)
    for s, v in samples[len(samples) - hold :]:
        fit.validated.append(s)
        if fit(s) != v:
            fit.residual = True
    return fit
