"""Closed-form dimension bounds, the zeta_k invertibility test, and exact polynomial fits."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import comb, factorial, gcd
from typing import Mapping, Sequence

from .combinatorics import Partition, as_partition, hook_table, irrep_dim, partitions_of
from .decomposition import Decomposition
from .exact_linalg import SparseMatrix, rank_exact
from .stability import format_polynomial, newton_fit


def omega_upper_bound(n: int, m: int) -> int:
    if not 1 <= n <= m:
        raise ValueError("need 1 <= n <= m")
    return comb(m, n) * factorial(m - 1) // factorial(n - 1)


def latyshev_lower_bound(n: int, m: int) -> int:
    return sum(irrep_dim(lam) ** 2 for lam in partitions_of(m) if len(lam) >= n)


def coprime_lower_bound(n: int, m: int) -> int | None:
    """m!/(n-1)! when gcd(n, m) = 1, otherwise None."""
    if n < 1 or gcd(n, m) != 1:
        return None
    return factorial(m) // factorial(n - 1)


# -- zeta_k = e + g + ... + g^k in the group algebra of a cyclic group ------------


def zeta_invertible(n: int, k: int) -> bool:
    if not 0 <= k < n:
        raise ValueError(f"need 0 <= k < n, got k={k}, n={n}")
    return gcd(k + 1, n) == 1


def zeta_circulant(n: int, k: int) -> SparseMatrix:
    """Matrix of multiplication by zeta_k on the regular representation."""
    return SparseMatrix([sorted(((i + j) % n, 1) for j in range(k + 1)) for i in range(n)], n)


def zeta_circulant_invertible(n: int, k: int) -> bool:
    if not 0 <= k < n:
        raise ValueError(f"need 0 <= k < n, got k={k}, n={n}")
    return rank_exact(zeta_circulant(n, k)) == n


# -- polynomials ------------------------------------------------------------------


@dataclass(frozen=True)
class DimPolynomial:
    """Exact polynomial, coefficients lowest degree first.

    ``validated`` is None when the polynomial was not produced by a fit; for
    fits it records whether the held-out samples were reproduced.
    """

    coefficients: tuple[Fraction, ...]
    var: str = "n"
    validated: bool | None = None
    held_out: tuple[int, ...] = ()
    method: str = ""

    def __post_init__(self) -> None:
        cs = [Fraction(c) for c in self.coefficients]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coefficients", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x: int | Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __eq__(self, other: object) -> bool:
        if isinstance(other, DimPolynomial):
            return self.coefficients == other.coefficients
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def __add__(self, other: "DimPolynomial") -> "DimPolynomial":
        a, b = list(self.coefficients), list(other.coefficients)
        size = max(len(a), len(b))
        a += [Fraction(0)] * (size - len(a))
        b += [Fraction(0)] * (size - len(b))
        return DimPolynomial(tuple(x + y for x, y in zip(a, b)), self.var)

    def scale(self, c: int | Fraction) -> "DimPolynomial":
        return DimPolynomial(tuple(x * c for x in self.coefficients), self.var)

    def shift(self, a: int, var: str | None = None) -> "DimPolynomial":
        """The polynomial x -> self(x + a)."""
        out = [Fraction(0)] * len(self.coefficients)
        for i, c in enumerate(self.coefficients):
            for j in range(i + 1):
                out[j] += c * comb(i, j) * Fraction(a) ** (i - j)
        return DimPolynomial(tuple(out), var or self.var)

    def __str__(self) -> str:
        return format_polynomial(self.coefficients, self.var)

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coefficients]

    @classmethod
    def from_json(cls, data: Sequence[str], var: str = "n") -> "DimPolynomial":
        return cls(tuple(Fraction(x) for x in data), var)

    @classmethod
    def from_roots(cls, shifts: Sequence[int], lead: Fraction = Fraction(1), var: str = "d") -> "DimPolynomial":
        """lead * prod (x + s)."""
        cs = [Fraction(lead)]
        for s in shifts:
            nxt = [Fraction(0)] * (len(cs) + 1)
            for i, c in enumerate(cs):
                nxt[i] += c * s
                nxt[i + 1] += c
            cs = nxt
        return cls(tuple(cs), var)


def derived_dim_polynomial(lam: Partition | Sequence[int] | str) -> DimPolynomial:
    """q(d) = dim S^{lam^(d)}.

    With N = |lam|, the hook formula gives (N+d)! / (d! * prod_j (h_j + d) * H'),
    where h_j are the first-row hooks and H' the product of the other hooks.
    The h_j are distinct values in 1..N, so the factorials cancel against them.
    """
    lam = as_partition(lam)
    if lam.total == 0:
        raise ValueError("partition must be nonempty")
    hooks = hook_table(lam)
    first = set(hooks[0])
    rest = 1
    for row in hooks[1:]:
        for h in row:
            rest *= h
    keep = [i for i in range(1, lam.total + 1) if i not in first]
    return DimPolynomial.from_roots(keep, Fraction(1, rest), var="d")


def structural_pK(K: int, base_n: int, base: Decomposition) -> DimPolynomial:
    """sum over lam in the decomposition at base_n of mult * q_lam(n - base_n)."""
    acc = DimPolynomial((Fraction(0),), "n")
    for lam, mult in base:
        acc = acc + derived_dim_polynomial(lam).shift(-base_n, "n").scale(mult)
    return replace(acc, var="n")


def fit_pK(
    K: int,
    samples: Mapping[int, int],
    base: Decomposition | None = None,
) -> DimPolynomial:
    """Exact polynomial through dim W_{n,n+K} samples, checked on held-out points.

    With ``base`` (the decomposition at the smallest sampled n) the polynomial
    is assembled from the derived-shape dimension polynomials, and every
    sample is held out for validation. Without it, the minimal-degree
    interpolant through all but the last sample is validated on that one, so
    a degree-D answer needs D+2 samples.
    A failed validation means the sampled range is not yet stable; the result
    is returned with ``validated=False``.
    """
    pts = sorted(samples.items())
    if not pts:
        raise ValueError("no samples")
    if base is not None:
        if base.m != pts[0][0] + K:
            raise ValueError("base decomposition must belong to the smallest sampled n")
        poly = structural_pK(K, pts[0][0], base)
        ok = all(poly(n) == v for n, v in pts)
        return replace(poly, validated=ok, held_out=tuple(n for n, _ in pts), method="structural")
    hold = 1 if len(pts) >= 2 else 0
    fit = DimPolynomial(tuple(newton_fit(pts[: len(pts) - hold])), "n")
    test = pts[len(pts) - hold :]
    ok = all(fit(n) == v for n, v in test) if test else False
    return replace(fit, validated=ok, held_out=tuple(n for n, _ in test), method="interpolation")


# -- growth probe -----------------------------------------------------------------


@dataclass
class GrowthBand:
    K: int
    ratios: dict[int, Fraction] = field(default_factory=dict)

    @property
    def low(self) -> Fraction:
        return min(self.ratios.values())

    @property
    def high(self) -> Fraction:
        return max(self.ratios.values())

    def to_json(self) -> dict:
        return {
            "K": self.K,
            "ratios": {str(n): float(r) for n, r in sorted(self.ratios.items())},
            "low": float(self.low),
            "high": float(self.high),
        }


def growth_band(K: int, dims: Mapping[int, int]) -> GrowthBand:
    """Record dim W_{n,n+K} / n^{2K}; an observation, not a test."""
    return GrowthBand(K, {n: Fraction(d, n ** (2 * K)) for n, d in sorted(dims.items())})
