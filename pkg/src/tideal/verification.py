"""Property suites behind ``tideal verify``.

Each check yields ``Outcome`` records. A failing record carries a shell
command that reproduces the instance on its own.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from math import factorial
from typing import Callable, Iterator

from .bounds import (
    coprime_lower_bound,
    derived_dim_polynomial,
    fit_pK,
    latyshev_lower_bound,
    omega_upper_bound,
    zeta_circulant_invertible,
    zeta_invertible,
)
from .combinatorics import derive_partition, irrep_dim, partitions_of, standard_tableaux
from .decomposition import Decomposition, decompose_W, dim_W_report, nilpotency_probe
from .glk import multiplicity_upper_bounds
from .multilinear import count_ordered_partitions, enumerate_ordered_partitions
from .perm_algebra import AlgebraElement, all_permutations, idempotent_scalar, multiply, young_symmetrizer
from .stability import central_part, coefficient_polynomial, symmetrization_identity_check, shift_word, stabilization_report
from .substitution import rank_transfer, regev_identity_check


@dataclass(frozen=True)
class Outcome:
    name: str
    ok: bool
    reproduce: str = ""
    detail: str = ""

    def line(self) -> str:
        if self.ok:
            return f"PASS {self.name}" + (f" :: {self.detail}" if self.detail else "")
        tail = f" :: {self.detail}" if self.detail else ""
        return f"FAIL {self.name}{tail} :: reproduce: {self.reproduce}"


OLSSON_REGEV = lambda n: Decomposition(  # noqa: E731
    n + 1, {(n + 1,): 1, (n, 1): 2, (n - 1, 2): 1, (n - 1, 1, 1): 1}
)

DRENSKY_BENANTI = Decomposition(
    8,
    {
        (8,): 1, (7, 1): 4, (6, 2): 5, (6, 1, 1): 5, (5, 3): 3, (5, 2, 1): 6,
        (5, 1, 1, 1): 3, (4, 4): 1, (4, 3, 1): 1, (4, 2, 2): 2, (4, 2, 1, 1): 1, (4, 1, 1, 1, 1): 1,
    },
)


def _random_element(rng: random.Random, m: int, terms: int) -> AlgebraElement:
    perms = list(all_permutations(m))
    acc: dict[tuple[int, ...], int] = {}
    for _ in range(terms):
        p = rng.choice(perms).images
        acc[p] = acc.get(p, 0) + rng.choice((-2, -1, 1, 2, 3))
    return AlgebraElement(m, acc)


def _random_word(rng: random.Random, length: int, letters: int = 3) -> tuple[int, ...]:
    return tuple(rng.randint(1, letters) for _ in range(length))


# -- individual checks ------------------------------------------------------------


def check_dimensions(pairs) -> Iterator[Outcome]:
    for n, m in pairs:
        try:
            rep = dim_W_report(n, m, "both", workers=1)
            ok = True
            detail = f"dim W_{{{n},{m}}} = {rep.value}"
        except AssertionError as exc:
            ok, detail = False, str(exc)
        yield Outcome(f"dimension cross-check ({n},{m})", ok, f"tideal dim --n {n} --m {m} --method both", detail)


def check_vanishing(cases) -> Iterator[Outcome]:
    for n, K in cases:
        d = decompose_W(n, n + K, prune=False, workers=1)
        bad = [str(lam) for lam, _ in d if len(lam) > 2 * K + 1]
        yield Outcome(
            f"long shapes vanish ({n},{n + K})", not bad,
            f"tideal decompose --n {n} --m {n + K} --no-prune", ", ".join(bad),
        )


def check_upper_bounds(cases) -> Iterator[Outcome]:
    for n, K in cases:
        actual = decompose_W(n, n + K, workers=1)
        bound = multiplicity_upper_bounds(K, n)
        ok = all(bound[lam] >= c for lam, c in actual)
        if K == 1:
            ok = ok and bound == actual
        yield Outcome(f"GL bounds dominate ({n},{K})", ok, f"tideal upper --K {K} --n {n}")


def check_sandwich(pairs) -> Iterator[Outcome]:
    for n, m in pairs:
        d = dim_W_report(n, m, "via_multiplicities", workers=1).value
        lo, hi = latyshev_lower_bound(n, m), omega_upper_bound(n, m)
        cp = coprime_lower_bound(n, m)
        ok = lo <= d <= hi and (cp is None or cp <= d) and hi == count_ordered_partitions(n, m)
        yield Outcome(f"bounds sandwich ({n},{m})", ok, f"tideal bounds --n {n} --m {m} --with-dim", f"{lo} <= {d} <= {hi}")


def check_symmetrizers(m_max: int) -> Iterator[Outcome]:
    for m in range(1, m_max + 1):
        ok = True
        for lam in partitions_of(m):
            for t in standard_tableaux(lam):
                e = young_symmetrizer(t)
                beta = idempotent_scalar(t)
                ok = ok and beta.denominator == 1 and beta * irrep_dim(lam) == factorial(m)
                ok = ok and multiply(e, e) == e.scale(beta)
        yield Outcome(f"e_T^2 = beta e_T, m={m}", ok, "tideal verify fast")


def check_regev(m_max: int, rng: random.Random, seed: int) -> Iterator[Outcome]:
    for m in range(1, m_max + 1):
        ok = True
        for lam in partitions_of(m):
            for t in standard_tableaux(lam):
                g = _random_element(rng, m, 3)
                ok = ok and regev_identity_check(t, g)
        yield Outcome(f"Regev identity, m={m}", ok, f"tideal verify fast --seed {seed}")


def check_rank_transfer(m: int, families: int, rng: random.Random, seed: int) -> Iterator[Outcome]:
    ok = True
    shapes = partitions_of(m)
    for _ in range(families):
        lam = rng.choice(shapes)
        t = rng.choice(standard_tableaux(lam))
        fam = [_random_element(rng, m, rng.randint(1, 4)) for _ in range(rng.randint(1, 5))]
        if len(fam) >= 2:
            fam.append(fam[0] + fam[1].scale(2))
        a, b = rank_transfer(t, fam)
        ok = ok and a == b
    yield Outcome(f"rank transfer, m={m}, {families} families", ok, f"tideal verify fast --seed {seed}")


def check_symmetrization(rng: random.Random, seed: int) -> Iterator[Outcome]:
    ok = True
    for r in range(1, 4):
        for s in range(0, 4):
            ms = [_random_word(rng, rng.randint(1, 2)) for _ in range(r)]
            ok = ok and symmetrization_identity_check(ms, s)
    yield Outcome("symmetrization by F_s", ok, f"tideal verify fast --seed {seed}")


def check_coefficient_examples() -> Iterator[Outcome]:
    fit = coefficient_polynomial([(2,), (1, 1)], (1, 2) + (1,) * 7, 8)
    ok = all(v == 6 + s for s, v in fit.samples) and not fit.residual and fit.degree == 1
    yield Outcome("shifted coefficient 6+s", ok, "tideal coeffpoly --mono y2 --mono 'y1^2' --word 'y1 y2 y1^7' --s-max 8")
    bad = coefficient_polynomial([(2, 1, 2), (2,)], (2, 1, 2, 2, 1), 8)
    ok = bad.residual and bad.samples[0][1] == 1 and all(v == 0 for _, v in bad.samples[1:])
    yield Outcome("non-polynomial coefficient flagged", ok, "tideal coeffpoly --mono 'y2 y1 y2' --mono y2 --word 'y2 y1 y2^2 y1' --s-max 8")


def check_central_shift(rng: random.Random, seed: int) -> Iterator[Outcome]:
    ok = True
    for _ in range(100):
        u = _random_word(rng, rng.randint(1, 8))
        if central_part(u) is None:
            continue
        for s in range(4):
            ok = ok and central_part(shift_word(u, s))[1] == central_part(u)[1] + s
    yield Outcome("central part grows by s", ok, f"tideal verify fast --seed {seed}")


def check_zeta(max_order: int = 12) -> Iterator[Outcome]:
    bad = [
        (n, k) for n in range(1, max_order + 1) for k in range(n)
        if zeta_invertible(n, k) != zeta_circulant_invertible(n, k)
    ]
    yield Outcome(f"zeta_k criterion vs circulant rank, order <= {max_order}", not bad, "tideal zeta --order N --k K", str(bad) if bad else "")


def check_derived_polynomials(size: int = 6, d_max: int = 8) -> Iterator[Outcome]:
    ok = all(
        derived_dim_polynomial(lam)(d) == irrep_dim(derive_partition(lam, d))
        for k in range(1, size + 1) for lam in partitions_of(k) for d in range(d_max + 1)
    )
    yield Outcome("derived shape dimension polynomials", ok, "tideal verify fast")


def check_ordered_partition_count(m_max: int) -> Iterator[Outcome]:
    ok = all(
        sum(1 for _ in enumerate_ordered_partitions(n, m)) == count_ordered_partitions(n, m)
        for m in range(1, m_max + 1) for n in range(1, m + 1)
    )
    yield Outcome("ordered partition count", ok, "tideal verify fast")


# -- suites -----------------------------------------------------------------------


def fast_suite(seed: int = 0) -> Iterator[Outcome]:
    rng = random.Random(seed)
    pairs = [(n, m) for m in range(1, 6) for n in range(1, m + 1)]
    yield from check_ordered_partition_count(5)
    yield from check_dimensions(pairs)
    yield from check_vanishing([(3, 1), (4, 1)])
    yield from check_upper_bounds([(3, 1), (4, 1), (2, 2), (3, 2)])
    yield from check_sandwich(pairs)
    yield from check_symmetrizers(5)
    yield from check_regev(4, rng, seed)
    yield from check_rank_transfer(4, 20, rng, seed)
    yield from check_symmetrization(rng, seed)
    yield from check_coefficient_examples()
    yield from check_central_shift(rng, seed)
    yield from check_zeta()
    yield from check_derived_polynomials()


def full_suite(seed: int = 0, workers: int | None = None, emit: Callable[[str], None] | None = None) -> Iterator[Outcome]:
    yield from fast_suite(seed)
    rng = random.Random(seed + 1)
    pairs = [(n, m) for m in range(6, 8) for n in range(1, m + 1)] + [(3, 6), (6, 8)]
    yield from check_dimensions(pairs)
    yield from check_sandwich(pairs)
    yield from check_rank_transfer(5, 50, rng, seed)
    for n in range(3, 7):
        d = decompose_W(n, n + 1, workers=workers)
        yield Outcome(f"Olsson-Regev table n={n}", d == OLSSON_REGEV(n) and d.dimension() == n * (n + 1),
                      f"tideal decompose --n {n} --m {n + 1}")
    d68 = decompose_W(6, 8, prune=False, workers=workers)
    if emit:
        emit(d68.text())
    yield Outcome("(6,8) table", d68 == DRENSKY_BENANTI and d68.dimension() == 1128, "tideal decompose --n 6 --m 8 --no-prune")
    yield from check_vanishing([(5, 1), (6, 2)])
    yield from check_upper_bounds([(5, 1), (6, 1), (6, 2), (7, 2)])
    for K, lo, hi, want in ((1, 3, 6, 3), (2, 6, 8, 6), (0, 1, 4, 1)):
        rep = stabilization_report(K, lo, hi, workers=workers)
        yield Outcome(f"stabilization onset K={K}", rep.n_obs == want, f"tideal stabilize --K {K} --n-min {lo} --n-max {hi}")
    yield Outcome("d(2) = 3", nilpotency_probe(2, workers=workers) == 3, "tideal dprobe --n 2")
    yield Outcome("d(3) = 6", nilpotency_probe(3, workers=workers) == 6, "tideal dprobe --n 3")
    f1 = fit_pK(1, {n: n * (n + 1) for n in range(3, 7)})
    yield Outcome("p_1 fit", f1.validated is True and str(f1) == "n^2 + n", "tideal verify full")
    samples = {n: decompose_W(n, n + 2, workers=workers).dimension() for n in range(6, 10)}
    f2 = fit_pK(2, samples, base=decompose_W(6, 8, workers=workers))
    ok = f2.validated is True and all(f2(n) * 2 == n * (n + 2) * (n * n + 2 * n - 1) for n in range(0, 20))
    yield Outcome("p_2 fit", ok, "tideal verify full", str(f2))
