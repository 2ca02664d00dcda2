"""Acceptance suite: one pytest test (or group) per criterion.

Run with ``pytest tests/test_acceptance.py -v``; the terminal summary prints
one PASS/FAIL line per criterion. ``python tests/test_acceptance.py`` does the
same.
"""
from __future__ import annotations

import itertools
import random
import sys
import time
from math import factorial, gcd

import numpy as np
import pytest

from tideal.bounds import (
    coprime_lower_bound,
    fit_pK,
    latyshev_lower_bound,
    omega_upper_bound,
    zeta_circulant_invertible,
    zeta_invertible,
)
from tideal.combinatorics import irrep_dim, partitions_of, standard_tableaux
from tideal.decomposition import Decomposition, decompose_W, dim_W, nilpotency_probe
from tideal.glk import multiplicity_upper_bounds
from tideal.multilinear import spanning_rank
from tideal.perm_algebra import (
    AlgebraElement,
    Permutation,
    act_left,
    all_permutations,
    idempotent_scalar,
    multiply,
    young_symmetrizer,
)
from tideal.stability import (
    F_s,
    central_part,
    coefficient_polynomial,
    symmetrization_identity_check,
    shift_word,
    stabilization_report,
)
from tideal.substitution import rank_transfer, regev_identity_check

OLSSON_REGEV = {
    n: Decomposition(n + 1, {(n + 1,): 1, (n, 1): 2, (n - 1, 2): 1, (n - 1, 1, 1): 1}) for n in range(3, 7)
}
TABLE_6_8 = Decomposition(
    8,
    {
        (8,): 1, (7, 1): 4, (6, 2): 5, (6, 1, 1): 5, (5, 3): 3, (5, 2, 1): 6,
        (5, 1, 1, 1): 3, (4, 4): 1, (4, 3, 1): 1, (4, 2, 2): 2, (4, 2, 1, 1): 1, (4, 1, 1, 1, 1): 1,
    },
)

# decompositions computed once and shared between criteria
_cache: dict[tuple[int, int, bool], Decomposition] = {}


def decomposition(n: int, m: int, prune: bool = True) -> Decomposition:
    key = (n, m, prune)
    if key not in _cache:
        _cache[key] = decompose_W(n, m, prune=prune, workers=1)
    return _cache[key]


def random_element(rng: random.Random, m: int, terms: int) -> AlgebraElement:
    perms = list(all_permutations(m))
    acc: dict[tuple[int, ...], int] = {}
    for _ in range(terms):
        p = rng.choice(perms).images
        acc[p] = acc.get(p, 0) + rng.choice((-2, -1, 1, 2))
    return AlgebraElement(m, acc)


# 1 -----------------------------------------------------------------------------


@pytest.mark.criterion(1, "W_{2,2} is one-dimensional, {(2):1}")
def test_criterion_01_w22():
    start = time.monotonic()
    d = decompose_W(2, 2, prune=False, workers=1)
    assert d == Decomposition(2, {(2,): 1})
    assert dim_W(2, 2, "both", workers=1) == 1
    assert time.monotonic() - start < 1.0


# 2 -----------------------------------------------------------------------------


@pytest.mark.criterion(2, "d(2) = 3 and d(3) = 6 with dim W_{2,3} = 3!, dim W_{3,6} = 6!")
def test_criterion_02_nilpotency():
    start = time.monotonic()
    assert dim_W(2, 3, "both", workers=1) == factorial(3)
    assert nilpotency_probe(2, workers=1) == 3
    res = spanning_rank(3, 6)  # the 1200 x 720 spanning matrix, modular first
    assert res.value == factorial(6) and res.certified
    assert nilpotency_probe(3, workers=1) == 6
    assert time.monotonic() - start < 600


# 3 -----------------------------------------------------------------------------


@pytest.mark.criterion(3, "Olsson-Regev decomposition of W_{n,n+1}, n = 3..6")
def test_criterion_03_olsson_regev():
    start = time.monotonic()
    for n in range(3, 7):
        d = decomposition(n, n + 1)
        assert d == OLSSON_REGEV[n], n
        assert d.dimension() == n * (n + 1)
    assert time.monotonic() - start < 60


# 4 -----------------------------------------------------------------------------


@pytest.mark.criterion(4, "Drensky-Benanti table for W_{6,8}, dim 1128, unpruned")
def test_criterion_04_table_6_8():
    start = time.monotonic()
    d = decomposition(6, 8, prune=False)
    assert d == TABLE_6_8
    assert [c for _, c in d] == [1, 4, 5, 5, 3, 6, 3, 1, 1, 2, 1, 1]
    assert d.dimension() == 1128
    assert time.monotonic() - start < 1800


# 5 -----------------------------------------------------------------------------


@pytest.mark.criterion(5, "shapes longer than 2K+1 get multiplicity 0 without pruning")
@pytest.mark.parametrize("n,K", [(3, 1), (4, 1), (5, 1), (6, 2)])
def test_criterion_05_vanishing(n, K):
    d = decomposition(n, n + K, prune=False)
    long_shapes = [lam for lam in partitions_of(n + K) if len(lam) > 2 * K + 1]
    assert long_shapes, "the check must cover at least one long shape"
    assert all(d[lam] == 0 for lam in long_shapes)
    assert d == decomposition(n, n + K, prune=True)


# 6 -----------------------------------------------------------------------------


@pytest.mark.criterion(6, "GL upper bounds dominate, with equality at K = 1")
@pytest.mark.parametrize("n,K", [(3, 1), (4, 1), (5, 1), (6, 1), (6, 2), (7, 2), (8, 2)])
def test_criterion_06_upper_bounds(n, K):
    actual = decomposition(n, n + K)
    bound = multiplicity_upper_bounds(K, n)
    for lam in partitions_of(n + K):
        assert bound[lam] >= actual[lam], lam
    if K == 1:
        assert bound == actual


# 7 -----------------------------------------------------------------------------


@pytest.mark.criterion(7, "observed stabilization onsets N_obs(1) = 3, N_obs(2) = 6")
def test_criterion_07_stabilization():
    dec = lambda n, m: decomposition(n, m)  # noqa: E731
    r1 = stabilization_report(1, 3, 6, decomposer=dec)
    r2 = stabilization_report(2, 6, 8, decomposer=dec)
    assert r1.complete and r2.complete
    assert r1.n_obs == 3
    assert r2.n_obs == 6
    assert all(r1.derived[(3, b)] for b in range(3, 7))
    # onset is not earlier than observed: W_{5,7} does not derive W_{6,8}
    r2_wide = stabilization_report(2, 5, 8, decomposer=dec)
    assert r2_wide.n_obs == 6


# 8 -----------------------------------------------------------------------------

SANDWICH_PAIRS = [(n, m) for m in range(1, 8) for n in range(1, m + 1)] + [(3, 6), (6, 8)]


@pytest.mark.criterion(8, "latyshev <= dim W <= omega, coprime bound below dim W")
@pytest.mark.parametrize("n,m", SANDWICH_PAIRS)
def test_criterion_08_sandwich(n, m):
    d = decomposition(n, m).dimension()
    assert latyshev_lower_bound(n, m) <= d <= omega_upper_bound(n, m)
    cp = coprime_lower_bound(n, m)
    if gcd(n, m) == 1:
        assert cp is not None and cp <= d
    else:
        assert cp is None


# 9 -----------------------------------------------------------------------------


class Regular:
    """The group algebra of S_m as dense vectors, with a precomputed product table.

    A second implementation of the multiplication, independent of the library's.
    Matrices are float64; all entries stay far below 2^53, so products are exact.
    """

    def __init__(self, m: int):
        self.perms = [p.images for p in all_permutations(m)]
        index = {p: i for i, p in enumerate(self.perms)}
        self.size = len(self.perms)
        self.table = np.array(
            [[index[tuple(a[b[k] - 1] for k in range(m))] for b in self.perms] for a in self.perms], dtype=np.int64
        )

    def vec(self, f: AlgebraElement) -> np.ndarray:
        return np.array([float(f.terms.get(p, 0)) for p in self.perms])

    def left(self, a: np.ndarray) -> np.ndarray:
        """Matrix of x -> a x."""
        L = np.zeros((self.size, self.size))
        cols = np.arange(self.size)
        for i in np.flatnonzero(a):
            L[self.table[i], cols] += a[i]
        return L

    def right_orbit(self, a: np.ndarray) -> np.ndarray:
        """Columns x a over all basis elements x: a spanning set of R a."""
        M = np.zeros((self.size, self.size))
        cols = np.arange(self.size)
        for k in np.flatnonzero(a):
            M[self.table[:, k], cols] += a[k]
        return M


def _rank_one(P: np.ndarray) -> bool:
    """Exact test that a nonzero integer matrix has rank 1."""
    P = np.rint(P).astype(np.int64)
    nz = np.argwhere(P)
    if not len(nz):
        return False
    i, j = nz[0]
    return np.array_equal(P * P[i, j], np.outer(P[:, j], P[i, :]))


def _conjugation(t, sigma: Permutation) -> bool:
    e = young_symmetrizer(t)
    lhs = multiply(act_left(sigma, e), AlgebraElement.basis(sigma.inverse()))
    return lhs == young_symmetrizer(t.relabel(sigma.images))


def _single_checks(m: int, reg: Regular, t, e: AlgebraElement, left: np.ndarray, orbit: np.ndarray, perms) -> None:
    beta = idempotent_scalar(t)
    assert beta.denominator == 1 and beta * irrep_dim(t.shape) == factorial(m)
    assert multiply(e, e) == e.scale(beta)
    assert _rank_one(left @ orbit)  # dim e_T R e_T = 1
    assert all(_conjugation(t, s) for s in perms)


@pytest.mark.criterion(9, "Young symmetrizer identities, exhaustive m <= 5, sampled m = 6")
@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_criterion_09_symmetrizers_exhaustive(m):
    reg = Regular(m)
    perms = list(all_permutations(m))
    tabs = [t for lam in partitions_of(m) for t in standard_tableaux(lam)]
    e_of = {t: young_symmetrizer(t) for t in tabs}
    vec = {t: reg.vec(e) for t, e in e_of.items()}
    a, b = tabs[0], tabs[-1]
    assert np.array_equal(reg.vec(multiply(e_of[a], e_of[b])), reg.left(vec[a]) @ vec[b])
    left = {t: reg.left(v) for t, v in vec.items()}
    orbit = {t: reg.right_orbit(v) for t, v in vec.items()}
    for t in tabs:
        _single_checks(m, reg, t, e_of[t], left[t], orbit[t], perms)
    for u, v in itertools.product(tabs, repeat=2):
        if u.shape != v.shape:
            assert not np.any(left[u] @ orbit[v]), (u, v)  # e_U R e_V = 0


@pytest.mark.criterion(9, "Young symmetrizer identities, exhaustive m <= 5, sampled m = 6")
def test_criterion_09_symmetrizers_sampled_m6():
    rng = random.Random(2024)
    reg = Regular(6)
    perms = list(all_permutations(6))
    tabs = [t for lam in partitions_of(6) for t in standard_tableaux(lam)]
    cache: dict = {}

    def data(t):
        if t not in cache:
            e = young_symmetrizer(t)
            v = reg.vec(e)
            cache[t] = (e, reg.left(v), reg.right_orbit(v))
        return cache[t]

    for _ in range(100):
        t = rng.choice(tabs)
        u = rng.choice([x for x in tabs if x.shape != t.shape])
        e, left, orbit = data(t)
        _single_checks(6, reg, t, e, left, orbit, [rng.choice(perms)])
        assert not np.any(data(u)[1] @ orbit)


# 10 ----------------------------------------------------------------------------


@pytest.mark.criterion(10, "Regev substitution identity (m <= 4) and rank transfer (m = 5)")
def test_criterion_10_regev_identity():
    rng = random.Random(10)
    for m in range(1, 5):
        for lam in partitions_of(m):
            for t in standard_tableaux(lam):
                for _ in range(3):
                    assert regev_identity_check(t, random_element(rng, m, rng.randint(1, 4))), t


@pytest.mark.criterion(10, "Regev substitution identity (m <= 4) and rank transfer (m = 5)")
def test_criterion_10_rank_transfer():
    rng = random.Random(510)
    shapes = partitions_of(5)
    for _ in range(50):
        t = rng.choice(standard_tableaux(rng.choice(shapes)))
        fam = [random_element(rng, 5, rng.randint(1, 4)) for _ in range(rng.randint(1, 6))]
        if len(fam) > 1:
            fam.append(fam[0] - fam[-1].scale(3))
        a, b = rank_transfer(t, fam)
        assert a == b


# 11 ----------------------------------------------------------------------------


@pytest.mark.criterion(11, "F_s machinery: symmetrization identity, 6+s, non-polynomial case, |C(u^(s))|")
def test_criterion_11_symmetrization_identity():
    rng = random.Random(11)
    for r in range(1, 4):
        for s in range(0, 4):
            for _ in range(3):
                ms = [tuple(rng.randint(1, 3) for _ in range(rng.randint(1, 3))) for _ in range(r)]
                assert symmetrization_identity_check(ms, s), (ms, s)


@pytest.mark.criterion(11, "F_s machinery: symmetrization identity, 6+s, non-polynomial case, |C(u^(s))|")
def test_criterion_11_six_plus_s():
    # coefficient of y1 y2 y1^(7+s) in F_{s+6}(y2, y1^2) is 6+s
    for s in range(9):
        assert F_s([(2,), (1, 1)], s + 6).coefficient((1, 2) + (1,) * (7 + s)) == 6 + s
    fit = coefficient_polynomial([(2,), (1, 1)], (1, 2) + (1,) * 7, 8)
    assert [v for _, v in fit.samples] == [6 + s for s in range(9)]
    assert not fit.residual and fit.degree == 1


@pytest.mark.criterion(11, "F_s machinery: symmetrization identity, 6+s, non-polynomial case, |C(u^(s))|")
def test_criterion_11_counterexample_flagged():
    fit = coefficient_polynomial([(2, 1, 2), (2,)], (2, 1, 2, 2, 1), 8)
    assert fit.samples[0] == (0, 1)
    assert all(v == 0 for _, v in fit.samples[1:])
    assert fit.residual


@pytest.mark.criterion(11, "F_s machinery: symmetrization identity, 6+s, non-polynomial case, |C(u^(s))|")
def test_criterion_11_central_part_growth():
    words = [w for length in range(1, 7) for w in itertools.product((1, 2, 3), repeat=length)]
    for u in words:
        c = central_part(u)
        if c is None:
            continue
        for s in range(4):
            assert central_part(shift_word(u, s))[1] == c[1] + s


# 12 ----------------------------------------------------------------------------


@pytest.mark.criterion(12, "zeta_k invertibility matches the circulant rank for orders <= 12")
def test_criterion_12_zeta():
    start = time.monotonic()
    for n in range(1, 13):
        for k in range(n):
            assert zeta_invertible(n, k) == zeta_circulant_invertible(n, k), (n, k)
    assert time.monotonic() - start < 10


# 13 ----------------------------------------------------------------------------


@pytest.mark.criterion(13, "p_1(n) = n^2 + n and p_2(n) = n(n+2)(n^2+2n-1)/2")
def test_criterion_13_p1():
    samples = {n: decomposition(n, n + 1).dimension() for n in range(3, 7)}
    f = fit_pK(1, samples)
    assert f.validated
    assert [str(c) for c in f.coefficients] == ["0", "1", "1"]


@pytest.mark.criterion(13, "p_1(n) = n^2 + n and p_2(n) = n(n+2)(n^2+2n-1)/2")
def test_criterion_13_p2():
    samples = {n: decomposition(n, n + 2).dimension() for n in range(6, 10)}
    f = fit_pK(2, samples, base=decomposition(6, 8))
    assert f.validated
    expected = lambda n: n * (n + 2) * (n * n + 2 * n - 1) // 2  # noqa: E731
    assert f.degree == 4
    assert all(f(n) == expected(n) for n in range(0, 30))
    # the plain interpolant, once enough samples exist, agrees
    more = samples | {n: decomposition(n, n + 2).dimension() for n in (10, 11)}
    g = fit_pK(2, more)
    assert g.validated and g == f


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
