from fractions import Fraction
from math import factorial

import pytest
import sympy
from hypothesis import given, strategies as st

from tideal.bounds import (
    DimPolynomial,
    coprime_lower_bound,
    derived_dim_polynomial,
    fit_pK,
    growth_band,
    latyshev_lower_bound,
    omega_upper_bound,
    structural_pK,
    zeta_circulant,
    zeta_circulant_invertible,
    zeta_invertible,
)
from tideal.combinatorics import derive_partition, irrep_dim, partitions_of, standard_tableaux
from tideal.decomposition import decompose_W
from tideal.multilinear import count_ordered_partitions


def test_omega_examples():
    assert omega_upper_bound(2, 3) == 6
    assert all(omega_upper_bound(n, n + 1) == n * (n + 1) for n in range(1, 9))
    assert all(omega_upper_bound(n, n) == 1 for n in range(1, 9))
    assert all(omega_upper_bound(n, m) == count_ordered_partitions(n, m) for m in range(1, 9) for n in range(1, m + 1))


def test_latyshev_examples():
    assert latyshev_lower_bound(2, 3) == 5
    assert latyshev_lower_bound(1, 5) == factorial(5)
    assert latyshev_lower_bound(6, 5) == 0


def test_coprime_examples():
    assert coprime_lower_bound(2, 3) == 6
    assert coprime_lower_bound(3, 4) == 12
    assert coprime_lower_bound(2, 4) is None


@pytest.mark.parametrize("n,m", [(n, m) for m in range(1, 7) for n in range(1, m + 1)])
def test_sandwich(n, m):
    d = decompose_W(n, m, workers=1).dimension()
    assert latyshev_lower_bound(n, m) <= d <= omega_upper_bound(n, m)
    cp = coprime_lower_bound(n, m)
    assert cp is None or cp <= d


def test_zeta_examples():
    assert zeta_invertible(4, 1) is False
    assert zeta_invertible(5, 1) is True
    assert all(zeta_invertible(n, 0) for n in range(1, 10))
    with pytest.raises(ValueError):
        zeta_invertible(3, 3)


@pytest.mark.parametrize("n", range(1, 13))
def test_zeta_against_sympy_circulant(n):
    for k in range(n):
        M = sympy.Matrix(zeta_circulant(n, k).to_dense())
        assert (M.det() != 0) == zeta_invertible(n, k) == zeta_circulant_invertible(n, k)


def test_derived_dim_examples():
    assert derived_dim_polynomial((1,)) == DimPolynomial((Fraction(1),))
    assert [derived_dim_polynomial((1, 1))(d) for d in range(6)] == [len(standard_tableaux((d + 1, 1))) for d in range(6)]
    q = derived_dim_polynomial((2, 2))
    assert all(q(d) == len(standard_tableaux((d + 2, 2))) for d in range(7))


@pytest.mark.parametrize("k", range(1, 7))
def test_derived_dim_matches_hook_formula(k):
    for lam in partitions_of(k):
        q = derived_dim_polynomial(lam)
        assert all(q(d) == irrep_dim(derive_partition(lam, d)) for d in range(9))


@given(st.lists(st.builds(Fraction, st.integers(-9, 9), st.integers(1, 4)), max_size=5), st.integers(-5, 5))
def test_polynomial_shift_and_json(coeffs, a):
    p = DimPolynomial(tuple(coeffs))
    assert DimPolynomial.from_json(p.to_json()) == p
    q = p.shift(a)
    assert all(q(x) == p(x + a) for x in range(-3, 4))


def test_polynomial_text():
    p = DimPolynomial.from_roots([0, 2], Fraction(1, 2), var="n")
    assert str(p) == "1/2*n^2 + n"
    assert p.to_json() == ["0", "1", "1/2"]


def test_fit_p1():
    f = fit_pK(1, {n: n * (n + 1) for n in range(3, 7)})
    assert f.validated and str(f) == "n^2 + n" and f.held_out == (6,)


def test_fit_p0():
    f = fit_pK(0, {n: decompose_W(n, n, workers=1).dimension() for n in range(1, 4)})
    assert f.validated and f == DimPolynomial((Fraction(1),))


def test_fit_flags_unstable_range():
    samples = {n: decompose_W(n, n + 2, workers=1).dimension() for n in range(2, 7)}
    assert fit_pK(2, samples).validated is False


def test_structural_fit_p2():
    base = decompose_W(6, 8, workers=1)
    p2 = structural_pK(2, 6, base)
    want = lambda n: Fraction(n * (n + 2) * (n * n + 2 * n - 1), 2)  # noqa: E731
    assert all(p2(n) == want(n) for n in range(-3, 15))
    f = fit_pK(2, {6: 1128, 7: 1953, 8: 3160}, base=base)
    assert f.validated and f == p2
    with pytest.raises(ValueError):
        fit_pK(2, {7: 1953}, base=base)


def test_growth_band_is_recorded():
    band = growth_band(1, {n: n * (n + 1) for n in range(3, 7)})
    assert band.low == Fraction(42, 36) and band.high == Fraction(12, 9)
    assert set(band.to_json()) == {"K", "ratios", "low", "high"}
