import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tideal.decomposition import Decomposition
from tideal.stability import (
    F_coefficient,
    F_s,
    P_symmetric,
    central_part,
    coefficient_polynomial,
    format_polynomial,
    newton_fit,
    symmetrization_identity_check,
    shift_word,
    shifted_symmetric,
    stabilization_report,
)
from tideal.substitution import parse_word

words = st.lists(st.integers(1, 3), min_size=1, max_size=3).map(tuple)


def test_central_part_examples():
    assert central_part(parse_word("y1 y2 y1^5")) == (3, 5)
    assert central_part(parse_word("y2 y3")) is None
    assert central_part(parse_word("y1^3 y2 y1^3")) == (1, 3)


def test_shift_word_examples():
    u = parse_word("y1 y2 y1^5")
    assert shift_word(u, 4) == parse_word("y1 y2 y1^9")
    assert shift_word(u, 0) == u
    assert shift_word(parse_word("y2 y1 y2^2 y1"), 1) == parse_word("y2 y1^2 y2^2 y1")
    with pytest.raises(ValueError):
        shift_word((2, 3), 1)


@given(st.lists(st.integers(1, 3), min_size=1, max_size=10), st.integers(0, 5))
def test_central_part_grows_by_s(u, s):
    c = central_part(u)
    if c is None:
        return
    assert central_part(shift_word(u, s))[1] == c[1] + s


def test_F0_is_concatenation():
    assert F_s([(2,), (1, 3)], 0).terms == {(2, 1, 3): 1}


def test_worked_coefficient():
    # y1 | y2 | y1^a | y1 y1 | y1^b with a + b = 5 + s
    for s in range(9):
        word = (1, 2) + (1,) * (7 + s)
        assert F_coefficient(word, [(2,), (1, 1)], s + 6) == 6 + s


@settings(max_examples=60)
@given(st.lists(words, min_size=1, max_size=3), st.integers(0, 4))
def test_F_coefficient_matches_expansion(ms, s):
    F = F_s(ms, s)
    for w, c in F.terms.items():
        assert F_coefficient(w, ms, s) == c
    assert sum(F.terms.values()) == len(list(itertools.combinations(range(s + len(ms)), len(ms))))


@settings(max_examples=40)
@given(st.lists(words, min_size=1, max_size=3), st.integers(0, 3))
def test_symmetrization_identity(ms, s):
    assert symmetrization_identity_check(ms, s)


def test_P_symmetric_example():
    assert P_symmetric([(2,), (1, 1)]).terms == {(2, 1, 1): 1, (1, 1, 2): 1}


def _support(ms, d):
    out = set()
    for order in itertools.permutations(ms):
        out |= set(F_s(order, d).terms)
    return out


@pytest.mark.parametrize("ms", [[(2,)], [(2,), (3,)], [(2, 1), (3,)], [(2, 3), (1, 2)], [(2,), (2,), (3, 1)]])
def test_central_runs_grow_in_shifted_symmetrizations(ms):
    r, p = len(ms), 3
    # the F_s support agrees with a direct expansion where the latter is cheap
    for d in range(3):
        assert _support(ms, d) == set(shifted_symmetric(ms, d).terms)
    lows = []
    for d in range(p * (r + 1) + 1):
        lows.append(min((central_part(w) or (0, 0))[1] for w in _support(ms, d)))
    assert lows == sorted(lows)
    assert lows[-1] >= p


@given(st.lists(st.builds(Fraction, st.integers(-20, 20), st.integers(1, 5)), min_size=1, max_size=5))
def test_newton_fit_recovers_polynomial(coeffs):
    poly = lambda x: sum(c * x**i for i, c in enumerate(coeffs))  # noqa: E731
    pts = [(x, poly(x)) for x in range(-2, len(coeffs) + 1)]
    got = newton_fit(pts)
    want = list(coeffs)
    while want and want[-1] == 0:
        want.pop()
    assert got == want


def test_format_polynomial():
    assert format_polynomial([Fraction(0), Fraction(-1), Fraction(3, 2)], "n") == "3/2*n^2 - n"
    assert format_polynomial([], "s") == "0"


def test_coefficient_polynomial_examples():
    fit = coefficient_polynomial([(2,), (1, 1)], parse_word("y1 y2 y1^7"), 8)
    assert [v for _, v in fit.samples] == [6 + s for s in range(9)]
    assert fit.coefficients == [6, 1] and not fit.residual
    bad = coefficient_polynomial([(2, 1, 2), (2,)], parse_word("y2 y1 y2^2 y1"), 8)
    assert bad.residual and bad.samples[0][1] == 1 and all(v == 0 for _, v in bad.samples[1:])
    const = coefficient_polynomial([(2,)], parse_word("y1 y2"), 0)
    assert const.degree <= 0
    with pytest.raises(ValueError):
        coefficient_polynomial([(2,)], (2, 3), 3)


def test_stabilization_small():
    rep = stabilization_report(1, 3, 5)
    assert rep.n_obs == 3 and rep.complete and not rep.decreases
    assert rep.families[(1,)] == [2, 2, 2]
    data = rep.to_json()
    assert data["N_obs"] == 3 and set(data["decompositions"]) == {"3", "4", "5"}
    assert stabilization_report(0, 1, 4).n_obs == 1


def test_stabilization_onset_after_start():
    assert stabilization_report(1, 2, 4).n_obs == 3


def test_stabilization_with_injected_decomposer():
    fake = {3: Decomposition(4, {(3, 1): 1}), 4: Decomposition(5, {(3, 2): 1}), 5: Decomposition(6, {(4, 2): 1})}
    rep = stabilization_report(1, 3, 5, decomposer=lambda n, m: fake[n])
    assert rep.n_obs == 4
    assert ((1,), 4) in rep.decreases


def test_stabilization_argument_checks():
    with pytest.raises(ValueError):
        stabilization_report(2, 1, 4)
    with pytest.raises(ValueError):
        stabilization_report(1, 4, 3)
