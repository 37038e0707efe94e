from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from oracles import count_asm_brute, count_htasm_brute, count_vsasm3_brute, count_vsasm_brute
from rotor.enumerations import (
    count_asm,
    count_htasm,
    count_nccp,
    count_vsasm,
    count_vsasm3,
    predicted_min,
    predicted_sum,
    predicted_sum_literal,
    theta,
)
from rotor.errors import UnsupportedSizeError


def test_asm_sequence():
    assert [count_asm(m) for m in range(1, 7)] == [1, 2, 7, 42, 429, 7436]
    assert count_asm(0) == 1


def test_vsasm3_sequence():
    assert [count_vsasm3(m) for m in range(1, 5)] == [1, 5, 126, 16038]
    assert count_vsasm3(0) == 1


@pytest.mark.parametrize("m", range(0, 6))
def test_asm_matches_brute_force(m):
    assert count_asm(m) == count_asm_brute(m)


@pytest.mark.parametrize("m, expected", [(0, 1), (2, 3), (3, 26)])
def test_vsasm_examples(m, expected):
    assert count_vsasm(m) == expected


@pytest.mark.parametrize("m", range(0, 5))
def test_vsasm_matches_brute_force(m):
    assert count_vsasm(m) == count_vsasm_brute(m)


@pytest.mark.parametrize("m", range(1, 5))
def test_vsasm3_matches_weighted_brute_force(m):
    assert count_vsasm3(m) == count_vsasm3_brute(m)


@pytest.mark.parametrize("m, expected", [(1, 2), (2, 10), (3, 140)])
def test_htasm_examples(m, expected):
    assert count_htasm(m) == expected
    assert count_htasm_brute(m) == expected


@pytest.mark.parametrize("m, expected", [(1, 1), (2, 2), (3, 11)])
def test_nccp_examples(m, expected):
    assert count_nccp(m) == expected


def _sympy_product(m, term, start=0):
    j = sympy.Symbol("j", integer=True)
    return sympy.product(term(j), (j, start, m - 1 + start))


@pytest.mark.parametrize("m", range(1, 9))
def test_products_agree_with_symbolic_evaluation(m):
    f = sympy.factorial
    nccp = _sympy_product(m, lambda j: (3 * j + 1) * f(2 * j) * f(6 * j) / (f(4 * j) * f(4 * j + 1)))
    vs = _sympy_product(m, lambda j: (3 * j + 2) * f(2 * j + 1) * f(6 * j + 3) / (f(4 * j + 2) * f(4 * j + 3)))
    vs3 = sympy.Rational(3) ** sympy.Rational(m * (m - 3), 2) / 2**m * _sympy_product(
        m, lambda j: f(j - 1) * f(3 * j) / (j * f(2 * j - 1) ** 2), start=1
    )
    assert count_nccp(m) == int(nccp)
    assert count_vsasm(m) == int(vs)
    assert count_vsasm3(m) == int(vs3)


@given(st.integers(min_value=1, max_value=30))
def test_results_are_exact_integers(m):
    for f in (count_asm, count_vsasm, count_nccp, count_htasm, count_vsasm3):
        v = f(m)
        assert isinstance(v, int) and v > 0


@pytest.mark.parametrize("m, expected", [(1, 0), (2, 1), (3, 3), (4, 6), (5, 9), (6, 13)])
def test_theta(m, expected):
    assert theta(m) == expected


@pytest.mark.parametrize(
    "bc, n, expected",
    [
        ("closed", 5, 891),
        ("periodic", 5, 18225),
        ("identified", 8, 30618),
        ("closed", 6, 18954),
        ("periodic", 4, 810),
        ("periodic", 1, 1),
        ("identified", 6, 189),
    ],
)
def test_predicted_sum(bc, n, expected):
    assert predicted_sum(bc, n) == expected


def test_identified_odd_rejected():
    with pytest.raises(UnsupportedSizeError):
        predicted_sum("identified", 5)


@pytest.mark.parametrize("bc, n, expected", [("closed", 5, 5), ("closed", 1, 1), ("closed", 3, 1)])
def test_predicted_min(bc, n, expected):
    assert predicted_min(bc, n) == expected


@pytest.mark.parametrize("bc, n", [("closed", 4), ("periodic", 5), ("identified", 6)])
def test_predicted_min_absent(bc, n):
    assert predicted_min(bc, n) is None


@given(st.integers(min_value=1, max_value=30))
def test_divisibility(m):
    assert predicted_sum("closed", 2 * m - 1) % 3 ** ((m - 1) ** 2) == 0
    assert predicted_sum("identified", 2 * m) % 3 ** theta(m) == 0


def test_literal_periodic_reading_disagrees_with_data():
    # the N = 2m-1 indexing would predict 3^3 * 1 = 27 for N = 1
    assert predicted_sum_literal(1) != 1
    assert predicted_sum_literal(2) is None
    assert Fraction(predicted_sum("periodic", 5)) == 3**6 * count_vsasm3(2) ** 2
