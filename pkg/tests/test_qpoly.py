from itertools import combinations
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qbalance.qpoly import (
    ONE,
    ZERO,
    InexactDivisionError,
    QPolynomial,
    add,
    divide_by_q_integer,
    exact_divide,
    fmaj_gf_B,
    gaussian_binomial,
    maj_gf_symmetric,
    multiply,
    multiply_by_q_integer,
    q_catalan,
    q_derangement,
    q_derangement_B,
    q_factorial,
    q_integer,
    subtract,
)


def P(*coeffs):
    return QPolynomial(coeffs)


small_ints = st.integers(min_value=-(10**6), max_value=10**6)
polys = st.lists(small_ints, max_size=12).map(lambda c: QPolynomial(tuple(c)))
nonzero_polys = polys.filter(lambda p: not p.is_zero())


def inversion_gf(n, k):
    """sum of q^inv over binary words with k ones and n-k zeros"""
    counts = [0] * (k * (n - k) + 1)
    for ones in combinations(range(n), k):
        word = [1 if i in ones else 0 for i in range(n)]
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if word[i] > word[j])
        counts[inv] += 1
    return QPolynomial(tuple(counts))


def derangement_count(n):
    # inclusion-exclusion
    return sum((-1) ** k * comb(n, k) * factorial(n - k) for k in range(n + 1))


def test_zero_is_empty():
    assert QPolynomial((0, 0, 0)).coeffs == ()
    assert ZERO.degree == -1
    assert P(1, 2, 0).coeffs == (1, 2)


@pytest.mark.parametrize("n, expected", [(0, ZERO), (1, P(1)), (3, P(1, 1, 1))])
def test_q_integer(n, expected):
    assert q_integer(n) == expected


@pytest.mark.parametrize("n, expected", [(0, P(1)), (2, P(1, 1)), (3, P(1, 2, 2, 1))])
def test_q_factorial(n, expected):
    assert q_factorial(n) == expected


def test_q_factorial_three_by_multiply():
    assert q_factorial(3) == multiply(P(1, 1), P(1, 1, 1))


@pytest.mark.parametrize(
    "n, k, expected",
    [(2, 1, P(1, 1)), (4, 2, P(1, 1, 2, 1, 1)), (3, 5, ZERO), (3, -1, ZERO), (0, 0, P(1))],
)
def test_gaussian_binomial_examples(n, k, expected):
    assert gaussian_binomial(n, k) == expected
    assert gaussian_binomial(n, k, method="factorial") == expected


@pytest.mark.parametrize("n", range(0, 9))
def test_gaussian_binomial_matches_inversion_enumeration(n):
    for k in range(n + 1):
        assert gaussian_binomial(n, k) == inversion_gf(n, k)


@pytest.mark.parametrize("n", range(0, 21))
def test_gaussian_methods_agree_and_are_symmetric(n):
    for k in range(n + 1):
        g = gaussian_binomial(n, k)
        assert g == gaussian_binomial(n, k, method="factorial")
        assert g.at_one() == comb(n, k)
        top = k * (n - k)
        assert all(g.coefficient(i) == g.coefficient(top - i) for i in range(top + 1))


@pytest.mark.parametrize("n, expected", [(0, P(1)), (1, P(1)), (2, P(1, 0, 1))])
def test_q_catalan_small(n, expected):
    assert q_catalan(n) == expected


@pytest.mark.parametrize("n", range(0, 16))
def test_q_catalan_sum_and_methods(n):
    c = q_catalan(n)
    assert c.at_one() == comb(2 * n, n) // (n + 1)
    assert c == q_catalan(n, method="factorial")
    assert all(x >= 0 for x in c.coeffs)


@pytest.mark.parametrize("n, expected", [(0, P(1)), (1, ZERO), (2, P(0, 1)), (3, P(0, 1, 1))])
def test_q_derangement_examples(n, expected):
    assert q_derangement(n) == expected


@pytest.mark.parametrize("n", range(0, 40))
def test_q_derangement_counts_and_signs(n):
    d = q_derangement(n)
    assert d.at_one() == derangement_count(n)
    assert all(c >= 0 for c in d.coeffs)


def test_q_derangement_matches_hand_expanded_gessel_sum():
    # d_3 = [1][2][3] - [2][3] + q [3] - q^3
    expect = q_factorial(3) - multiply(P(1, 1), P(1, 1, 1)) + P(0, 1, 1, 1) - P(0, 0, 0, 1)
    assert q_derangement(3) == expect


def test_maj_gf_symmetric():
    assert maj_gf_symmetric(1) == P(1)
    assert maj_gf_symmetric(3) == P(1, 2, 2, 1)


@pytest.mark.parametrize("n", range(0, 10))
def test_fmaj_gf_B(n):
    f = fmaj_gf_B(n)
    assert f.at_one() == 2**n * factorial(n)
    expect = ONE
    for k in range(1, n + 1):
        expect = multiply(expect, q_integer(2 * k))
    assert f == expect


def test_fmaj_gf_B_examples():
    assert fmaj_gf_B(0) == P(1)
    assert fmaj_gf_B(1) == P(1, 1)
    assert fmaj_gf_B(2) == multiply(P(1, 1), P(1, 1, 1, 1))


def test_q_derangement_B_examples():
    assert q_derangement_B(0) == P(1)
    assert q_derangement_B(1) == P(0, 1)
    assert q_derangement_B(1) == q_integer(2) - ONE


@pytest.mark.parametrize("n", range(0, 20))
def test_q_derangement_B_count(n):
    # type-B derangements: inclusion-exclusion over positive fixed points
    expected = sum((-1) ** k * comb(n, k) * 2 ** (n - k) * factorial(n - k) for k in range(n + 1))
    d = q_derangement_B(n)
    assert d.at_one() == expected
    assert all(c >= 0 for c in d.coeffs)


def test_arithmetic_examples():
    assert multiply(P(1, 1), P(1, 1)) == P(1, 2, 1)
    assert exact_divide(P(1, 2, 1), P(1, 1)) == P(1, 1)
    assert subtract(q_factorial(3), q_factorial(3)) == ZERO
    assert add(P(1, -1), P(0, 1)) == P(1)


def test_inexact_division_raises():
    with pytest.raises(InexactDivisionError):
        exact_divide(P(1, 0, 1), P(1, 1))
    with pytest.raises(InexactDivisionError):
        exact_divide(P(1, 1), P(0, 2))
    with pytest.raises(InexactDivisionError):
        divide_by_q_integer(P(1, 0, 1), 2)
    with pytest.raises(ZeroDivisionError):
        exact_divide(P(1), ZERO)


def test_str_rendering():
    assert str(P(0, 1, 1)) == "q + q^2"
    assert str(P(1, 2, 2, 1)) == "1 + 2q + 2q^2 + q^3"
    assert str(P(-1, 0, -3)) == "-1 - 3q^2"
    assert str(ZERO) == "0"
    big = 10**40
    assert str(P(big)) == str(big)


def test_json_round_trip():
    p = q_derangement(8)
    assert QPolynomial.from_json(p.to_json()) == p
    assert P(1, 0, 12).to_json() == '["1", "0", "12"]'


@given(polys, polys)
def test_multiply_commutative(a, b):
    assert multiply(a, b) == multiply(b, a)


@given(polys, polys, polys)
def test_multiply_associative(a, b, c):
    assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))


@given(polys, nonzero_polys)
def test_exact_divide_inverts_multiply(a, b):
    assert exact_divide(multiply(a, b), b) == a


@settings(max_examples=200)
@given(
    st.lists(st.integers(min_value=-(10**30), max_value=10**30), max_size=120),
    st.lists(st.integers(min_value=-(10**30), max_value=10**30), max_size=120),
)
def test_kronecker_bit_identical_to_schoolbook(a, b):
    pa, pb = QPolynomial(tuple(a)), QPolynomial(tuple(b))
    assert multiply(pa, pb, method="kronecker") == multiply(pa, pb, method="schoolbook")


@given(polys, st.integers(min_value=0, max_value=15))
def test_q_integer_fast_paths(a, t):
    assert multiply_by_q_integer(a, t) == multiply(a, q_integer(t), method="schoolbook")
    if t:
        assert divide_by_q_integer(multiply(a, q_integer(t)), t) == a


def test_large_products_agree():
    a, b = q_derangement(30), q_catalan(20)
    assert multiply(a, b, method="kronecker") == multiply(a, b, method="schoolbook")


@given(polys, st.integers(min_value=-5, max_value=5))
def test_evaluation_is_ring_homomorphism(a, x):
    b = QPolynomial((3, -1, 2))
    assert multiply(a, b)(x) == a(x) * b(x)
