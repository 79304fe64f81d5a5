import cmath
import json
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qbalance.qpoly import QPolynomial, multiply, q_catalan, q_derangement, q_factorial, q_integer
from qbalance.residue import (
    FILTER_RTOL,
    ResidueDistribution,
    deviation,
    eval_root_of_unity,
    filter_kernel,
    filter_sum,
    fold_mod,
    normalized_magnitudes,
    ratio_from_str,
    ratio_to_str,
)

nonneg_polys = st.lists(st.integers(min_value=0, max_value=10**12), max_size=40).map(
    lambda c: QPolynomial(tuple(c))
)
moduli = st.integers(min_value=2, max_value=12)


def reduce_mod_cyclotomic(p, m):
    """Reduce p modulo q^m - 1 by repeatedly subtracting c q^(k-m) (q^m - 1)."""
    c = list(p.coeffs)
    for k in range(len(c) - 1, m - 1, -1):
        c[k - m] += c[k]
        c[k] = 0
    return (c + [0] * m)[:m]


def cyclic_convolution(a, b, m):
    out = [0] * m
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[(i + j) % m] += x * y
    return out


def naive_eval(p, m, j):
    w = cmath.exp(2j * math.pi * j / m)
    return sum(c * w**k for k, c in enumerate(p.coeffs))


def test_fold_examples():
    assert fold_mod(QPolynomial((1, 1, 2, 1)), 2).counts == (3, 2)
    assert fold_mod(q_factorial(3), 3).counts == (2, 2, 2)
    z = fold_mod(QPolynomial(), 5)
    assert z.counts == (0,) * 5 and z.total == 0


def test_fold_rejects_small_modulus():
    with pytest.raises(ValueError):
        fold_mod(q_factorial(3), 1)
    with pytest.raises(ValueError):
        fold_mod(q_factorial(3), 65)


@given(nonneg_polys, moduli)
def test_fold_matches_cyclotomic_reduction(p, m):
    d = fold_mod(p, m)
    assert list(d.counts) == reduce_mod_cyclotomic(p, m)
    assert d.total == p.at_one() == sum(d.counts)


@given(nonneg_polys, nonneg_polys, moduli)
def test_fold_of_product_is_cyclic_convolution(a, b, m):
    lhs = fold_mod(multiply(a, b), m).counts
    rhs = cyclic_convolution(fold_mod(a, m).counts, fold_mod(b, m).counts, m)
    assert list(lhs) == rhs


def test_eval_examples():
    d = fold_mod(q_factorial(3), 3)
    assert abs(eval_root_of_unity(d, 1)) < 1e-12
    d2 = fold_mod(q_derangement(2), 2)
    assert d2.counts == (0, 1)
    v = eval_root_of_unity(d2, 1)
    assert abs(v - (-1)) < 1e-12


@given(nonneg_polys, moduli)
def test_eval_at_zero_is_total(p, m):
    d = fold_mod(p, m)
    assert eval_root_of_unity(d, 0) == complex(float(p.at_one()), 0.0)


@given(nonneg_polys, moduli, st.data())
def test_eval_matches_direct_horner(p, m, data):
    j = data.draw(st.integers(min_value=0, max_value=m - 1))
    got = eval_root_of_unity(fold_mod(p, m), j)
    ref = naive_eval(p, m, j)
    scale = max(1, p.at_one())
    assert abs(got - ref) <= 1e-9 * scale


def test_eval_rejects_bad_index():
    d = fold_mod(q_factorial(3), 3)
    with pytest.raises(ValueError):
        eval_root_of_unity(d, 3)
    with pytest.raises(ValueError):
        eval_root_of_unity(d, -1)


def test_filter_sum_examples():
    assert filter_sum(q_factorial(3), 3, 0) == pytest.approx(6, abs=1e-9)
    const = QPolynomial((1,))
    assert filter_sum(const, 4, 0) == pytest.approx(4, abs=1e-9)
    for r in (1, 2, 3):
        assert abs(filter_sum(const, 4, r)) < 1e-9
    assert filter_sum(q_derangement(3), 2, 1) == pytest.approx(2, abs=1e-9)


def test_filter_sum_rejects_bad_residue():
    with pytest.raises(ValueError):
        filter_sum(q_factorial(3), 3, 3)


@given(nonneg_polys, moduli, st.data())
def test_filter_sum_recovers_class_counts(p, m, data):
    r = data.draw(st.integers(min_value=0, max_value=m - 1))
    d = fold_mod(p, m)
    t = filter_sum(p, m, r)
    scale = m * max(d.total, 1)
    assert abs(t.real - m * d.counts[r]) <= FILTER_RTOL * scale
    assert abs(t.imag) <= FILTER_RTOL * max(d.total, 1)


def test_filter_kernel_examples():
    assert filter_kernel(7, 1, 3) == 3
    assert filter_kernel(5, 1, 3) == 0
    for m in range(2, 8):
        for r in range(-3, 4):
            assert filter_kernel(r, r, m) == m


@pytest.mark.parametrize("m", range(2, 13))
def test_filter_kernel_matches_phase_sum(m):
    for diff in range(-20, 21):
        phase = sum(cmath.exp(2j * math.pi * diff * j / m) for j in range(m))
        assert filter_kernel(diff, 0, m) == round(phase.real)
        assert abs(phase.imag) < 1e-9


def test_deviation_examples():
    assert deviation(fold_mod(q_factorial(4), 4)) == 0
    assert deviation(fold_mod(q_derangement(3), 2)) == 0
    assert deviation(fold_mod(QPolynomial((1, 1)), 3)) == Fraction(1, 3)


def test_deviation_rejects_empty():
    with pytest.raises(ValueError):
        deviation(fold_mod(QPolynomial(), 3))


@pytest.mark.parametrize("t", [2, 3, 4, 6, 8, 9, 12])
def test_vanishing_factor_law(t):
    rng = random.Random(t)
    other = QPolynomial(tuple(rng.randrange(0, 50) for _ in range(15)))
    p = multiply(other, q_integer(t))
    for m in range(2, t + 1):
        if t % m:
            continue
        d = fold_mod(p, m)
        for j in range(1, m):
            assert abs(eval_root_of_unity(d, j)) < 1e-9
        assert deviation(d) == 0


def test_centering_keeps_huge_nearly_balanced_counts_accurate():
    # counts near 30!/e but |d_30(-1)| = 1 exactly
    d = fold_mod(q_derangement(30), 2)
    assert abs(eval_root_of_unity(d, 1)) == pytest.approx(1.0, abs=1e-12)
    assert abs(d.counts[0] - d.counts[1]) == 1


def test_normalized_magnitudes():
    d = fold_mod(q_catalan(2), 2)
    assert normalized_magnitudes(d) == [pytest.approx(1.0)]


def test_serialization():
    d = fold_mod(q_factorial(3), 3)
    assert json.loads(d.to_json()) == {"m": 3, "counts": ["2", "2", "2"], "total": "6"}
    assert ResidueDistribution.from_json(d.to_json()) == d
    assert ratio_to_str(Fraction(0)) == "0/1"
    assert ratio_to_str(Fraction(2, 6)) == "1/3"
    assert ratio_from_str("1/3") == Fraction(1, 3)


def test_distribution_invariants_enforced():
    with pytest.raises(ValueError):
        ResidueDistribution(2, (1, 1), 3)
    with pytest.raises(ValueError):
        ResidueDistribution(3, (1, 1), 2)
