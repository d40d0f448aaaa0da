import itertools
import math
from fractions import Fraction
from math import prod

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ghgd import DomainError, alt_binom_sum, binom, elementary_symmetric, to_decimal
from ghgd import kernel


def factorial_binom(n, k):
    if k < 0 or k > n:
        return 0
    return math.factorial(n) // (math.factorial(k) * math.factorial(n - k))


def test_binom_examples():
    assert binom(5, 2) == 10
    assert binom(3, 5) == 0
    assert binom(19815, 2) == 19815 * 19814 // 2 == 196_307_205


def test_binom_outside_range_is_zero():
    assert binom(4, -1) == 0
    assert binom(0, 0) == 1
    assert binom(0, 1) == 0


def test_binom_rejects_negative_n():
    with pytest.raises(DomainError):
        binom(-1, 0)


def test_binom_matches_factorials():
    for n in range(31):
        for k in range(-2, n + 3):
            assert binom(n, k) == factorial_binom(n, k)


def test_binom_symmetry():
    for n in range(201):
        for k in range(n + 1):
            assert binom(n, k) == binom(n, n - k)


def test_binom_small_cache_gives_same_values():
    try:
        kernel.set_binom_cache_size(2)
        values = [binom(n, k) for n in range(40) for k in range(n + 1)]
    finally:
        kernel.set_binom_cache_size(kernel.BINOM_CACHE_SIZE)
    assert values == [factorial_binom(n, k) for n in range(40) for k in range(n + 1)]


def brute_symmetric(m, z):
    return sum(prod(c) for c in itertools.combinations(m, z))


def test_elementary_symmetric_examples():
    m = [127, 110, 87, 110]
    assert elementary_symmetric(m, 1) == 434
    assert elementary_symmetric(m, 4) == 127 * 110 * 87 * 110 == 133_692_900
    assert elementary_symmetric(m, 0) == 1
    assert elementary_symmetric([], 0) == 1


def test_elementary_symmetric_rejects_degree_above_t():
    with pytest.raises(DomainError):
        elementary_symmetric([1, 2], 3)


@given(st.lists(st.integers(0, 50), min_size=1, max_size=7))
def test_elementary_symmetric_matches_enumeration(m):
    for z in range(len(m) + 1):
        assert elementary_symmetric(m, z) == brute_symmetric(m, z)


@given(st.lists(st.integers(0, 10**6), min_size=1, max_size=7), st.integers(-5, 5))
def test_generating_function(m, x):
    lhs = sum(elementary_symmetric(m, z) * x**z for z in range(len(m) + 1))
    assert lhs == prod(1 + mi * x for mi in m)


def test_alt_binom_sum_examples():
    assert alt_binom_sum(3, 0, 1) == 1 - 3
    assert alt_binom_sum(4, 0, 2) == 1 - 4 + 6
    for n in range(6):
        assert alt_binom_sum(n, 0, 0) == 1


def test_alt_binom_sum_full_range_vanishes():
    for n in range(1, 60):
        assert alt_binom_sum(n, 0, n) == 0


def test_alt_binom_sum_rejects_reversed_range():
    with pytest.raises(DomainError):
        alt_binom_sum(3, 2, 1)


@pytest.mark.parametrize(
    "value, places, expected",
    [
        (Fraction(1, 8), 2, "0.12"),
        (Fraction(3, 8), 2, "0.38"),
        (Fraction(-1, 8), 2, "-0.12"),
        (Fraction(5, 2), 0, "2"),
        (Fraction(7, 2), 0, "4"),
        (Fraction(1, 3), 6, "0.333333"),
        (17, 3, "17.000"),
        (Fraction(1, 10**9), 6, "0.000000"),
    ],
)
def test_to_decimal_rounds_half_even(value, places, expected):
    assert to_decimal(value, places) == expected


def test_pure_functions_repeat_identically():
    m = [13, 7, 22, 5]
    assert [elementary_symmetric(m, z) for z in range(5)] == [elementary_symmetric(m, z) for z in range(5)]
    assert alt_binom_sum(30, 3, 17) == alt_binom_sum(30, 3, 17)
