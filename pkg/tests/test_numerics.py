import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from singlewar import numerics, winloss


def ballot_strings(n, k):
    """Brute force: U/D strings with n U's and k D's, every prefix U-heavy."""
    count = 0
    for downs in itertools.combinations(range(n + k), k):
        height, ok = 0, True
        for i in range(n + k):
            height += -1 if i in downs else 1
            if height < 0:
                ok = False
                break
        count += ok
    return count


@pytest.mark.parametrize("n,k", [(n, k) for n in range(7) for k in range(n + 1)])
def test_catalan_triangle_matches_ballot_strings(n, k):
    assert numerics.catalan_triangle(n, k) == ballot_strings(n, k)


def test_catalan_first_terms():
    assert [numerics.catalan(r) for r in range(8)] == [1, 1, 2, 5, 14, 42, 132, 429]


def test_catalan_triangle_diagonal_is_catalan():
    for r in range(10):
        assert numerics.catalan_triangle(r, r) == numerics.catalan(r)


@pytest.mark.parametrize("n,k", [(1, 2), (-1, 0), (0, -1)])
def test_catalan_triangle_rejects_bad_arguments(n, k):
    with pytest.raises(ValueError):
        numerics.catalan_triangle(n, k)


def test_binomial_outside_range_is_zero():
    assert numerics.binomial(5, -1) == 0
    assert numerics.binomial(5, 6) == 0
    assert numerics.binomial(5, 2) == 10


@given(st.integers(0, 7), st.integers(1, 4))
def test_weak_compositions_complete_and_sorted(total, parts):
    got = list(numerics.weak_compositions(total, parts))
    expected = [c for c in itertools.product(range(total + 1), repeat=parts) if sum(c) == total]
    assert got == expected


@given(st.integers(1, 5), st.integers(0, 8))
def test_sum_product_identity(m, k):
    lhs, rhs = numerics.sum_product_identity_check(m, k)
    assert lhs == rhs


def test_a_k_values():
    assert [numerics.a_k(k) for k in range(1, 6)] == [1, 2, 5, 26, 677]


def test_p_k_small_values():
    assert numerics.p_k(1) == Fraction(1, 2)
    assert numerics.p_k(2) == Fraction(5, 8)
    assert numerics.p_k(3) == Fraction(89, 128)


@pytest.mark.parametrize("k", range(1, 5))
def test_p_k_sums_sequence_weights(k):
    # A fixed R-letter sequence is followed with probability 2^-R.
    seqs = winloss.enumerate_sequences_passthrough(1, k)
    assert numerics.p_k(k) == sum(Fraction(1, 2**s.rounds) for s in seqs)


@pytest.mark.parametrize("k", range(1, 14))
def test_p_k_dyadic_agrees_with_fraction(k):
    (_, num, exp), *_ = [row for row in numerics.p_k_dyadic(k) if row[0] == k]
    assert Fraction(int(num), 2**exp) == numerics.p_k(k)
    assert num % 2 == 1


def test_p_k_growth_small():
    rows = numerics.p_k_growth_check(12)
    assert [r[0] for r in rows] == list(range(1, 12))
    for k, row in enumerate(rows, start=1):
        lo, hi = numerics.p_k(k), numerics.p_k(k + 1)
        assert row[1:] == (lo < hi, hi < 1, 2 * (hi - lo) == (1 - lo) ** 2)
        assert all(row[1:])


@given(st.fractions())
def test_rational_roundtrip(value):
    text = numerics.format_rational(value)
    assert "/" in text
    assert numerics.parse_rational(text) == value


def test_integer_formats_over_one():
    assert numerics.format_rational(3) == "3/1"
    assert numerics.parse_rational("7") == 7
