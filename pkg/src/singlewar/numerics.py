"""Exact integer and rational quantities used throughout the package.

Python integers are arbitrary precision and :class:`fractions.Fraction` is
always stored in lowest terms with a positive denominator, so no float ever
enters a count or a probability.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterator

import gmpy2

__all__ = [
    "binomial",
    "catalan_triangle",
    "catalan",
    "weak_compositions",
    "sum_product_identity_check",
    "a_k",
    "p_k",
    "p_k_dyadic",
    "p_k_growth_check",
    "format_rational",
    "parse_rational",
]


def binomial(n: int, k: int) -> int:
    """Binomial coefficient, zero outside ``0 <= k <= n``."""
    if n < 0:
        raise ValueError(f"binomial requires n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def catalan_triangle(n: int, k: int) -> int:
    """Number of U/D strings with n U's and k D's whose every prefix has
    at least as many U's as D's."""
    if n < 0 or k < 0:
        raise ValueError(f"catalan_triangle requires n, k >= 0, got ({n}, {k})")
    if k > n:
        raise ValueError(f"catalan_triangle requires k <= n, got ({n}, {k})")
    return binomial(n + k, k) - binomial(n + k, k - 1)


def catalan(r: int) -> int:
    if r < 0:
        raise ValueError(f"catalan requires r >= 0, got {r}")
    return binomial(2 * r, r) // (r + 1)


def weak_compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Yield every ``(x_1, ..., x_parts)`` of non-negative integers summing to
    ``total``, in lexicographic order."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in weak_compositions(total - first, parts - 1):
            yield (first,) + rest


def sum_product_identity_check(m: int, k: int) -> tuple[int, int]:
    """Both sides of ``C(m+k-1, k) = sum over x_1+...+x_m = k of prod C_{x_i}``.

    The right side is summed term by term over weak compositions; callers
    compare the two components.
    """
    if m < 1 or k < 0:
        raise ValueError(f"need m >= 1 and k >= 0, got ({m}, {k})")
    lhs = catalan_triangle(m + k - 1, k)
    rhs = sum(math.prod(catalan(x) for x in comp) for comp in weak_compositions(k, m))
    return lhs, rhs


def a_k(k: int) -> int:
    """Number of unicard win-loss sequences ending within k passthroughs."""
    if k < 1:
        raise ValueError(f"a_k requires k >= 1, got {k}")
    value = 1
    for _ in range(k - 1):
        value = 1 + value * value
    return value


def p_k(k: int) -> Fraction:
    """Probability that a random unicard state ends within k passthroughs."""
    if k < 1:
        raise ValueError(f"p_k requires k >= 1, got {k}")
    half = Fraction(1, 2)
    value = half
    for _ in range(k - 1):
        value = half + half * value * value
    return value


def p_k_dyadic(k_max: int) -> Iterator[tuple[int, gmpy2.mpz, int]]:
    """Yield ``(k, numerator, exponent)`` with ``P_k = numerator / 2**exponent``
    for ``k = 1..k_max``.

    The numerator is odd, so the fraction is already in lowest terms. Its
    size doubles with each step (``P_30`` has about 2**30 bits), which rules
    out ``Fraction`` and its gcd beyond k of about 20.
    """
    num, exp = gmpy2.mpz(1), 1
    for k in range(1, k_max + 1):
        yield k, num, exp
        if k < k_max:
            num, exp = (gmpy2.mpz(1) << (2 * exp)) + num * num, 2 * exp + 1


def p_k_growth_check(k_max: int) -> list[tuple[int, bool, bool, bool]]:
    """For each ``k < k_max``: ``(k, P_k < P_{k+1}, P_{k+1} < 1,
    2(P_{k+1} - P_k) == (1 - P_k)**2)``, all in exact integer arithmetic
    after clearing the denominator ``2**(2 e_k + 1)``."""
    out = []
    prev = None
    for k, num, exp in p_k_dyadic(k_max):
        if prev is not None:
            pnum, pexp = prev
            one = gmpy2.mpz(1) << pexp
            # Over the common denominator 2**exp == 2**(2*pexp + 1):
            #   P_{k+1} - P_k  ->  num - pnum * 2**(pexp + 1)
            #   (1 - P_k)**2 / 2  ->  (one - pnum)**2
            gap = num - (pnum << (pexp + 1))
            out.append(
                (k - 1, gap > 0, num < (gmpy2.mpz(1) << exp), gap == (one - pnum) ** 2)
            )
        prev = (num, exp)
    return out


def format_rational(value: Fraction | int) -> str:
    """Serialize as ``"p/q"``; integers become ``"p/1"``."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    num, _, den = text.partition("/")
    return Fraction(int(num), int(den or 1))
