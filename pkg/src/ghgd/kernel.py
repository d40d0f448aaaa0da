"""Exact combinatorial primitives.

Counts are Python ints and probabilities are ``fractions.Fraction``;
nothing in here touches floating point except :func:`to_decimal`, which
renders an exact value for display.
"""

from __future__ import annotations

import functools
import math
from fractions import Fraction
from typing import Sequence

from .exceptions import DomainError

#: Maximum number of (n, k) pairs kept by the binomial memo.
BINOM_CACHE_SIZE = 1 << 20


def _make_binom(maxsize):
    @functools.lru_cache(maxsize=maxsize)
    def cached(n, k):
        return math.comb(n, k)

    return cached


_binom_cached = _make_binom(BINOM_CACHE_SIZE)


def set_binom_cache_size(maxsize: int | None) -> None:
    """Replace the binomial memo with one bounded at ``maxsize`` entries.

    Once the bound is hit the least recently used entries are evicted and
    recomputed on demand, so results never depend on the setting.
    """
    global _binom_cached
    _binom_cached = _make_binom(maxsize)


def binom(n: int, k: int) -> int:
    """Binomial coefficient, zero outside ``0 <= k <= n``.

    >>> binom(5, 2), binom(3, 5), binom(4, -1)
    (10, 0, 0)
    """
    if n < 0:
        raise DomainError(f"binom requires n >= 0, got n={n}")
    if k < 0 or k > n:
        return 0
    if k > n - k:
        k = n - k
    return _binom_cached(n, k)


def elementary_symmetric(m: Sequence[int], z: int) -> int:
    """Sum of all products of ``z`` distinct entries of ``m``.

    Uses the one-pass recurrence e_j <- e_j + x * e_{j-1} over the
    variables instead of enumerating the C(T, z) products.
    """
    t_count = len(m)
    if z < 0 or z > t_count:
        raise DomainError(f"degree z={z} outside 0..{t_count}")
    e = [1] + [0] * z
    for x in m:
        for j in range(z, 0, -1):
            e[j] += x * e[j - 1]
    return e[z]


def elementary_symmetric_all(m: Sequence[int]) -> list[int]:
    """All elementary symmetric polynomials S(m^0) .. S(m^T)."""
    e = [1] + [0] * len(m)
    for i, x in enumerate(m, start=1):
        for j in range(i, 0, -1):
            e[j] += x * e[j - 1]
    return e


def alt_binom_sum(n: int, m1: int, m2: int) -> int:
    """Signed partial binomial sum ``sum((-1)**j * C(n, j) for j in m1..m2)``."""
    if m1 > m2:
        raise DomainError(f"alt_binom_sum requires m1 <= m2, got {m1} > {m2}")
    total = 0
    for j in range(max(m1, 0), m2 + 1):
        c = binom(n, j)
        total += -c if j & 1 else c
    return total


def to_decimal(value: Fraction | int, places: int = 6) -> str:
    """Render an exact value with ``places`` decimals, rounding half to even.

    >>> to_decimal(Fraction(1, 8), 2), to_decimal(Fraction(3, 8), 2)
    ('0.12', '0.38')
    """
    if places < 0:
        raise DomainError("places must be non-negative")
    q = round(Fraction(value) * 10**places)  # Fraction.__round__ is half-even
    sign = "-" if q < 0 else ""
    digits = str(abs(q)).rjust(places + 1, "0")
    if places == 0:
        return sign + digits
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def exact_str(value: Fraction | int) -> str:
    """``"num/den"`` (or just ``"num"`` for integers) for machine output."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_exact(text: str) -> Fraction:
    return Fraction(text)
