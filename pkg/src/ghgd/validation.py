"""Input validation helpers shared by the functional API and the estimator."""

from __future__ import annotations

import numbers
from typing import Iterable

from .exceptions import DomainError


def check_count(value, name: str) -> int:
    """Return ``value`` as a non-negative int, rejecting bools and floats."""
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise DomainError(f"{name} must be an integer, got {value!r}")
    value = int(value)
    if value < 0:
        raise DomainError(f"{name} must be non-negative, got {value}")
    return value


def check_sizes(sizes: Iterable, n: int) -> tuple[int, ...]:
    sizes = tuple(check_count(m, "subset size") for m in sizes)
    if not sizes:
        raise DomainError("at least one subset size is required")
    too_big = [m for m in sizes if m > n]
    if too_big:
        raise DomainError(f"subset sizes {too_big} exceed universe size N={n}")
    return sizes


def check_alpha(alpha) -> float:
    alpha = float(alpha)
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    return alpha


def check_histogram(counts: Iterable, n: int | None = None, t_count: int | None = None):
    counts = tuple(check_count(c, "histogram count") for c in counts)
    if not counts:
        raise DomainError("histogram must have at least one level")
    if n is not None and sum(counts) != n:
        raise DomainError(f"histogram sums to {sum(counts)}, expected N={n}")
    if t_count is not None and len(counts) != t_count + 1:
        raise DomainError(
            f"histogram has {len(counts)} levels, expected T+1={t_count + 1}"
        )
    return counts
