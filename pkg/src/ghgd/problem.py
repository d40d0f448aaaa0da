"""Parameters of a general hypergeometric problem.

A problem draws ``T`` subsets of sizes ``M[0..T-1]`` uniformly and
independently from a universe of ``N`` elements.  The level of overlap (LO)
of an element is the number of drawn subsets containing it; an
:class:`OverlapFeature` picks which elements are counted (LO == t or LO >= t).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .exceptions import DomainError
from .validation import check_count, check_histogram, check_sizes


@dataclass(frozen=True)
class ProblemSpec:
    n: int
    sizes: tuple[int, ...]

    def __post_init__(self):
        n = check_count(self.n, "N")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "sizes", check_sizes(self.sizes, n))

    @property
    def t_count(self) -> int:
        return len(self.sizes)

    @property
    def m_min(self) -> int:
        return min(self.sizes)

    def reduced(self) -> "ProblemSpec":
        """The problem with N and every M[i] lowered by one."""
        if self.n < 1 or self.m_min < 1:
            raise DomainError("reduction needs N >= 1 and every M[i] >= 1")
        return ProblemSpec(self.n - 1, tuple(m - 1 for m in self.sizes))

    def features(self):
        """Every feature with 0 <= t <= T, both kinds."""
        for kind in Kind:
            for t in range(self.t_count + 1):
                yield OverlapFeature(kind, t)

    def to_dict(self) -> dict:
        return {"n": self.n, "m": list(self.sizes)}


class Kind(enum.Enum):
    EXACTLY = "exactly"
    AT_LEAST = "at_least"


_KIND_ALIASES = {
    "exactly": Kind.EXACTLY,
    "eq": Kind.EXACTLY,
    "=": Kind.EXACTLY,
    "at_least": Kind.AT_LEAST,
    "at-least": Kind.AT_LEAST,
    "ge": Kind.AT_LEAST,
    ">=": Kind.AT_LEAST,
}


@dataclass(frozen=True)
class OverlapFeature:
    kind: Kind
    t: int

    def __post_init__(self):
        if not isinstance(self.kind, Kind):
            object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "t", check_count(self.t, "overlap level t"))

    @classmethod
    def parse(cls, text: str) -> "OverlapFeature":
        """Parse ``"exactly:2"``, ``"at_least:3"``, ``"ge:3"`` and friends."""
        kind, sep, t = text.strip().partition(":")
        if not sep or kind.lower() not in _KIND_ALIASES:
            raise DomainError(
                f"cannot parse feature {text!r}; expected e.g. 'exactly:2' or 'at_least:3'"
            )
        try:
            level = int(t)
        except ValueError:
            raise DomainError(f"overlap level in {text!r} is not an integer") from None
        return cls(_KIND_ALIASES[kind.lower()], level)

    def check(self, spec: ProblemSpec) -> "OverlapFeature":
        if self.t > spec.t_count:
            raise DomainError(f"overlap level t={self.t} exceeds T={spec.t_count}")
        return self

    def count(self, histogram: Sequence[int]) -> int:
        """Number of elements of an LO histogram matching this feature."""
        if self.kind is Kind.EXACTLY:
            return histogram[self.t] if self.t < len(histogram) else 0
        return sum(histogram[self.t:])

    def label(self) -> str:
        op = "=" if self.kind is Kind.EXACTLY else ">="
        return f"LO{op}{self.t}"

    def __str__(self):
        return f"{self.kind.value}:{self.t}"

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "t": self.t}


EXACTLY = Kind.EXACTLY
AT_LEAST = Kind.AT_LEAST


@dataclass(frozen=True)
class LOHistogram:
    """Number of universe elements at each level of overlap 0..T."""

    counts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "counts", check_histogram(self.counts))

    @property
    def n(self) -> int:
        return sum(self.counts)

    @property
    def t_count(self) -> int:
        return len(self.counts) - 1

    def noess(self, feature: OverlapFeature) -> int:
        return feature.count(self.counts)

    def check(self, spec: ProblemSpec) -> "LOHistogram":
        check_histogram(self.counts, spec.n, spec.t_count)
        return self
