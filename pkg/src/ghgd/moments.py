"""Exact moments of overlap counts.

Full overlap (LO == T) has closed forms: the mean is prod(M) / N**(T-1)
and higher raw moments follow a recursion over the reduced problem
(N-1, M-1).  Partial overlap means come from inclusion-exclusion over the
elementary symmetric polynomials of the subset sizes.  Second moments of
partial features are obtained by writing the count as a sum of per-element
indicators (:func:`indicator_moments`), which needs only single-element and
pairwise membership probabilities.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Sequence

from .exceptions import BudgetExceededError, DomainError
from .kernel import alt_binom_sum, binom, elementary_symmetric_all, exact_str, to_decimal
from .problem import Kind, OverlapFeature, ProblemSpec

#: Largest T accepted by :func:`indicator_moments`.
DEFAULT_PATTERN_BUDGET = 16


@dataclass(frozen=True)
class SummaryStatistics:
    mean: Fraction
    variance: Fraction
    raw_moments: tuple[Fraction, ...]
    central_moments: tuple[Fraction, ...]

    @classmethod
    def from_raw(cls, raw: Sequence[Fraction]) -> "SummaryStatistics":
        raw = tuple(Fraction(x) for x in raw)
        central = tuple(central_from_raw(raw, v) for v in range(len(raw)))
        mean = raw[1] if len(raw) > 1 else Fraction(0)
        variance = central[2] if len(raw) > 2 else Fraction(0)
        return cls(mean, variance, raw, central)

    def to_dict(self, places: int = 6) -> dict:
        def cell(x):
            return {"value": to_decimal(x, places), "exact": exact_str(x)}

        return {
            "mean": cell(self.mean),
            "variance": cell(self.variance),
            "raw_moments": [cell(x) for x in self.raw_moments],
            "central_moments": [cell(x) for x in self.central_moments],
        }


def central_from_raw(raw: Sequence[Fraction], v: int) -> Fraction:
    """v-th central moment from raw moments 0..v by binomial expansion."""
    mu = raw[1] if len(raw) > 1 else Fraction(0)
    total = Fraction(0)
    for j in range(v + 1):
        term = binom(v, j) * raw[j] * mu ** (v - j)
        total += -term if (v - j) & 1 else term
    return total


def expectation_full(spec: ProblemSpec) -> Fraction:
    """Mean size of the common intersection of all T subsets."""
    if spec.m_min == 0:
        return Fraction(0)
    return Fraction(prod(spec.sizes), spec.n ** (spec.t_count - 1))


def raw_moments_full(spec: ProblemSpec, v_max: int) -> list[Fraction]:
    """Raw moments E(k**v), v = 0..v_max, of the common-intersection size.

    E_{N,M}(k**v) = E_{N,M}(k) * sum_i C(v-1, i) E_{N-1,M-1}(k**i), unrolled
    from the deepest reduction upwards.  A reduced problem with some size 0
    has k identically 0, which ends the chain.
    """
    if v_max < 0:
        raise DomainError("v_max must be >= 0")
    # reduced problems (N-j, M-j) for j = 0..v_max-1, truncated once degenerate
    chain = [spec]
    while len(chain) < v_max and chain[-1].m_min > 0:
        chain.append(chain[-1].reduced())
    depth = len(chain)
    # moments of the problem just below the chain: degenerate or unused
    below = [Fraction(1)] + [Fraction(0)] * v_max
    for j in range(depth - 1, -1, -1):
        e1 = expectation_full(chain[j])
        order = v_max - j
        cur = [Fraction(1)]
        for v in range(1, order + 1):
            cur.append(e1 * sum(binom(v - 1, i) * below[i] for i in range(v)))
        below = cur
    return below


def central_moments_full(spec: ProblemSpec, v_max: int) -> list[Fraction]:
    raw = raw_moments_full(spec, v_max)
    return [central_from_raw(raw, v) for v in range(v_max + 1)]


def variance_full(spec: ProblemSpec) -> Fraction:
    """E(k) * (1 + E_{N-1,M-1}(k) - E(k)) for the common intersection."""
    mean = expectation_full(spec)
    if mean == 0:
        return Fraction(0)
    return mean * (1 + expectation_full(spec.reduced()) - mean)


def summary_full(spec: ProblemSpec, v_max: int = 4) -> SummaryStatistics:
    return SummaryStatistics.from_raw(raw_moments_full(spec, max(v_max, 2)))


def expectation_partial(spec: ProblemSpec, feature: OverlapFeature) -> Fraction:
    """Mean number of elements with LO == t (or LO >= t).

    Inclusion-exclusion over S(M^z), the elementary symmetric polynomials
    of the sizes:

        E(LO == t) = sum_l (-1)**l C(t+l, l) S(M^(t+l)) / N**(t+l-1)
        E(LO >= t) = sum_l A(t+l, l) S(M^(t+l)) / N**(t+l-1)

    with A(n, l) = sum_{j<=l} (-1)**j C(n, j).  Level 0 comes from the
    complement since every element has some level.
    """
    feature.check(spec)
    n, t_count, t = spec.n, spec.t_count, feature.t
    if t == 0:
        if feature.kind is Kind.AT_LEAST:
            return Fraction(n)
        rest = sum(expectation_partial(spec, OverlapFeature(Kind.EXACTLY, u)) for u in range(1, t_count + 1))
        return n - rest
    if n == 0:
        return Fraction(0)
    s = elementary_symmetric_all(spec.sizes)
    total = Fraction(0)
    for l in range(t_count - t + 1):
        z = t + l
        if feature.kind is Kind.EXACTLY:
            coeff = binom(z, l) * (-1) ** l
        else:
            coeff = alt_binom_sum(z, 0, l)
        total += Fraction(coeff * s[z], n ** (z - 1))
    return total


def _matches(feature: OverlapFeature):
    t = feature.t
    if feature.kind is Kind.EXACTLY:
        return lambda c: c == t
    return lambda c: c >= t


def indicator_moments(
    spec: ProblemSpec, feature: OverlapFeature, pattern_budget: int = DEFAULT_PATTERN_BUDGET
) -> SummaryStatistics:
    """Exact mean and variance by indicator decomposition.

    k = sum over elements e of 1[e matches], so
    E(k) = N * P(e matches) and E(k**2) = E(k) + N(N-1) * P(e and f match)
    for two distinct elements e, f.  Membership of e (and of the pair) in
    the independent subsets is accumulated subset by subset, tracking how
    many subsets contain each element, which sums the per-pattern products
    without listing the 2**T (or 4**T) membership patterns.
    """
    feature.check(spec)
    if spec.t_count > pattern_budget:
        raise BudgetExceededError(
            f"indicator moments for T={spec.t_count} exceed the pattern budget "
            f"({pattern_budget}); use exact_distribution or the sampler",
            spec.t_count,
            pattern_budget,
        )
    n = spec.n
    match = _matches(feature)
    if n == 0:
        return SummaryStatistics.from_raw([1, 0, 0])

    single = {0: Fraction(1)}
    for m in spec.sizes:
        p_in = Fraction(m, n)
        nxt: dict[int, Fraction] = {}
        for c, p in single.items():
            nxt[c + 1] = nxt.get(c + 1, 0) + p * p_in
            nxt[c] = nxt.get(c, 0) + p * (1 - p_in)
        single = nxt
    mean = n * sum(p for c, p in single.items() if match(c))

    second = mean
    if n >= 2:
        d = n * (n - 1)
        pair = {(0, 0): Fraction(1)}
        for m in spec.sizes:
            both = Fraction(m * (m - 1), d)
            one = Fraction(m * (n - m), d)
            none = Fraction((n - m) * (n - m - 1), d)
            nxt2: dict[tuple[int, int], Fraction] = {}
            for (a, b), p in pair.items():
                for key, f in (((a + 1, b + 1), both), ((a + 1, b), one), ((a, b + 1), one), ((a, b), none)):
                    if f:
                        nxt2[key] = nxt2.get(key, 0) + p * f
            pair = nxt2
        second += d * sum(p for (a, b), p in pair.items() if match(a) and match(b))
    return SummaryStatistics.from_raw([Fraction(1), mean, second])


def second_moment_equalM_closed(n: int, m: int, t_count: int, t: int) -> Fraction:
    """E(k**2) - E(k) for LO == t when all T subsets have size ``m``.

    Triple sum over x, o in 0..d and l in 0..t+o with d = T - t.
    """
    if not 1 <= t <= t_count:
        raise DomainError(f"t={t} outside 1..T={t_count}")
    if n < 2:
        raise DomainError("closed form divides by N-1; needs N >= 2")
    if not 0 <= m <= n:
        raise DomainError(f"subset size {m} outside 0..N={n}")
    d = t_count - t
    total = Fraction(0)
    for x in range(d + 1):
        cx = binom(t + x, x) * binom(t_count, t + x)
        for o in range(d + 1):
            co = binom(d, o)
            for l in range(t + o + 1):
                num = co * binom(d + l - o, d) * binom(t + o, l) * cx * m ** (l + t + x)
                den = (n - 1) ** (t + o - 1) * n ** (t + x - 1)
                term = Fraction(num, den)
                total += -term if (t + l + x) & 1 else term
    return total


def summary(spec: ProblemSpec, feature: OverlapFeature) -> SummaryStatistics:
    """Mean from the inclusion-exclusion formula, variance from indicators."""
    stats = indicator_moments(spec, feature)
    mean = expectation_partial(spec, feature)
    if mean != stats.mean:
        raise AssertionError(f"mean mismatch for {feature}: {mean} != {stats.mean}")
    return stats
