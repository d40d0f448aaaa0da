"""Exact overlap-count distributions.

Three independent routes compute the number of T-tuples of subsets that
produce each overlap count:

* :func:`count_full_overlap` - the top-down recursion for the common
  intersection (LO == T) only;
* :func:`exact_distribution` - a layered dynamic program over LO histograms
  that handles every feature;
* :func:`enumerate_oracle` - brute force over every tuple of subsets, used
  to check the other two at small sizes.
"""

from __future__ import annotations

import functools
import itertools
import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, prod
from typing import Mapping

from .exceptions import BudgetExceededError, DomainError
from .kernel import binom
from .problem import Kind, OverlapFeature, ProblemSpec

#: Weighted DP states allowed across all layers before giving up.
DEFAULT_STATE_BUDGET = 10**8
#: Subset tuples the enumeration oracle is willing to visit.
DEFAULT_ENUMERATION_BUDGET = 10**7


def total_selections(spec: ProblemSpec) -> int:
    """Number of ways to draw the T subsets: the product of C(N, M[i])."""
    return prod(binom(spec.n, m) for m in spec.sizes)


@functools.lru_cache(maxsize=256)
def _full_overlap_table(spec: ProblemSpec) -> tuple[int, ...]:
    n, sizes, m_min = spec.n, spec.sizes, spec.m_min
    table = [0] * (m_min + 1)
    for k in range(m_min, -1, -1):
        # tuples whose intersection contains a fixed k-set, minus those whose
        # intersection is strictly larger (each counted C(i, k) times)
        c = binom(n, k) * prod(binom(n - k, m - k) for m in sizes)
        for i in range(k + 1, m_min + 1):
            c -= binom(i, k) * table[i]
        table[k] = c
    return tuple(table)


def count_full_overlap(spec: ProblemSpec, k: int) -> int:
    """Number of subset tuples whose common intersection has exactly ``k`` elements."""
    if k < 0 or k > spec.n:
        raise DomainError(f"k={k} outside 0..N={spec.n}")
    if k > spec.m_min:
        return 0
    return _full_overlap_table(spec)[k]


def reduction_identity_check(spec: ProblemSpec, k: int) -> bool:
    """Check ``k * C_{N,M}(k) == N * C_{N-1,M-1}(k-1)`` in integers."""
    if spec.m_min < 1:
        raise DomainError("identity needs every subset size >= 1")
    if not 1 <= k <= spec.m_min:
        raise DomainError(f"k={k} outside 1..M_min={spec.m_min}")
    lhs = k * count_full_overlap(spec, k)
    rhs = spec.n * count_full_overlap(spec.reduced(), k - 1)
    return lhs == rhs


@dataclass
class ExactOverlapDistribution:
    """Exact counts of subset tuples per overlap count ``k``.

    ``counts`` only holds reachable ``k``; :meth:`pmf` returns 0 elsewhere.
    """

    spec: ProblemSpec
    feature: OverlapFeature
    counts: dict[int, int]
    normalizer: int = field(default=None)

    def __post_init__(self):
        self.counts = {int(k): int(v) for k, v in sorted(self.counts.items()) if v}
        if self.normalizer is None:
            self.normalizer = sum(self.counts.values())

    def pmf(self, k: int) -> Fraction:
        return Fraction(self.counts.get(k, 0), self.normalizer)

    def support(self) -> list[int]:
        return list(self.counts)

    def sf(self, k: int) -> Fraction:
        """P(X >= k)."""
        return Fraction(sum(c for j, c in self.counts.items() if j >= k), self.normalizer)

    def cdf(self, k: int) -> Fraction:
        """P(X <= k)."""
        return Fraction(sum(c for j, c in self.counts.items() if j <= k), self.normalizer)

    def raw_moment(self, v: int) -> Fraction:
        return Fraction(sum(k**v * c for k, c in self.counts.items()), self.normalizer)

    def mean(self) -> Fraction:
        return self.raw_moment(1)

    def variance(self) -> Fraction:
        mu = self.mean()
        return self.raw_moment(2) - mu * mu

    def central_moment(self, v: int) -> Fraction:
        mu = self.mean()
        total = sum((k - mu) ** v * c for k, c in self.counts.items())
        return Fraction(total) / self.normalizer

    def modes(self) -> list[int]:
        top = max(self.counts.values())
        return [k for k, c in self.counts.items() if c == top]

    def is_unimodal(self) -> bool:
        """Non-strictly rising then non-strictly falling over 0..max support.

        Gaps inside the support count as zeros, so a pmf with a hole
        between two positive regions is reported as not unimodal.
        """
        if not self.counts:
            return True
        lo, hi = min(self.counts), max(self.counts)
        seq = [self.counts.get(k, 0) for k in range(lo, hi + 1)]
        falling = False
        for a, b in zip(seq, seq[1:]):
            if b < a:
                falling = True
            elif b > a and falling:
                return False
        return True

    def to_dict(self) -> dict:
        return {
            "n": self.spec.n,
            "m": list(self.spec.sizes),
            "feature": self.feature.to_dict(),
            "normalizer": str(self.normalizer),
            "counts": {str(k): str(v) for k, v in self.counts.items()},
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, doc: Mapping) -> "ExactOverlapDistribution":
        spec = ProblemSpec(doc["n"], tuple(doc["m"]))
        feat = doc["feature"]
        feature = OverlapFeature(Kind(feat["kind"]), feat["t"]).check(spec)
        counts = {int(k): int(v) for k, v in doc["counts"].items()}
        return cls(spec, feature, counts, int(doc["normalizer"]))

    @classmethod
    def from_json(cls, text: str) -> "ExactOverlapDistribution":
        return cls.from_dict(json.loads(text))


def _aggregate(spec, feature, histograms, normalizer):
    counts: dict[int, int] = {}
    for hist, weight in histograms.items():
        k = feature.count(hist)
        counts[k] = counts.get(k, 0) + weight
    return ExactOverlapDistribution(spec, feature, counts, normalizer)


def _expand_layer(layer, m):
    """Draw one more subset of size ``m`` from every histogram in ``layer``.

    A draw takes ``ks[j]`` elements from the ``r[j]`` elements currently at
    level j; those move up one level.  Splits are enumerated with pruning so
    the remaining levels can always absorb the remaining demand.
    """
    nxt: dict[tuple, int] = {}
    get = nxt.get
    for r, w in layer.items():
        top = len(r) - 1
        suffix = list(itertools.accumulate(reversed(r)))[::-1] + [0]
        rows = [[comb(rj, x) for x in range(min(rj, m) + 1)] for rj in r]

        def rec(j, need, carry, prefix, acc):
            # carry: elements promoted from level j-1 into level j
            rj = r[j]
            if j == top:
                state = prefix + (rj - need + carry, need)
                nxt[state] = get(state, 0) + acc * rows[j][need]
                return
            lo = need - suffix[j + 1]
            if lo < 0:
                lo = 0
            hi = rj if rj < need else need
            row = rows[j]
            for x in range(lo, hi + 1):
                rec(j + 1, need - x, x, prefix + (rj - x + carry,), acc * row[x])

        rec(0, m, 0, (), w)
    return nxt


def lo_histogram_weights(spec: ProblemSpec, state_budget: int = DEFAULT_STATE_BUDGET) -> dict:
    """Terminal LO histograms mapped to the number of subset tuples producing them.

    Subsets are processed largest first; the result does not depend on
    the order, only the intermediate state counts do.
    """
    sizes = sorted(spec.sizes, reverse=True)
    n = spec.n
    # every choice of the first subset yields the same histogram
    layer = {(n - sizes[0], sizes[0]): binom(n, sizes[0])}
    seen = 1
    for m in sizes[1:]:
        layer = _expand_layer(layer, m)
        seen += len(layer)
        if seen > state_budget:
            raise BudgetExceededError(
                f"exact distribution reached {seen} states (budget {state_budget}); "
                "use the Monte Carlo sampler instead",
                seen,
                state_budget,
            )
    return layer


def exact_distribution(
    spec: ProblemSpec, feature: OverlapFeature, state_budget: int = DEFAULT_STATE_BUDGET
) -> ExactOverlapDistribution:
    feature.check(spec)
    return exact_distributions(spec, [feature], state_budget)[feature]


def exact_distributions(spec: ProblemSpec, features=None, state_budget: int = DEFAULT_STATE_BUDGET):
    """Distributions for several features from a single DP pass.

    ``features`` defaults to every feature of ``spec``.  Returns a dict
    keyed by feature.
    """
    features = list(spec.features()) if features is None else [f.check(spec) for f in features]
    histograms = lo_histogram_weights(spec, state_budget)
    normalizer = total_selections(spec)
    checksum = sum(histograms.values())
    if checksum != normalizer:
        raise AssertionError(f"DP weights sum to {checksum}, expected {normalizer}")
    return {f: _aggregate(spec, f, histograms, normalizer) for f in features}


def enumerate_histograms(spec: ProblemSpec, budget: int = DEFAULT_ENUMERATION_BUDGET) -> Counter:
    """Visit every tuple of subsets and tally the resulting LO histograms.

    Subsets are bitmasks; ``ge[j]`` tracks the elements seen in at least
    j subsets so far.
    """
    tuples = total_selections(spec)
    if tuples > budget:
        raise BudgetExceededError(
            f"enumeration would visit {tuples} subset tuples (budget {budget})", tuples, budget
        )
    n, t_count = spec.n, spec.t_count
    masks = [
        [sum(1 << e for e in combo) for combo in itertools.combinations(range(n), m)]
        for m in spec.sizes
    ]
    tally: Counter = Counter()

    def visit(i, ge):
        if i == t_count:
            pops = [g.bit_count() for g in ge] + [0]
            tally[tuple(pops[j] - pops[j + 1] for j in range(t_count + 1))] += 1
            return
        for s in masks[i]:
            nxt = list(ge)
            for j in range(i + 1, 0, -1):
                nxt[j] |= nxt[j - 1] & s
            visit(i + 1, nxt)

    visit(0, [(1 << n) - 1] + [0] * t_count)
    return tally


def enumerate_oracle(
    spec: ProblemSpec, feature: OverlapFeature, budget: int = DEFAULT_ENUMERATION_BUDGET
) -> ExactOverlapDistribution:
    feature.check(spec)
    tally = enumerate_histograms(spec, budget)
    counts: dict[int, int] = {}
    for hist, c in tally.items():
        k = hist[feature.t] if feature.kind is Kind.EXACTLY else sum(hist[feature.t:])
        counts[k] = counts.get(k, 0) + c
    return ExactOverlapDistribution(spec, feature, counts, sum(tally.values()))
