"""Seeded Monte Carlo simulation of independent uniform subset draws.

Random numbers come from numpy's ``PCG64`` bit generator seeded with the
user seed.  Draws are processed in fixed batches of ``BATCH`` simulated
tuples; within a batch, subsets are drawn in the order given by the problem,
each by a partial Fisher-Yates shuffle of the index range ``0..N-1``:

    for j in 0..M-1:  swap(perm[j], perm[j + U(0, N-j)])

with one ``Generator.integers`` call per step covering the whole batch.
Only the swapped positions are reset afterwards, so the O(N) scratch row
is reused.  With ``n_jobs > 1`` worker ``w`` uses
``SeedSequence(seed).spawn(n_jobs)[w]`` and handles a contiguous share
of the draws.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError
from .problem import Kind, OverlapFeature, ProblemSpec

BATCH = 256


@dataclass
class SampleReport:
    spec: ProblemSpec
    feature: OverlapFeature
    draws: int
    empirical_mean: float
    empirical_variance: float
    histogram: dict[int, int]
    seed: int

    def pmf(self) -> dict[int, float]:
        return {k: c / self.draws for k, c in self.histogram.items()}

    def sf(self, k: int) -> float:
        """Empirical P(X >= k)."""
        return sum(c for j, c in self.histogram.items() if j >= k) / self.draws

    def to_dict(self) -> dict:
        return {
            "n": self.spec.n,
            "m": list(self.spec.sizes),
            "feature": self.feature.to_dict(),
            "normalizer": str(self.draws),
            "counts": {str(k): str(v) for k, v in sorted(self.histogram.items())},
            "draws": self.draws,
            "seed": self.seed,
            "empirical_mean": self.empirical_mean,
            "empirical_variance": self.empirical_variance,
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def _sample_histograms(spec: ProblemSpec, draws: int, rng: np.random.Generator, check: bool):
    """LO histograms of ``draws`` simulated tuples, shape (draws, T+1)."""
    n, sizes, t_count = spec.n, spec.sizes, spec.t_count
    out = np.zeros((draws, t_count + 1), dtype=np.int64)
    if n == 0:
        return out
    width = max(sizes)
    perm = np.tile(np.arange(n, dtype=np.int32), (min(BATCH, draws), 1))
    level = np.zeros((min(BATCH, draws), n), dtype=np.int16)
    total = sum(sizes)
    for start in range(0, draws, BATCH):
        b = min(BATCH, draws - start)
        rows = np.arange(b)
        chosen = np.empty((b, total), dtype=np.int32)
        col = 0
        for m in sizes:
            swapped = np.empty((b, width), dtype=np.int32)
            for j in range(m):
                pick = j + rng.integers(0, n - j, size=b, dtype=np.int64)
                a = perm[rows, j]
                perm[rows, j] = perm[rows, pick]
                perm[rows, pick] = a
                swapped[:, j] = pick
            sel = perm[:b, :m]
            if check:
                assert all(len(set(row)) == m for row in sel.tolist())
            chosen[:, col:col + m] = sel
            level[rows[:, None], sel] += 1
            col += m
            # back to the identity: only positions 0..m-1 and the picks moved
            touched = swapped[:, :m]
            perm[rows[:, None], touched] = touched
            perm[:b, :m] = np.arange(m, dtype=np.int32)
        hits = level[rows[:, None], chosen]
        for t in range(1, t_count + 1):
            # an element at level t appears t times among the chosen indices
            out[start:start + b, t] = (hits == t).sum(axis=1) // t
        level[rows[:, None], chosen] = 0
        out[start:start + b, 0] = n - out[start:start + b, 1:].sum(axis=1)
    return out


def sample_histograms(spec: ProblemSpec, draws: int, seed: int, n_jobs: int = 1, check: bool = False):
    if draws < 1:
        raise DomainError("draws must be >= 1")
    if n_jobs <= 1:
        return _sample_histograms(spec, draws, np.random.Generator(np.random.PCG64(seed)), check)
    children = np.random.SeedSequence(seed).spawn(n_jobs)
    shares = [draws // n_jobs + (w < draws % n_jobs) for w in range(n_jobs)]
    jobs = [(s, np.random.Generator(np.random.PCG64(c))) for s, c in zip(shares, children) if s]
    with ThreadPoolExecutor(max_workers=len(jobs)) as pool:
        parts = list(pool.map(lambda job: _sample_histograms(spec, job[0], job[1], check), jobs))
    return np.concatenate(parts)


def sample_distribution(
    spec: ProblemSpec,
    feature: OverlapFeature,
    draws: int,
    seed: int,
    n_jobs: int = 1,
    check: bool = False,
) -> SampleReport:
    """Simulate ``draws`` tuples and tally the feature's overlap count."""
    feature.check(spec)
    hists = sample_histograms(spec, draws, seed, n_jobs, check)
    return report_from_histograms(spec, feature, hists, seed)


def report_from_histograms(spec, feature, hists, seed) -> SampleReport:
    if feature.kind is Kind.EXACTLY:
        k = hists[:, feature.t]
    else:
        k = hists[:, feature.t:].sum(axis=1)
    values, counts = np.unique(k, return_counts=True)
    return SampleReport(
        spec=spec,
        feature=feature,
        draws=len(k),
        empirical_mean=float(k.mean()),
        empirical_variance=float(k.var()),
        histogram={int(v): int(c) for v, c in zip(values, counts)},
        seed=seed,
    )
