"""Chebyshev-type inference on observed overlap counts.

Given the mean and variance of an overlap count under random drawing, the
observed count (NOESS) is judged against two tail bounds for |X - mu| >= lam:

* standard:  sigma**2 / lam**2
* unimodal:  4 (sigma**2 + s**2) / (9 (lam - s)**2), valid for lam > s,
  where s bounds the distance between mean and mode.

``z_min`` is the overlap count that random drawing is not expected to
exceed at level ``alpha``; SHN = NOESS - z_min elements of the observed
overlap are then attributed to a real signal, and SHR = SHN / NOESS.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .exceptions import DomainError
from .moments import expectation_partial, indicator_moments
from .problem import Kind, LOHistogram, OverlapFeature, ProblemSpec
from .validation import check_alpha


class ZminRule(enum.Enum):
    #: floor(mu + sigma / sqrt(alpha)), the upper end of the credibility interval
    FLOOR_OF_INTERVAL = "floor"
    #: smallest integer Z > mu whose standard bound sigma**2 / (Z - mu)**2 < alpha
    STRICT_CEIL = "strict"


@dataclass(frozen=True)
class InferenceConfig:
    alpha: float = 0.05
    mode_gap_s: float = 1.0
    z_min_rule: ZminRule = ZminRule.FLOOR_OF_INTERVAL

    def __post_init__(self):
        object.__setattr__(self, "alpha", check_alpha(self.alpha))
        if self.mode_gap_s < 0:
            raise DomainError(f"mode gap s must be >= 0, got {self.mode_gap_s}")
        if not isinstance(self.z_min_rule, ZminRule):
            object.__setattr__(self, "z_min_rule", ZminRule(self.z_min_rule))


@dataclass
class InferenceRow:
    feature: OverlapFeature
    mean: Fraction
    variance: Fraction
    noess: int
    p_hit: float | None
    p_hit_form: str | None
    direction: str
    p_all_hit: float | None
    p_all_hit_form: str | None
    interval: tuple[float, float]
    z_min: int | None
    shn: int | None
    shr: Fraction | None
    notes: list[str] = field(default_factory=list)


def chebyshev_standard(mean, variance, lam) -> float:
    """sigma**2 / lam**2; not clamped, so it may exceed 1."""
    if lam <= 0:
        raise DomainError(f"deviation lambda must be positive, got {lam}")
    return float(Fraction(variance) / Fraction(lam) ** 2)


def chebyshev_unimodal(mean, variance, s, lam) -> float | None:
    """4 (sigma**2 + s**2) / (9 (lam - s)**2), or None when lam <= s."""
    s = Fraction(s)
    lam = Fraction(lam)
    if lam <= s:
        return None
    return float(4 * (Fraction(variance) + s * s) / (9 * (lam - s) ** 2))


def tightest_bound(mean, variance, s, lam) -> tuple[float | None, str | None]:
    """The smaller applicable bound for deviation ``lam`` and which form gave it."""
    if lam <= 0:
        return None, None
    best = (chebyshev_standard(mean, variance, lam), "standard")
    uni = chebyshev_unimodal(mean, variance, s, lam)
    if uni is not None and uni < best[0]:
        best = (uni, "unimodal")
    return best


def _half_width(variance, alpha) -> float:
    return math.sqrt(float(variance) / alpha)


def credibility_interval(mean, variance, alpha: float) -> tuple[float, float]:
    """mu -/+ sigma / sqrt(alpha), the lower end clipped at 0."""
    alpha = check_alpha(alpha)
    half = _half_width(variance, alpha)
    mu = float(mean)
    return max(0.0, mu - half), mu + half


def z_min_floor(mean, variance, alpha) -> int:
    """Largest integer z with z <= mu + sqrt(sigma**2 / alpha), decided exactly."""
    mean, limit = Fraction(mean), Fraction(variance) / Fraction(str(alpha))
    z = math.floor(float(mean) + _half_width(variance, alpha))

    def inside(z):
        return z <= mean or (z - mean) ** 2 <= limit

    while not inside(z):
        z -= 1
    while inside(z + 1):
        z += 1
    return z


def z_min_strict(mean, variance, alpha) -> int:
    """Smallest integer Z > mu with sigma**2 / (Z - mu)**2 < alpha, decided exactly."""
    mean, limit = Fraction(mean), Fraction(variance) / Fraction(str(alpha))
    z = max(math.floor(mean) + 1, math.ceil(float(mean) + _half_width(variance, alpha)))

    def ok(z):
        return z > mean and (z - mean) ** 2 > limit

    while not ok(z):
        z += 1
    while ok(z - 1):
        z -= 1
    return z


def hit_statistics(mean, variance, noess: int, config: InferenceConfig = InferenceConfig()):
    """Return ``(z_min, shn, shr)``; shn and shr are None when no hit is claimed."""
    if noess < 0:
        raise DomainError("observed count must be non-negative")
    if config.z_min_rule is ZminRule.FLOOR_OF_INTERVAL:
        z_min = z_min_floor(mean, variance, config.alpha)
    else:
        z_min = z_min_strict(mean, variance, config.alpha)
    if noess <= z_min or noess < mean:
        return z_min, None, None
    shn = noess - z_min
    return z_min, shn, Fraction(shn, noess)


def report_features(t_count: int) -> list[OverlapFeature]:
    """Row order of a report: LO == T..1, then LO >= T..1."""
    return [OverlapFeature(kind, t) for kind in Kind for t in range(t_count, 0, -1)]


def build_row(spec, feature, noess, config, mean=None, variance=None) -> InferenceRow:
    if mean is None:
        mean = expectation_partial(spec, feature)
    if variance is None:
        variance = indicator_moments(spec, feature).variance
    s = Fraction(str(config.mode_gap_s))
    lam = abs(noess - mean)
    p_hit, p_form = tightest_bound(mean, variance, s, lam)
    if lam == 0:
        p_hit, p_form = 1.0, "trivial"
    direction = "above" if noess > mean else "below" if noess < mean else "at"
    if mean < 1:
        p_all, p_all_form = tightest_bound(mean, variance, s, 1 - mean)
    else:
        p_all, p_all_form = None, None
    z_min, shn, shr = hit_statistics(mean, variance, noess, config)
    return InferenceRow(
        feature=feature,
        mean=mean,
        variance=variance,
        noess=noess,
        p_hit=p_hit,
        p_hit_form=p_form,
        direction=direction,
        p_all_hit=p_all,
        p_all_hit_form=p_all_form,
        interval=credibility_interval(mean, variance, config.alpha),
        z_min=z_min,
        shn=shn,
        shr=shr,
    )


def build_report(
    spec: ProblemSpec, observed: LOHistogram, config: InferenceConfig = InferenceConfig()
) -> list[InferenceRow]:
    """One row per feature LO == t and LO >= t, t = T down to 1."""
    if not isinstance(observed, LOHistogram):
        observed = LOHistogram(tuple(observed))
    observed.check(spec)
    return [
        build_row(spec, feature, observed.noess(feature), config)
        for feature in report_features(spec.t_count)
    ]
