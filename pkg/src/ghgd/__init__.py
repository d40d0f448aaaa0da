"""Exact statistics of element overlap among randomly drawn subsets."""

__version__ = "0.1.0"

from .distribution import (
    ExactOverlapDistribution,
    count_full_overlap,
    enumerate_oracle,
    exact_distribution,
    exact_distributions,
    reduction_identity_check,
    total_selections,
)
from .exceptions import BudgetExceededError, DomainError
from .inference import (
    InferenceConfig,
    InferenceRow,
    ZminRule,
    build_report,
    chebyshev_standard,
    chebyshev_unimodal,
    credibility_interval,
    hit_statistics,
)
from .kernel import alt_binom_sum, binom, elementary_symmetric, to_decimal
from .lists import ElementLists, ingest, observed_lo_counts
from .moments import (
    SummaryStatistics,
    central_moments_full,
    expectation_full,
    expectation_partial,
    indicator_moments,
    raw_moments_full,
    second_moment_equalM_closed,
    variance_full,
)
from .problem import AT_LEAST, EXACTLY, Kind, LOHistogram, OverlapFeature, ProblemSpec
from .sampler import SampleReport, sample_distribution
