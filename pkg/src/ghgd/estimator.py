"""scikit-learn style estimator over a family of identifier lists."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .exceptions import DomainError
from .inference import InferenceConfig, ZminRule, build_report
from .lists import build_lists, element_levels, observed_lo_counts
from .problem import Kind
from .report import render_json, render_text, render_tsv


class OverlapSignificance(BaseEstimator):
    """Judge the overlap of T identifier lists against random drawing.

    ``fit`` takes the T lists (any iterables of hashable identifiers) and
    builds the per-feature inference rows.  ``transform`` maps identifiers
    to their level of overlap; ``predict`` flags identifiers that fall in an
    at-least-t overlap group carrying a statistical hit (SHN > 0).

    Parameters
    ----------
    universe_size : int, optional
        Size N of the universe the lists were drawn from.
    universe : iterable of str, optional
        Explicit universe; mutually exclusive with ``universe_size``.
    alpha, mode_gap, z_min_rule :
        See :class:`ghgd.inference.InferenceConfig`.
    fold_case : bool
        Compare string identifiers case-insensitively.
    """

    def __init__(self, universe_size=None, universe=None, alpha=0.05, mode_gap=1.0,
                 z_min_rule="floor", fold_case=False):
        self.universe_size = universe_size
        self.universe = universe
        self.alpha = alpha
        self.mode_gap = mode_gap
        self.z_min_rule = z_min_rule
        self.fold_case = fold_case

    def _norm(self, x):
        x = str(x)
        return x.casefold() if self.fold_case else x

    def fit(self, X, y=None):
        if isinstance(X, (str, bytes)):
            raise DomainError("X must be a sequence of identifier lists, not a string")
        lists = [[self._norm(x) for x in ids] for ids in X]
        universe = None if self.universe is None else [self._norm(x) for x in self.universe]
        self.config_ = InferenceConfig(self.alpha, self.mode_gap, ZminRule(self.z_min_rule))
        self.lists_ = build_lists(lists, self.universe_size, universe)
        self.spec_ = self.lists_.spec()
        self.n_lists_ = self.spec_.t_count
        self.levels_ = dict(element_levels(self.lists_))
        self.lo_histogram_ = observed_lo_counts(self.lists_)
        self.rows_ = build_report(self.spec_, self.lo_histogram_, self.config_)
        hit_levels = [
            r.feature.t for r in self.rows_ if r.feature.kind is Kind.AT_LEAST and r.shn is not None
        ]
        self.min_hit_level_ = min(hit_levels) if hit_levels else None
        return self

    def transform(self, X):
        """Level of overlap of each identifier (0 when in no list)."""
        check_is_fitted(self, "levels_")
        return np.array([self.levels_.get(self._norm(x), 0) for x in X], dtype=np.int64)

    def predict(self, X):
        check_is_fitted(self, "levels_")
        lo = self.transform(X)
        if self.min_hit_level_ is None:
            return np.zeros(len(lo), dtype=bool)
        return lo >= self.min_hit_level_

    def fit_transform(self, X, y=None):
        """Fit on the lists and return the level of every listed identifier, sorted."""
        self.fit(X)
        ids = sorted(self.levels_)
        return ids, self.transform(ids)

    def report(self, format="text") -> str:
        check_is_fitted(self, "rows_")
        if format == "json":
            return render_json(self.spec_, self.rows_, self.config_, self.lo_histogram_)
        if format == "tsv":
            return render_tsv(self.spec_, self.rows_, self.config_)
        return render_text(self.spec_, self.rows_, self.config_)
