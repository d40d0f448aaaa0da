import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from ghgd.estimator import OverlapSignificance


def read_lists(paths):
    return [[l.strip() for l in p.read_text().splitlines() if l.strip() and not l.startswith("#")] for p in paths]


def test_params_round_trip():
    est = OverlapSignificance(universe_size=100, alpha=0.01)
    assert est.get_params()["alpha"] == 0.01
    est.set_params(mode_gap=0.5)
    assert clone(est).get_params()["mode_gap"] == 0.5


def test_fit_transform_predict(demo_files):
    est = OverlapSignificance(universe_size=19815).fit(read_lists(demo_files))
    assert est.n_lists_ == 4
    assert est.lo_histogram_.counts[1:] == (245, 44, 25, 14)
    ids = sorted(est.levels_)
    lo = est.transform(ids + ["NOT_A_GENE"])
    assert lo[-1] == 0
    assert np.bincount(lo[:-1], minlength=5)[1:].tolist() == [245, 44, 25, 14]
    # at-least-2 carries a statistical hit, at-least-1 does not
    assert est.min_hit_level_ == 2
    assert est.predict(ids).sum() == 83
    assert "LO>=2" in est.report()


def test_not_fitted():
    with pytest.raises(NotFittedError):
        OverlapSignificance(universe_size=10).transform(["a"])


def test_fold_case():
    est = OverlapSignificance(universe_size=10, fold_case=True).fit([["A", "b"], ["a", "B"]])
    assert est.transform(["a", "B", "c"]).tolist() == [2, 2, 0]
    ids, lo = OverlapSignificance(universe_size=10).fit_transform([["A", "b"], ["a", "b"]])
    assert dict(zip(ids, lo.tolist())) == {"A": 1, "a": 1, "b": 2}
