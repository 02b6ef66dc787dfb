import numpy as np
import pytest

from submatch.bench import (
    FILTER_SOLVER,
    ORACLE_SOLVER,
    evaluate,
    scaling_probe,
    success_rate,
)
from submatch.filtering import EXACT, INDUCED, FilterConfig
from submatch.io import DatasetRecord
from tests.conftest import C4, K4, PATH3, TRIANGLE


def _toy_dataset():
    # exact filter: accepts the positive, rejects the triangle-in-path
    # negative, and is fooled by induced C4-in-K4 (no cycle augmentation)
    return [
        DatasetRecord(K4, TRIANGLE, True, {}),
        DatasetRecord(PATH3, TRIANGLE, False, {}),
        DatasetRecord(K4, C4, False, {}),
    ]


def test_evaluate_counts_error_kinds():
    metrics = evaluate(_toy_dataset(), FilterConfig(mode=EXACT, semantics=INDUCED))
    assert metrics.decisions == (True, False, True)
    assert metrics.accuracy == pytest.approx(2 / 3)
    assert metrics.false_negative_rate == 0.0
    assert metrics.false_positive_rate == pytest.approx(1 / 2)
    assert metrics.wall_mean > 0.0
    assert metrics.wall_p50 <= metrics.wall_p95


def test_evaluate_rejects_empty():
    with pytest.raises(ValueError):
        evaluate([], FilterConfig())


def test_metrics_dict_excludes_wall_by_default():
    metrics = evaluate(_toy_dataset(), FilterConfig(mode=EXACT))
    d = metrics.to_dict()
    assert "wall_mean" not in d
    assert d["decisions"] == [True, False, True]
    full = metrics.to_dict(include_wall=True)
    assert "wall_mean" in full


def test_success_rate_filter_under_generous_budget():
    assert success_rate(_toy_dataset(), FILTER_SOLVER, 60.0) == 1.0


def test_success_rate_oracle_counts_timeouts():
    from tests.conftest import random_graph

    rng = np.random.default_rng(0)
    hard = DatasetRecord(random_graph(30, 0.5, rng), random_graph(24, 0.5, rng), False, {})
    assert success_rate([hard], ORACLE_SOLVER, 1e-6) == 0.0
    easy = _toy_dataset()
    assert success_rate(easy, ORACLE_SOLVER, 10.0) == 1.0


def test_success_rate_validates_inputs():
    with pytest.raises(ValueError):
        success_rate(_toy_dataset(), "sat", 1.0)
    with pytest.raises(ValueError):
        success_rate(_toy_dataset(), FILTER_SOLVER, 0.0)
    with pytest.raises(ValueError):
        success_rate([], FILTER_SOLVER, 1.0)


def test_scaling_probe_smoke():
    result = scaling_probe(
        [50, 60, 70, 80], FilterConfig(layers=2, samples=2), query_size=10,
        avg_degree=4.0, repeats=1,
    )
    assert result.sizes == (50, 60, 70, 80)
    assert all(m > 0 for m in result.op_means)
    assert np.isfinite(result.op_slope)
    assert np.isfinite(result.wall_slope)
    d = result.ops_dict()
    assert d["sizes"] == [50, 60, 70, 80]
    assert "wall_means" not in d


def test_scaling_probe_validates():
    cfg = FilterConfig()
    with pytest.raises(ValueError):
        scaling_probe([50, 60, 70], cfg)  # needs at least 4 sizes
    with pytest.raises(ValueError):
        scaling_probe([10, 60, 70, 80], cfg)  # sizes below the floor
    with pytest.raises(ValueError):
        scaling_probe([50, 60, 70, 80], cfg, query_size=55)
    with pytest.raises(ValueError):
        scaling_probe([50, 60, 70, 80], cfg, repeats=0)
