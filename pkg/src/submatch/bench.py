"""Evaluation and performance measurement.

Three probes: classification metrics of the filter over a labeled
dataset, the fraction of records a solver finishes within a wall-clock
budget, and a scaling probe fitting the log-log slope of cost against
target size. Wall time is inherently machine-dependent; every probe
also reports the machine-independent op_count carried by MatchReport,
and only those counts belong in serialized artifacts.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .datagen import bfs_sample, gen_er
from .filtering import FilterConfig, run_filter
from .io import DatasetRecord
from .oracles import TIMEOUT, vf2_search

__all__ = [
    "EvalMetrics",
    "ScalingResult",
    "evaluate",
    "scaling_probe",
    "success_rate",
]

FILTER_SOLVER = "filter"
ORACLE_SOLVER = "oracle"


@dataclass(frozen=True)
class EvalMetrics:
    """Classification metrics of one filter configuration over a dataset.

    Rates are conditional: false_negative_rate is on positive records,
    false_positive_rate on negatives (0.0 when the class is absent).
    """

    accuracy: float
    false_negative_rate: float
    false_positive_rate: float
    decisions: tuple[bool, ...]
    wall_mean: float
    wall_p50: float
    wall_p95: float

    def to_dict(self, include_wall: bool = False) -> dict:
        out = {
            "accuracy": self.accuracy,
            "false_negative_rate": self.false_negative_rate,
            "false_positive_rate": self.false_positive_rate,
            "decisions": [bool(d) for d in self.decisions],
        }
        if include_wall:
            out.update(
                wall_mean=self.wall_mean, wall_p50=self.wall_p50, wall_p95=self.wall_p95
            )
        return out


def evaluate(dataset: Sequence[DatasetRecord], config: FilterConfig) -> EvalMetrics:
    """Run the filter on every record and score decisions against labels."""
    if not dataset:
        raise ValueError("empty dataset")
    decisions: list[bool] = []
    walls: list[float] = []
    fn = fp = pos = neg = 0
    for record in dataset:
        report = run_filter(record.target, record.query, config)
        decisions.append(report.decision)
        walls.append(report.wall_time)
        if record.label:
            pos += 1
            fn += not report.decision
        else:
            neg += 1
            fp += report.decision
    wrong = fn + fp
    walls_arr = np.asarray(walls)
    return EvalMetrics(
        accuracy=1.0 - wrong / len(dataset),
        false_negative_rate=fn / pos if pos else 0.0,
        false_positive_rate=fp / neg if neg else 0.0,
        decisions=tuple(decisions),
        wall_mean=float(walls_arr.mean()),
        wall_p50=float(np.percentile(walls_arr, 50)),
        wall_p95=float(np.percentile(walls_arr, 95)),
    )


def success_rate(
    dataset: Sequence[DatasetRecord],
    solver: str,
    time_budget: float,
    config: FilterConfig | None = None,
) -> float:
    """Fraction of records the solver finishes within the budget.

    solver "filter" runs run_filter and compares its wall time to the
    budget after the fact (the filter has no internal cutoff); solver
    "oracle" passes the budget to the search, counting timeouts as
    failures. Any verdict counts as success, only exceeding the budget
    does not.
    """
    if time_budget <= 0:
        raise ValueError(f"time_budget must be positive, got {time_budget}")
    if solver not in (FILTER_SOLVER, ORACLE_SOLVER):
        raise ValueError(f"solver must be 'filter' or 'oracle', got {solver!r}")
    if not dataset:
        raise ValueError("empty dataset")
    config = config or FilterConfig()
    done = 0
    for record in dataset:
        if solver == FILTER_SOLVER:
            report = run_filter(record.target, record.query, config)
            done += report.wall_time <= time_budget
        else:
            result = vf2_search(
                record.target,
                record.query,
                config.semantics,
                config.attr_epsilon,
                time_budget,
            )
            done += result.status != TIMEOUT
    return done / len(dataset)


@dataclass(frozen=True)
class ScalingResult:
    """Scaling probe outcome: one mean per size plus fitted slopes."""

    sizes: tuple[int, ...]
    wall_means: tuple[float, ...]
    op_means: tuple[float, ...]
    wall_slope: float
    op_slope: float

    def ops_dict(self) -> dict:
        """The machine-independent part (safe to serialize)."""
        return {
            "sizes": list(self.sizes),
            "op_means": list(self.op_means),
            "op_slope": self.op_slope,
        }


def scaling_probe(
    sizes: Sequence[int],
    config: FilterConfig,
    query_size: int = 15,
    avg_degree: float = 6.0,
    repeats: int = 3,
) -> ScalingResult:
    """Time run_filter on ER targets of growing size at fixed average degree
    and fixed query size; fit log-log slopes for wall time and op count.

    A slope near 1 over doubling sizes is the linear-scaling signature.
    Queries are BFS samples of each target, so every pair is a true
    positive and no run exits on an early reject.
    """
    sizes = [int(s) for s in sizes]
    if len(set(sizes)) < 4:
        raise ValueError(f"need >= 4 distinct sizes, got {sorted(set(sizes))}")
    if min(sizes) < 50:
        raise ValueError(f"sizes must be >= 50 nodes, got min {min(sizes)}")
    if not 1 <= query_size <= min(sizes):
        raise ValueError(f"query_size must fit the smallest target, got {query_size}")
    if repeats < 1:
        raise ValueError(f"repeats must be >= 1, got {repeats}")
    wall_means: list[float] = []
    op_means: list[float] = []
    for size in sizes:
        p = min(1.0, avg_degree / (size - 1))
        walls: list[float] = []
        ops: list[int] = []
        for rep in range(repeats):
            rng = np.random.default_rng(np.random.SeedSequence((config.seed, size, rep)))
            target = gen_er(size, p, rng)
            query = bfs_sample(target, query_size, rng)
            start = time.perf_counter()
            report = run_filter(target, query, config)
            walls.append(time.perf_counter() - start)
            ops.append(report.op_count)
        wall_means.append(float(np.mean(walls)))
        op_means.append(float(np.mean(ops)))
    log_sizes = np.log(np.asarray(sizes, dtype=np.float64))
    wall_slope = float(np.polyfit(log_sizes, np.log(np.asarray(wall_means)), 1)[0])
    op_slope = float(np.polyfit(log_sizes, np.log(np.asarray(op_means)), 1)[0])
    return ScalingResult(
        sizes=tuple(sizes),
        wall_means=tuple(wall_means),
        op_means=tuple(op_means),
        wall_slope=wall_slope,
        op_slope=op_slope,
    )
