"""Descriptive statistics and rank-sum comparisons for trial sets.

One TrialSet holds the final best values of repeated runs of one algorithm
on one problem; the comparison table reports avg/std/min/max per cell plus
a two-sided rank-sum p-value of every algorithm against a reference.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, groupby

import numpy as np

__all__ = [
    "TrialSet",
    "SummaryRow",
    "summarize",
    "ranksum_p",
    "comparison_table",
    "EXACT_MAX_TOTAL",
]

# exact permutation enumeration up to this pooled size, normal approximation above
EXACT_MAX_TOTAL = 12


@dataclass(frozen=True)
class TrialSet:
    algorithm: str
    problem: str
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 1 or values.size < 2:
            raise ValueError("a trial set needs at least two trials")
        if not np.all(np.isfinite(values)):
            raise ValueError("trial values must be finite")
        object.__setattr__(self, "values", values)


def summarize(ts: TrialSet) -> tuple[float, float, float, float]:
    """(mean, sample std, min, max) of the trial values."""
    v = ts.values
    return float(np.mean(v)), float(np.std(v, ddof=1)), float(np.min(v)), float(np.max(v))


def _midranks(pooled: np.ndarray) -> np.ndarray:
    """Ranks 1..N with ties sharing the mean of their rank block."""
    order = np.argsort(pooled, kind="stable")
    ranks = np.empty(pooled.size)
    i = 0
    sorted_vals = pooled[order]
    while i < pooled.size:
        j = i
        while j + 1 < pooled.size and sorted_vals[j + 1] == sorted_vals[i]:
            j += 1
        ranks[order[i : j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    return ranks


def ranksum_p(a: TrialSet, b: TrialSet) -> float:
    """Two-sided rank-sum p-value between two independent trial sets.

    Midranks handle ties. For pooled sizes up to EXACT_MAX_TOTAL, the exact
    null is enumerated: p is the fraction of rank assignments whose rank sum
    is at least as far from its mean as the observed one. Larger samples use
    the normal approximation with tie-corrected variance and a 0.5
    continuity correction. Symmetric in its arguments, and always in (0, 1].
    """
    x, y = a.values, b.values
    n, m = x.size, y.size
    pooled = np.concatenate([x, y])
    ranks = _midranks(pooled)
    w_obs = float(np.sum(ranks[:n]))
    mean_w = n * (n + m + 1) / 2.0

    if n + m <= EXACT_MAX_TOTAL:
        dist_obs = abs(w_obs - mean_w)
        hits = 0
        total = 0
        for subset in combinations(range(n + m), n):
            total += 1
            w = float(np.sum(ranks[list(subset)]))
            # rank sums step in multiples of 0.5, so this compare is exact
            if abs(w - mean_w) >= dist_obs:
                hits += 1
        return hits / total

    tie_term = 0.0
    for _, group in groupby(sorted(pooled)):
        t = sum(1 for _ in group)
        tie_term += t**3 - t
    big_n = n + m
    var_w = n * m / 12.0 * ((big_n + 1) - tie_term / (big_n * (big_n - 1)))
    if var_w <= 0.0:
        return 1.0  # all values tied: no evidence either way
    shift = w_obs - mean_w
    z = (abs(shift) - 0.5) / math.sqrt(var_w)
    if z < 0.0:
        z = 0.0
    return min(1.0, 2.0 * 0.5 * math.erfc(z / math.sqrt(2.0)))


@dataclass(frozen=True)
class SummaryRow:
    problem: str
    algorithm: str
    avg: float
    std: float
    min: float
    max: float
    p_vs_reference: float | None


def comparison_table(cells: list[TrialSet], reference: str) -> list[SummaryRow]:
    """Per (problem, algorithm) summary rows with p-values against a reference.

    Every problem present must include the reference algorithm; its own p
    cell is left empty. Row order follows first appearance of problems and
    algorithms, so permuting the input trials leaves the table unchanged.
    """
    by_problem: dict[str, dict[str, TrialSet]] = {}
    problem_order: list[str] = []
    algo_order: list[str] = []
    for ts in cells:
        if ts.problem not in by_problem:
            by_problem[ts.problem] = {}
            problem_order.append(ts.problem)
        if ts.algorithm in by_problem[ts.problem]:
            raise ValueError(f"duplicate cell for ({ts.problem}, {ts.algorithm})")
        by_problem[ts.problem][ts.algorithm] = ts
        if ts.algorithm not in algo_order:
            algo_order.append(ts.algorithm)

    rows: list[SummaryRow] = []
    for problem in problem_order:
        cell_map = by_problem[problem]
        if reference not in cell_map:
            raise ValueError(f"reference algorithm {reference!r} missing for {problem!r}")
        ref = cell_map[reference]
        for algorithm in algo_order:
            if algorithm not in cell_map:
                continue
            ts = cell_map[algorithm]
            avg, std, lo, hi = summarize(ts)
            p = None if algorithm == reference else ranksum_p(ts, ref)
            rows.append(SummaryRow(problem, algorithm, avg, std, lo, hi, p))
    return rows
