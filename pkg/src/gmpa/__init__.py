"""Hybrid grey-wolf / marine-predators optimization toolkit.

A population metaheuristic combining grey-wolf leader guidance with
marine-predator phase mechanics (Brownian/Levy steps, FADs displacement,
memory, alpha-neighborhood local search), plus canonical GWO/MPA/PSO/DE
baselines, a shiftable benchmark-function suite, a patched-conics
multi-gravity-assist trajectory objective, rank-sum comparison statistics,
and a reproducible experiment harness with a CLI.
"""

from .core import (
    Bounds,
    Individual,
    Leaders,
    ObjectiveProblem,
    Population,
    RunBudget,
    RunTrace,
    clamp_to_bounds,
    make_rng,
    update_leaders,
)
from .kernels import LevyParams, cf
from .hybrid import GmpaConfig, run_gmpa
from .baselines import (
    DeConfig,
    GwoConfig,
    MpaConfig,
    PsoConfig,
    run_de,
    run_gwo,
    run_mpa,
    run_pso,
    run_random_search,
)
from .benchfuncs import BenchSpec, evaluate_bench, load_bench_suite, make_problem
from .stats import TrialSet, comparison_table, ranksum_p, summarize

__version__ = "0.1.0"

__all__ = [
    "Bounds",
    "Individual",
    "Leaders",
    "ObjectiveProblem",
    "Population",
    "RunBudget",
    "RunTrace",
    "clamp_to_bounds",
    "make_rng",
    "update_leaders",
    "LevyParams",
    "cf",
    "GmpaConfig",
    "run_gmpa",
    "GwoConfig",
    "MpaConfig",
    "PsoConfig",
    "DeConfig",
    "run_gwo",
    "run_mpa",
    "run_pso",
    "run_de",
    "run_random_search",
    "BenchSpec",
    "evaluate_bench",
    "load_bench_suite",
    "make_problem",
    "TrialSet",
    "summarize",
    "ranksum_p",
    "comparison_table",
    "__version__",
]
