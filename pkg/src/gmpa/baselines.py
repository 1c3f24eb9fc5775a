"""Comparison algorithms sharing the core substrate: GWO, MPA, PSO, DE.

All four reuse the same bounds handling, seeded stream, trace recording and
evaluation accounting as the hybrid, so head-to-head runs isolate the update
rules themselves. A uniform random-search baseline is included as the sanity
yardstick every real optimizer must beat.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .core import (
    Bounds,
    Individual,
    Leaders,
    ObjectiveProblem,
    Population,
    RunBudget,
    RunTrace,
    TraceRecorder,
    clamp_to_bounds,
    make_rng,
    update_leaders,
)
from .hybrid import (
    Memory,
    _evaluate_all,
    fads_perturbation,
    phase1_update,
    phase2_update,
    phase3_update,
    phase_of,
)
from .kernels import LevyParams, cf

__all__ = [
    "GwoConfig",
    "MpaConfig",
    "PsoConfig",
    "DeConfig",
    "gwo_control",
    "gwo_step",
    "pso_step",
    "de_trials",
    "run_gwo",
    "run_mpa",
    "run_pso",
    "run_de",
    "run_random_search",
]


@dataclass(frozen=True)
class GwoConfig:
    """Canonical GWO has no knobs beyond the budget."""

    penalty_value: float = 1e12


@dataclass(frozen=True)
class MpaConfig:
    p: float = 0.5
    fads: float = 0.2
    levy: LevyParams = field(default_factory=LevyParams)
    penalty_value: float = 1e12

    def __post_init__(self):
        if self.p <= 0:
            raise ValueError("step scale p must be positive")
        if not 0.0 <= self.fads <= 1.0:
            raise ValueError("fads probability must be in [0, 1]")


@dataclass(frozen=True)
class PsoConfig:
    inertia: float = 0.729
    c1: float = 1.49445
    c2: float = 1.49445
    velocity_clamp: float = 0.5
    penalty_value: float = 1e12

    def __post_init__(self):
        if not 0.0 <= self.inertia <= 1.0:
            raise ValueError("inertia must be in [0, 1]")
        if self.c1 <= 0 or self.c2 <= 0:
            raise ValueError("acceleration coefficients must be positive")
        if not 0.0 < self.velocity_clamp <= 1.0:
            raise ValueError("velocity clamp fraction must be in (0, 1]")


@dataclass(frozen=True)
class DeConfig:
    f: float = 0.5
    cr: float = 0.9
    penalty_value: float = 1e12

    def __post_init__(self):
        if not 0.0 < self.f <= 2.0:
            raise ValueError("scale factor F must be in (0, 2]")
        if not 0.0 <= self.cr <= 1.0:
            raise ValueError("crossover rate CR must be in [0, 1]")


def gwo_control(t: float, T: float) -> float:
    """Exploration scalar a, decaying linearly from 2 at t=0 to 0 at t=T."""
    return 2.0 * (1.0 - t / T)


def gwo_step(
    positions: np.ndarray,
    leaders: Leaders,
    a: float,
    bounds: Bounds,
    rng: np.random.Generator,
) -> np.ndarray:
    """One GWO move: mean of the three leader-encircling candidates.

    Per member and leader L: candidate = X_L - A * |C*X_L - x| with
    A = 2a*rand - a and C = 2*rand, both drawn per coordinate.
    """
    n, d = positions.shape
    candidates = np.zeros_like(positions)
    for leader in (leaders.alpha, leaders.beta, leaders.delta):
        coef_a = 2.0 * a * rng.random((n, d)) - a
        coef_c = 2.0 * rng.random((n, d))
        dist = np.abs(coef_c * leader.position - positions)
        candidates += leader.position - coef_a * dist
    return clamp_to_bounds(candidates / 3.0, bounds)


def run_gwo(
    problem: ObjectiveProblem,
    budget: RunBudget,
    config: GwoConfig | None = None,
) -> tuple[Individual, RunTrace]:
    """Canonical grey wolf optimizer (leaders re-sorted every iteration)."""
    config = config or GwoConfig()
    n, T = budget.n, budget.T
    bounds = problem.bounds
    rng = make_rng(budget.seed)
    recorder = TraceRecorder()

    positions = bounds.sample(rng, n)
    fitness = _evaluate_all(problem, positions, config.penalty_value)
    recorder.observe(positions, fitness, n)
    leaders = update_leaders(Population(positions, fitness))

    for t in range(1, T + 1):
        positions = gwo_step(positions, leaders, gwo_control(t, T), bounds, rng)
        fitness = _evaluate_all(problem, positions, config.penalty_value)
        recorder.observe(positions, fitness, n)
        leaders = update_leaders(Population(positions, fitness), leaders)
        recorder.record_iteration(t)

    trace = recorder.finish()
    return Individual(trace.best_position.copy(), trace.best_fitness), trace


def run_mpa(
    problem: ObjectiveProblem,
    budget: RunBudget,
    config: MpaConfig | None = None,
) -> tuple[Individual, RunTrace]:
    """Single-elite marine predators algorithm.

    Identical to the hybrid's three phases, FADs displacement and memory,
    but steered by one replicated elite (the best-so-far solution) instead
    of the leader trio, with no neighborhood search and constant p/fads.
    """
    config = config or MpaConfig()
    n, T = budget.n, budget.T
    bounds = problem.bounds
    rng = make_rng(budget.seed)
    recorder = TraceRecorder()

    positions = bounds.sample(rng, n)
    fitness = _evaluate_all(problem, positions, config.penalty_value)
    recorder.observe(positions, fitness, n)
    elite = Individual(recorder.best_position.copy(), recorder.best_fitness)
    memory = Memory(positions, fitness)
    phase_counts = [0, 0, 0]

    for t in range(1, T + 1):
        phase = phase_of(t, T)
        phase_counts[phase - 1] += 1
        trio = Leaders(alpha=elite, beta=elite, delta=elite)
        if phase == 1:
            positions = phase1_update(positions, trio, config.p, t, T, bounds, rng)
        elif phase == 2:
            positions = phase2_update(positions, trio, config.p, t, T, bounds, rng, config.levy)
        else:
            positions = phase3_update(positions, trio, config.p, t, T, bounds, rng, config.levy)
        fitness = _evaluate_all(problem, positions, config.penalty_value)
        recorder.observe(positions, fitness, n)
        positions, fitness = memory.apply(positions, fitness)
        elite = _refresh_elite(elite, positions, fitness)

        positions = fads_perturbation(positions, bounds, config.fads, cf(t, T), rng)
        fitness = _evaluate_all(problem, positions, config.penalty_value)
        recorder.observe(positions, fitness, n)
        positions, fitness = memory.apply(positions, fitness)
        elite = _refresh_elite(elite, positions, fitness)
        recorder.record_iteration(t)

    trace = recorder.finish(extras={"phase_counts": phase_counts})
    return Individual(trace.best_position.copy(), trace.best_fitness), trace


def _refresh_elite(elite: Individual, positions: np.ndarray, fitness: np.ndarray) -> Individual:
    i = int(np.argmin(fitness))
    if float(fitness[i]) < elite.fitness:
        return Individual(positions[i].copy(), float(fitness[i]))
    return elite


def pso_step(
    positions: np.ndarray,
    velocity: np.ndarray,
    pbest: np.ndarray,
    gbest: np.ndarray,
    config: PsoConfig,
    bounds: Bounds,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray]:
    """One velocity/position update with velocity and position clamping."""
    n, d = positions.shape
    r1 = rng.random((n, d))
    r2 = rng.random((n, d))
    velocity = (
        config.inertia * velocity
        + config.c1 * r1 * (pbest - positions)
        + config.c2 * r2 * (gbest - positions)
    )
    vmax = config.velocity_clamp * bounds.width
    velocity = np.clip(velocity, -vmax, vmax)
    positions = clamp_to_bounds(positions + velocity, bounds)
    return positions, velocity


def run_pso(
    problem: ObjectiveProblem,
    budget: RunBudget,
    config: PsoConfig | None = None,
    callback: Callable[[int, np.ndarray], None] | None = None,
) -> tuple[Individual, RunTrace]:
    """Global-best particle swarm; the callback sees each iteration's pbest costs."""
    config = config or PsoConfig()
    n, T, d = budget.n, budget.T, problem.dimension
    bounds = problem.bounds
    rng = make_rng(budget.seed)
    recorder = TraceRecorder()

    positions = bounds.sample(rng, n)
    velocity = np.zeros((n, d))
    fitness = _evaluate_all(problem, positions, config.penalty_value)
    recorder.observe(positions, fitness, n)
    pbest = positions.copy()
    pbest_fit = fitness.copy()
    g = int(np.argmin(pbest_fit))
    gbest = pbest[g].copy()
    gbest_fit = float(pbest_fit[g])

    for t in range(1, T + 1):
        positions, velocity = pso_step(positions, velocity, pbest, gbest, config, bounds, rng)
        fitness = _evaluate_all(problem, positions, config.penalty_value)
        recorder.observe(positions, fitness, n)
        improved = fitness < pbest_fit
        pbest[improved] = positions[improved]
        pbest_fit[improved] = fitness[improved]
        g = int(np.argmin(pbest_fit))
        if float(pbest_fit[g]) < gbest_fit:
            gbest = pbest[g].copy()
            gbest_fit = float(pbest_fit[g])
        recorder.record_iteration(t)
        if callback is not None:
            callback(t, pbest_fit.copy())

    trace = recorder.finish()
    return Individual(trace.best_position.copy(), trace.best_fitness), trace


def de_trials(
    positions: np.ndarray,
    config: DeConfig,
    rng: np.random.Generator,
) -> np.ndarray:
    """Build one trial per member: rand/1 mutation + binomial crossover.

    The mutant mixes three distinct members (all different from the target);
    the trial copies mutant coordinates where rand < CR, plus one forced
    coordinate j_rand so it always differs from the target somewhere.
    """
    n, d = positions.shape
    trials = np.empty_like(positions)
    for i in range(n):
        a, b, c = _distinct_indices(rng, n, exclude=i)
        mutant = positions[a] + config.f * (positions[b] - positions[c])
        j_rand = int(rng.integers(d))
        cross = rng.random(d) < config.cr
        cross[j_rand] = True
        trials[i] = np.where(cross, mutant, positions[i])
    return trials


def run_de(
    problem: ObjectiveProblem,
    budget: RunBudget,
    config: DeConfig | None = None,
    callback: Callable[[int, np.ndarray], None] | None = None,
) -> tuple[Individual, RunTrace]:
    """DE/rand/1/bin with greedy per-slot selection (ties accept the trial)."""
    config = config or DeConfig()
    n, T = budget.n, budget.T
    bounds = problem.bounds
    rng = make_rng(budget.seed)
    recorder = TraceRecorder()

    positions = bounds.sample(rng, n)
    fitness = _evaluate_all(problem, positions, config.penalty_value)
    recorder.observe(positions, fitness, n)

    for t in range(1, T + 1):
        trials = clamp_to_bounds(de_trials(positions, config, rng), bounds)
        trial_fit = _evaluate_all(problem, trials, config.penalty_value)
        recorder.observe(trials, trial_fit, n)
        accept = trial_fit <= fitness
        positions[accept] = trials[accept]
        fitness[accept] = trial_fit[accept]
        recorder.record_iteration(t)
        if callback is not None:
            callback(t, fitness.copy())

    trace = recorder.finish()
    return Individual(trace.best_position.copy(), trace.best_fitness), trace


def _distinct_indices(rng: np.random.Generator, n: int, exclude: int) -> tuple[int, int, int]:
    """Three distinct member indices, none equal to `exclude`."""
    picks: list[int] = []
    taken = {exclude}
    while len(picks) < 3:
        j = int(rng.integers(n))
        if j not in taken:
            picks.append(j)
            taken.add(j)
    return picks[0], picks[1], picks[2]


def run_random_search(
    problem: ObjectiveProblem,
    budget: RunBudget,
    total_evals: int | None = None,
    penalty_value: float = 1e12,
) -> tuple[Individual, RunTrace]:
    """Uniform random sampling at a matched evaluation budget.

    Draws n points per recorded iteration until ``total_evals`` evaluations
    (default n*(T+1), the cost of a plain population algorithm) are spent.
    Exists purely as the floor any real optimizer must clear.
    """
    n, T = budget.n, budget.T
    total = total_evals if total_evals is not None else n * (T + 1)
    if total < 1:
        raise ValueError("evaluation budget must be positive")
    bounds = problem.bounds
    rng = make_rng(budget.seed)
    recorder = TraceRecorder()

    spent = 0
    t = 0
    while spent < total:
        batch = min(n, total - spent)
        positions = bounds.sample(rng, batch)
        fitness = _evaluate_all(problem, positions, penalty_value)
        recorder.observe(positions, fitness, batch)
        spent += batch
        t += 1
        recorder.record_iteration(t)

    trace = recorder.finish()
    return Individual(trace.best_position.copy(), trace.best_fitness), trace
