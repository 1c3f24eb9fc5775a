"""The GMPA hybrid optimizer.

Grey-wolf leader guidance (alpha/beta/delta) fused with marine-predator
mechanics: a three-phase Brownian/Levy position schedule, an occasional
FADs-style randomized displacement, per-member memory of the best previous
position, and a local search in a shrinking neighborhood of the alpha.

A run is strictly sequential and every random draw comes from the run's own
generator, so a (problem, budget, config) triple plus a seed reproduces the
trace bit for bit.
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
from .kernels import (
    LevyParams,
    binary_mask,
    brownian_matrix,
    cf,
    levy_matrix,
    uniform_matrix,
    uniform_vector,
)

__all__ = [
    "GmpaConfig",
    "Memory",
    "IterationStats",
    "phase_of",
    "phase1_update",
    "phase2_update",
    "phase3_update",
    "fads_perturbation",
    "alpha_neighborhood_search",
    "run_gmpa",
]


@dataclass(frozen=True)
class GmpaConfig:
    """Knobs of the hybrid.

    P and fads are the step scale and displacement probability; both may be
    given a linear schedule by setting the matching ``*_final`` value (the
    knob then ramps from its base value at t=0 to the final value at t=T;
    off by default). ``neighborhood_size`` defaults to min(population, 10)
    when left as None. ``per_leader_stepsize`` switches the first phase to
    recompute the step against each leader instead of sharing the
    alpha-referenced step, an ablation variant.
    """

    p: float = 0.5
    fads: float = 0.2
    levy: LevyParams = field(default_factory=LevyParams)
    epsilon: float = 1e-8
    neighborhood_size: int | None = None
    penalty_value: float = 1e12
    per_leader_stepsize: bool = False
    p_final: float | None = None
    fads_final: float | None = None

    def __post_init__(self):
        if self.p <= 0:
            raise ValueError("step scale p must be positive")
        if not 0.0 <= self.fads <= 1.0:
            raise ValueError("fads probability must be in [0, 1]")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.neighborhood_size is not None and self.neighborhood_size < 1:
            raise ValueError("neighborhood size must be at least 1")
        if self.fads_final is not None and not 0.0 <= self.fads_final <= 1.0:
            raise ValueError("final fads probability must be in [0, 1]")

    def p_at(self, t: int, T: int) -> float:
        if self.p_final is None:
            return self.p
        return self.p + (self.p_final - self.p) * t / T

    def fads_at(self, t: int, T: int) -> float:
        if self.fads_final is None:
            return self.fads
        return self.fads + (self.fads_final - self.fads) * t / T

    def resolve_k(self, n: int) -> int:
        return self.neighborhood_size if self.neighborhood_size is not None else min(n, 10)


def phase_of(t: int, T: int) -> int:
    """Which of the three update regimes governs iteration t (1-based)."""
    if t < T / 3:
        return 1
    if t < 2 * T / 3:
        return 2
    return 3


def _require_phase(expected: int, t: int, T: int):
    got = phase_of(t, T)
    if got != expected:
        raise ValueError(f"iteration {t}/{T} is in phase {got}, not phase {expected}")


def phase1_update(
    positions: np.ndarray,
    leaders: Leaders,
    p: float,
    t: int,
    T: int,
    bounds: Bounds,
    rng: np.random.Generator,
    per_leader: bool = False,
) -> np.ndarray:
    """Brownian exploration around all three leaders (first third of the run).

    Per member: step = RB * (alpha - RB * x), then each leader proposes
    leader + p * R * step and the member moves to the mean of the three
    proposals. RB and R are fresh per member; the one alpha-referenced step
    is shared across the three proposals unless ``per_leader`` recomputes it
    against beta and delta (same RB/R draws either way).
    """
    _require_phase(1, t, T)
    n, d = positions.shape
    rb = brownian_matrix(n, d, rng)
    r = uniform_matrix(n, d, rng)
    alpha = leaders.alpha.position
    beta = leaders.beta.position
    delta = leaders.delta.position
    step_a = rb * (alpha - rb * positions)
    if per_leader:
        step_b = rb * (beta - rb * positions)
        step_d = rb * (delta - rb * positions)
    else:
        step_b = step_d = step_a
    x1 = alpha + p * r * step_a
    x2 = beta + p * r * step_b
    x3 = delta + p * r * step_d
    return clamp_to_bounds((x1 + x2 + x3) / 3.0, bounds)


def phase2_update(
    positions: np.ndarray,
    leaders: Leaders,
    p: float,
    t: int,
    T: int,
    bounds: Bounds,
    rng: np.random.Generator,
    levy: LevyParams,
    cf_value: float | None = None,
) -> np.ndarray:
    """Split regime for the middle third: half exploit, half explore.

    The first floor(n/2) members take Levy steps toward the alpha
    (x = alpha + p * R * RL*(alpha - RL*x)); the rest take Brownian steps
    scaled by the decaying factor (x = alpha + p * CF * RB*(RB*alpha - x)).
    ``cf_value`` overrides the schedule, for instrumented runs.
    """
    _require_phase(2, t, T)
    n, d = positions.shape
    h = n // 2
    alpha = leaders.alpha.position
    new = np.empty_like(positions)

    rl = levy_matrix(h, d, levy, rng)
    r = uniform_matrix(h, d, rng)
    step_exploit = rl * (alpha - rl * positions[:h])
    new[:h] = alpha + p * r * step_exploit

    rb = brownian_matrix(n - h, d, rng)
    step_explore = rb * (rb * alpha - positions[h:])
    new[h:] = alpha + p * (cf(t, T) if cf_value is None else cf_value) * step_explore
    return clamp_to_bounds(new, bounds)


def phase3_update(
    positions: np.ndarray,
    leaders: Leaders,
    p: float,
    t: int,
    T: int,
    bounds: Bounds,
    rng: np.random.Generator,
    levy: LevyParams,
    cf_value: float | None = None,
) -> np.ndarray:
    """Levy exploitation around the alpha for the final third of the run."""
    _require_phase(3, t, T)
    n, d = positions.shape
    alpha = leaders.alpha.position
    rl = levy_matrix(n, d, levy, rng)
    step = rl * (rl * alpha - positions)
    new = alpha + p * (cf(t, T) if cf_value is None else cf_value) * step
    return clamp_to_bounds(new, bounds)


def fads_perturbation(
    positions: np.ndarray,
    bounds: Bounds,
    fads: float,
    cf_value: float,
    rng: np.random.Generator,
) -> np.ndarray:
    """Occasional long displacement that breaks stagnation.

    Per member, two uniform scalars r1, r2 decide the branch. When r1 <= r2
    the member jumps by CF * (random in-bounds point) masked coordinate-wise
    with probability ``fads``; otherwise it moves along the difference of two
    distinct randomly chosen members, scaled by fads*(1-r)+r. Differences are
    taken against the pre-perturbation positions.
    """
    n, d = positions.shape
    if n < 2:
        raise ValueError("perturbation needs at least two members")
    lo, width = bounds.lower, bounds.width
    old = positions
    new = positions.copy()
    for i in range(n):
        r1 = rng.random()
        r2 = rng.random()
        if r1 <= r2:
            r = uniform_vector(d, rng)
            u = binary_mask(d, fads, rng)
            new[i] += cf_value * (lo + r * width) * u
        else:
            r = rng.random()
            a = int(rng.integers(n))
            b = int(rng.integers(n - 1))
            if b >= a:
                b += 1
            new[i] += (fads * (1.0 - r) + r) * (old[a] - old[b])
    return clamp_to_bounds(new, bounds)


class Memory:
    """Per-member recall of the best previous position.

    After each evaluation pass, any member whose new cost is worse than its
    remembered one is restored; ties keep the new position so plateaus can
    drift. The memory then snapshots the surviving state.
    """

    def __init__(self, positions: np.ndarray, fitness: np.ndarray):
        self.positions = np.array(positions, dtype=float, copy=True)
        self.fitness = np.array(fitness, dtype=float, copy=True)

    def apply(self, positions: np.ndarray, fitness: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        if positions.shape != self.positions.shape or fitness.shape != self.fitness.shape:
            raise ValueError("memory shape does not match population shape")
        worse = self.fitness < fitness
        positions = positions.copy()
        fitness = fitness.copy()
        positions[worse] = self.positions[worse]
        fitness[worse] = self.fitness[worse]
        self.positions = positions.copy()
        self.fitness = fitness.copy()
        return positions, fitness


def alpha_neighborhood_search(
    positions: np.ndarray,
    leaders: Leaders,
    bounds: Bounds,
    t: int,
    T: int,
    epsilon: float,
    k: int,
    rng: np.random.Generator,
    evaluate: Callable[[np.ndarray], float],
) -> tuple[Leaders, int, np.ndarray, np.ndarray]:
    """Probe k random neighbors of the alpha at the end of an iteration.

    Neighbor j leans on population member i = j mod n. Its offset combines a
    weight that shrinks on average as the run progresses,

        w = (1 - t/T + epsilon)^(2*g) * (rand_vec * t/T) * rand_vec

    with g a scalar standard normal, a direction mixing a fresh random
    in-bounds point phi against the member (r1*phi - r2*x_i, scalar rands),
    and the Euclidean distance |alpha - x_i| which vanishes as the pack
    converges. The neighbor is alpha + normal_vec * offset, clamped. The
    best neighbor replaces the alpha when it improves on it.

    Returns the (possibly improved) leaders, the evaluation count, and the
    neighbor positions/fitnesses that were probed.
    """
    if k < 1:
        raise ValueError("neighborhood size must be at least 1")
    n, d = positions.shape
    alpha_pos = leaders.alpha.position
    lo, width = bounds.lower, bounds.width
    frac = t / T
    neighbors = np.empty((k, d))
    costs = np.empty(k)
    for j in range(k):
        i = j % n
        phi = lo + rng.random(d) * width
        g = rng.standard_normal()
        w = (1.0 - frac + epsilon) ** (2.0 * g) * (rng.random(d) * frac) * rng.random(d)
        r1 = rng.random()
        r2 = rng.random()
        dist = float(np.linalg.norm(alpha_pos - positions[i]))
        tau = w * (r1 * phi - r2 * positions[i]) * dist
        neighbors[j] = clamp_to_bounds(alpha_pos + rng.standard_normal(d) * tau, bounds)
        costs[j] = evaluate(neighbors[j])
    best = int(np.argmin(costs))
    if costs[best] < leaders.alpha.fitness:
        leaders = Leaders(
            alpha=Individual(neighbors[best].copy(), float(costs[best])),
            beta=leaders.beta,
            delta=leaders.delta,
        )
    return leaders, k, neighbors, costs


@dataclass
class IterationStats:
    """Instrumentation snapshot emitted once per iteration via the callback."""

    t: int
    phase: int
    fitness_before_memory1: np.ndarray
    fitness_after_memory1: np.ndarray
    fitness_before_memory2: np.ndarray
    fitness_after_memory2: np.ndarray
    alpha_before_search: float
    alpha_after_search: float
    best_so_far: float


def _evaluate_all(
    problem: ObjectiveProblem, positions: np.ndarray, penalty: float
) -> np.ndarray:
    values = problem.evaluate_many(positions)
    bad = ~np.isfinite(values)
    if np.any(bad):
        values[bad] = penalty
    return values


def run_gmpa(
    problem: ObjectiveProblem,
    budget: RunBudget,
    config: GmpaConfig | None = None,
    callback: Callable[[IterationStats], None] | None = None,
) -> tuple[Individual, RunTrace]:
    """Run the hybrid on a problem and return the best solution plus trace.

    One iteration applies, in order: the phase update for t, a memory pass,
    a leader refresh, the FADs displacement, a second memory pass and leader
    refresh, and finally the alpha-neighborhood probe. Evaluation cost is
    n at initialization and 2n + k per iteration.
    """
    config = config or GmpaConfig()
    n, T, d = budget.n, budget.T, problem.dimension
    k = config.resolve_k(n)
    bounds = problem.bounds
    rng = make_rng(budget.seed)
    recorder = TraceRecorder()

    positions = bounds.sample(rng, n)
    fitness = _evaluate_all(problem, positions, config.penalty_value)
    recorder.observe(positions, fitness, n)
    pop = Population(positions, fitness)
    leaders = update_leaders(pop)
    memory = Memory(positions, fitness)
    phase_counts = [0, 0, 0]

    for t in range(1, T + 1):
        phase = phase_of(t, T)
        phase_counts[phase - 1] += 1
        p_t = config.p_at(t, T)
        fads_t = config.fads_at(t, T)
        cf_t = cf(t, T)

        if phase == 1:
            positions = phase1_update(
                positions, leaders, p_t, t, T, bounds, rng,
                per_leader=config.per_leader_stepsize,
            )
        elif phase == 2:
            positions = phase2_update(positions, leaders, p_t, t, T, bounds, rng, config.levy)
        else:
            positions = phase3_update(positions, leaders, p_t, t, T, bounds, rng, config.levy)
        fitness = _evaluate_all(problem, positions, config.penalty_value)
        recorder.observe(positions, fitness, n)
        pre1 = fitness.copy()
        positions, fitness = memory.apply(positions, fitness)
        post1 = fitness.copy()
        leaders = update_leaders(Population(positions, fitness), leaders)

        positions = fads_perturbation(positions, bounds, fads_t, cf_t, rng)
        fitness = _evaluate_all(problem, positions, config.penalty_value)
        recorder.observe(positions, fitness, n)
        pre2 = fitness.copy()
        positions, fitness = memory.apply(positions, fitness)
        post2 = fitness.copy()
        leaders = update_leaders(Population(positions, fitness), leaders)

        alpha_before = leaders.alpha.fitness
        leaders, n_evals, probes, probe_costs = alpha_neighborhood_search(
            positions, leaders, bounds, t, T, config.epsilon, k, rng,
            lambda x: _safe_scalar(problem, x, config.penalty_value),
        )
        recorder.observe(probes, probe_costs, n_evals)
        recorder.record_iteration(t)

        if callback is not None:
            callback(IterationStats(
                t=t,
                phase=phase,
                fitness_before_memory1=pre1,
                fitness_after_memory1=post1,
                fitness_before_memory2=pre2,
                fitness_after_memory2=post2,
                alpha_before_search=alpha_before,
                alpha_after_search=leaders.alpha.fitness,
                best_so_far=recorder.best_fitness,
            ))

    trace = recorder.finish(extras={"phase_counts": phase_counts})
    return Individual(trace.best_position.copy(), trace.best_fitness), trace


def _safe_scalar(problem: ObjectiveProblem, x: np.ndarray, penalty: float) -> float:
    value = float(problem.evaluate(x))
    return value if np.isfinite(value) else penalty
