"""Shared optimizer substrate: problems, bounds, populations, leaders, traces.

Every algorithm in this package minimizes a scalar cost over a box-bounded
real vector, draws all randomness from a single seeded generator, and records
a per-iteration best-so-far trace. Keeping these pieces in one place means
algorithm comparisons differ only in their update rules.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

__all__ = [
    "Bounds",
    "ObjectiveProblem",
    "Individual",
    "Leaders",
    "Population",
    "RunBudget",
    "RunTrace",
    "TraceRecorder",
    "clamp_to_bounds",
    "make_rng",
    "update_leaders",
]


def make_rng(seed: int) -> np.random.Generator:
    """Create the package-wide random stream for a run.

    Always a PCG64 generator; the bit stream for a given seed is part of the
    reproducibility contract, so do not swap the bit generator casually.
    """
    return np.random.Generator(np.random.PCG64(seed))


@dataclass(frozen=True)
class Bounds:
    """Box constraints: lower[j] < upper[j] for every coordinate."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower = np.asarray(self.lower, dtype=float)
        upper = np.asarray(self.upper, dtype=float)
        if lower.ndim != 1 or upper.ndim != 1 or lower.shape != upper.shape:
            raise ValueError("bounds must be 1-D vectors of equal length")
        if not np.all(lower < upper):
            raise ValueError("each lower bound must be strictly below its upper bound")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @classmethod
    def uniform(cls, lo: float, hi: float, dimension: int) -> "Bounds":
        return cls(np.full(dimension, float(lo)), np.full(dimension, float(hi)))

    @property
    def dimension(self) -> int:
        return self.lower.size

    @property
    def width(self) -> np.ndarray:
        return self.upper - self.lower

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        """Uniform random matrix of n in-bounds positions, shape (n, d)."""
        return self.lower + rng.random((n, self.dimension)) * self.width


def clamp_to_bounds(x: np.ndarray, bounds: Bounds) -> np.ndarray:
    """Repair positions by clamping each coordinate into its box."""
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != bounds.dimension:
        raise ValueError(
            f"dimension mismatch: position has {x.shape[-1]} coordinates, "
            f"bounds have {bounds.dimension}"
        )
    return np.clip(x, bounds.lower, bounds.upper)


@dataclass(frozen=True)
class ObjectiveProblem:
    """A deterministic scalar cost over a box-bounded real vector.

    ``evaluate`` must be pure: the same input always yields the same finite
    value (or a declared penalty value). All optimizers here call it only
    with in-bounds positions.
    """

    name: str
    dimension: int
    bounds: Bounds
    evaluate: Callable[[np.ndarray], float]

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError("dimension must be positive")
        if self.bounds.dimension != self.dimension:
            raise ValueError("bounds dimension does not match problem dimension")

    def evaluate_many(self, positions: np.ndarray) -> np.ndarray:
        """Evaluate a (n, d) stack of positions row by row."""
        return np.array([float(self.evaluate(p)) for p in positions])


@dataclass
class Individual:
    """One candidate solution: a position and its cost."""

    position: np.ndarray
    fitness: float


@dataclass
class Leaders:
    """The three best solutions steering the pack; alpha is the elite.

    Invariant: alpha.fitness <= beta.fitness <= delta.fitness, and alpha is
    never worse than any solution evaluated so far in the run.
    """

    alpha: Individual
    beta: Individual
    delta: Individual


class Population:
    """An ordered set of candidate positions with one fitness slot each.

    Positions live in an (n, d) array; a NaN fitness marks a member whose
    position changed since it was last evaluated.
    """

    def __init__(self, positions: np.ndarray, fitness: np.ndarray | None = None):
        positions = np.asarray(positions, dtype=float)
        if positions.ndim != 2:
            raise ValueError("positions must be an (n, d) matrix")
        if positions.shape[0] < 4:
            raise ValueError("population needs at least 4 members (3 leaders + 1)")
        self.positions = positions
        if fitness is None:
            fitness = np.full(positions.shape[0], np.nan)
        self.fitness = np.asarray(fitness, dtype=float)
        if self.fitness.shape != (positions.shape[0],):
            raise ValueError("fitness must have one slot per member")

    @property
    def size(self) -> int:
        return self.positions.shape[0]

    @property
    def dimension(self) -> int:
        return self.positions.shape[1]

    @property
    def evaluated(self) -> bool:
        return not np.any(np.isnan(self.fitness))

    def evaluate(self, problem: ObjectiveProblem) -> int:
        """Refresh every fitness slot; returns the number of evaluations."""
        self.fitness = problem.evaluate_many(self.positions)
        return self.size

    def member(self, i: int) -> Individual:
        return Individual(self.positions[i].copy(), float(self.fitness[i]))


def update_leaders(pop: Population, current: Leaders | None = None) -> Leaders:
    """Pick alpha/beta/delta from the three best member slots.

    Ties break toward the lowest member index. Alpha is sticky: when a
    previous alpha beats this iteration's best member, it is retained, so
    alpha always carries the best solution seen so far.
    """
    if not pop.evaluated:
        raise ValueError("cannot update leaders with unevaluated members")
    order = np.argsort(pop.fitness, kind="stable")
    best, second, third = (pop.member(order[i]) for i in range(3))
    if current is not None and current.alpha.fitness < best.fitness:
        best = current.alpha
    return Leaders(alpha=best, beta=second, delta=third)


@dataclass
class RunBudget:
    """Population size, iteration count, and the seed of the run's stream."""

    n: int
    T: int
    seed: int = 0

    def __post_init__(self):
        if self.n < 4:
            raise ValueError("population size must be at least 4")
        if self.T < 3:
            raise ValueError("iteration budget must be at least 3")


@dataclass
class RunTrace:
    """Per-iteration best-so-far record of one optimization run."""

    iterations: np.ndarray
    evals: np.ndarray
    best: np.ndarray
    best_position: np.ndarray
    best_fitness: float
    extras: dict = field(default_factory=dict)


class TraceRecorder:
    """Accumulates the monotone best-so-far trace while a run progresses."""

    def __init__(self):
        self._iterations: list[int] = []
        self._evals: list[int] = []
        self._best: list[float] = []
        self.eval_count = 0
        self.best_fitness = np.inf
        self.best_position: np.ndarray | None = None

    def observe(self, positions: np.ndarray, fitness: np.ndarray, cost: int):
        """Account for `cost` evaluations and fold their results into best-so-far."""
        self.eval_count += cost
        i = int(np.argmin(fitness))
        if fitness[i] < self.best_fitness:
            self.best_fitness = float(fitness[i])
            self.best_position = np.array(positions[i], dtype=float, copy=True)

    def observe_one(self, position: np.ndarray, fitness: float, cost: int = 1):
        self.eval_count += cost
        if fitness < self.best_fitness:
            self.best_fitness = float(fitness)
            self.best_position = np.array(position, dtype=float, copy=True)

    def record_iteration(self, t: int):
        self._iterations.append(t)
        self._evals.append(self.eval_count)
        self._best.append(self.best_fitness)

    def finish(self, extras: dict | None = None) -> RunTrace:
        if self.best_position is None:
            raise ValueError("no evaluations were observed")
        return RunTrace(
            iterations=np.array(self._iterations, dtype=int),
            evals=np.array(self._evals, dtype=int),
            best=np.array(self._best, dtype=float),
            best_position=self.best_position.copy(),
            best_fitness=self.best_fitness,
            extras=dict(extras or {}),
        )
