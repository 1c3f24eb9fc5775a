"""Random step generators and schedules shared by the hybrid and MPA updates."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "LevyParams",
    "brownian_vector",
    "brownian_matrix",
    "levy_sigma",
    "levy_vector",
    "levy_matrix",
    "uniform_vector",
    "uniform_matrix",
    "binary_mask",
    "cf",
]


@dataclass(frozen=True)
class LevyParams:
    """Tail exponent of the heavy-tailed step distribution, 0 < beta <= 2."""

    beta: float = 1.5

    def __post_init__(self):
        if not 0.0 < self.beta <= 2.0:
            raise ValueError(f"levy tail exponent must be in (0, 2], got {self.beta}")


def brownian_vector(d: int, rng: np.random.Generator) -> np.ndarray:
    """i.i.d. standard-normal step vector."""
    if d < 1:
        raise ValueError("dimension must be at least 1")
    return rng.standard_normal(d)


def levy_sigma(beta: float) -> float:
    """Scale of the numerator normal in the Mantegna heavy-tail construction."""
    num = math.gamma(1.0 + beta) * math.sin(math.pi * beta / 2.0)
    den = math.gamma((1.0 + beta) / 2.0) * beta * 2.0 ** ((beta - 1.0) / 2.0)
    return (num / den) ** (1.0 / beta)


def levy_vector(d: int, params: LevyParams, rng: np.random.Generator) -> np.ndarray:
    """Heavy-tailed step vector via Mantegna: u / |v|^(1/beta).

    u ~ Normal(0, sigma_u^2) and v ~ Normal(0, 1), with sigma_u chosen so the
    steps approximate a stable law of index beta. Mostly small increments
    with occasional long jumps.
    """
    if d < 1:
        raise ValueError("dimension must be at least 1")
    beta = params.beta
    u = levy_sigma(beta) * rng.standard_normal(d)
    v = rng.standard_normal(d)
    return u / np.abs(v) ** (1.0 / beta)


def uniform_vector(d: int, rng: np.random.Generator) -> np.ndarray:
    """i.i.d. uniform [0, 1) vector."""
    if d < 1:
        raise ValueError("dimension must be at least 1")
    return rng.random(d)


def brownian_matrix(n: int, d: int, rng: np.random.Generator) -> np.ndarray:
    """(n, d) matrix whose rows are independent Brownian step vectors."""
    return rng.standard_normal((n, d))


def levy_matrix(n: int, d: int, params: LevyParams, rng: np.random.Generator) -> np.ndarray:
    """(n, d) matrix whose rows are independent Mantegna step vectors."""
    beta = params.beta
    u = levy_sigma(beta) * rng.standard_normal((n, d))
    v = rng.standard_normal((n, d))
    return u / np.abs(v) ** (1.0 / beta)


def uniform_matrix(n: int, d: int, rng: np.random.Generator) -> np.ndarray:
    """(n, d) matrix of uniform [0, 1) entries."""
    return rng.random((n, d))


def binary_mask(d: int, fads: float, rng: np.random.Generator) -> np.ndarray:
    """0/1 vector; each entry is 1 with probability `fads`."""
    if not 0.0 <= fads <= 1.0:
        raise ValueError("mask probability must be in [0, 1]")
    return (rng.random(d) < fads).astype(float)


def cf(t: float, T: float) -> float:
    """Iteration-decaying step scale (1 - t/T)^(2 t/T).

    Equals 1 at t=0 and, by the continuity convention, 0 at t=T.
    """
    if T <= 0:
        raise ValueError("iteration budget must be positive")
    if t < 0 or t > T:
        raise ValueError(f"iteration {t} outside [0, {T}]")
    frac = t / T
    if frac >= 1.0:
        return 0.0
    return (1.0 - frac) ** (2.0 * frac)
