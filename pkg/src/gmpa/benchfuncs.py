"""Analytic test functions with configurable shift, bias and rotation.

Each base function carries its conventional domain and a known argmin; a
spec wraps it as f(x) = base(rot @ (x - shift)) + bias so optima can be
relocated and offset the way shifted benchmark suites do. Rotation is
optional and off by default.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import Bounds, ObjectiveProblem

__all__ = [
    "BaseFunction",
    "BenchSpec",
    "REGISTRY",
    "evaluate_bench",
    "make_problem",
    "load_bench_suite",
    "default_suite_path",
]


def _sphere(z: np.ndarray) -> float:
    return float(np.sum(z * z))


def _rosenbrock(z: np.ndarray) -> float:
    return float(np.sum(100.0 * (z[1:] - z[:-1] ** 2) ** 2 + (1.0 - z[:-1]) ** 2))


def _rastrigin(z: np.ndarray) -> float:
    return float(10.0 * z.size + np.sum(z * z - 10.0 * np.cos(2.0 * np.pi * z)))


def _ackley(z: np.ndarray) -> float:
    d = z.size
    return float(
        -20.0 * np.exp(-0.2 * np.sqrt(np.sum(z * z) / d))
        - np.exp(np.sum(np.cos(2.0 * np.pi * z)) / d)
        + 20.0
        + np.e
    )


def _griewank(z: np.ndarray) -> float:
    i = np.arange(1, z.size + 1)
    return float(np.sum(z * z) / 4000.0 - np.prod(np.cos(z / np.sqrt(i))) + 1.0)


def _zakharov(z: np.ndarray) -> float:
    s = float(np.sum(0.5 * np.arange(1, z.size + 1) * z))
    return float(np.sum(z * z)) + s**2 + s**4


def _levy_func(z: np.ndarray) -> float:
    w = 1.0 + (z - 1.0) / 4.0
    head = np.sin(np.pi * w[0]) ** 2
    mid = np.sum((w[:-1] - 1.0) ** 2 * (1.0 + 10.0 * np.sin(np.pi * w[:-1] + 1.0) ** 2))
    tail = (w[-1] - 1.0) ** 2 * (1.0 + np.sin(2.0 * np.pi * w[-1]) ** 2)
    return float(head + mid + tail)


def _schaffer_f7(z: np.ndarray) -> float:
    if z.size < 2:
        raise ValueError("schaffer_f7 needs dimension >= 2")
    s = np.sqrt(z[:-1] ** 2 + z[1:] ** 2)
    term = np.sqrt(s) + np.sqrt(s) * np.sin(50.0 * s**0.2) ** 2
    return float((np.sum(term) / (z.size - 1)) ** 2)


@dataclass(frozen=True)
class BaseFunction:
    """A registered base function with conventional domain and argmin."""

    name: str
    fn: callable
    lower: float
    upper: float
    argmin: float  # every coordinate of the unshifted minimizer
    min_dim: int = 1


REGISTRY: dict[str, BaseFunction] = {
    f.name: f
    for f in [
        BaseFunction("sphere", _sphere, -100.0, 100.0, 0.0),
        BaseFunction("rosenbrock", _rosenbrock, -30.0, 30.0, 1.0, min_dim=2),
        BaseFunction("rastrigin", _rastrigin, -5.12, 5.12, 0.0),
        BaseFunction("ackley", _ackley, -32.768, 32.768, 0.0),
        BaseFunction("griewank", _griewank, -600.0, 600.0, 0.0),
        BaseFunction("zakharov", _zakharov, -10.0, 10.0, 0.0),
        BaseFunction("levy", _levy_func, -10.0, 10.0, 1.0),
        BaseFunction("schaffer_f7", _schaffer_f7, -100.0, 100.0, 0.0, min_dim=2),
    ]
}


@dataclass(frozen=True)
class BenchSpec:
    """One benchmark instance: base function, dimension, shift, bias, bounds."""

    name: str
    dim: int
    shift: np.ndarray | None = None
    bias: float = 0.0
    bounds: Bounds | None = None
    rotation: np.ndarray | None = None

    def __post_init__(self):
        if self.name not in REGISTRY:
            raise ValueError(f"unknown benchmark function {self.name!r}")
        base = REGISTRY[self.name]
        if self.dim < base.min_dim:
            raise ValueError(f"{self.name} needs dimension >= {base.min_dim}")
        bounds = self.bounds or Bounds.uniform(base.lower, base.upper, self.dim)
        if bounds.dimension != self.dim:
            raise ValueError(f"{self.name}: bounds dimension {bounds.dimension} != {self.dim}")
        object.__setattr__(self, "bounds", bounds)
        if self.shift is not None:
            shift = np.asarray(self.shift, dtype=float)
            if shift.shape != (self.dim,):
                raise ValueError(
                    f"{self.name}: shift has length {shift.size}, expected {self.dim}"
                )
            if np.any(shift < bounds.lower) or np.any(shift > bounds.upper):
                raise ValueError(f"{self.name}: shift lies outside the bounds")
            object.__setattr__(self, "shift", shift)
        if self.rotation is not None:
            rot = np.asarray(self.rotation, dtype=float)
            if rot.shape != (self.dim, self.dim):
                raise ValueError(f"{self.name}: rotation must be {self.dim}x{self.dim}")
            if not np.allclose(rot @ rot.T, np.eye(self.dim), atol=1e-9):
                raise ValueError(f"{self.name}: rotation matrix is not orthogonal")
            object.__setattr__(self, "rotation", rot)

    @property
    def label(self) -> str:
        return f"{self.name}_d{self.dim}"

    def optimum_position(self) -> np.ndarray:
        """Minimizer of the shifted instance (ignoring rotation of a radial argmin)."""
        base = REGISTRY[self.name]
        x = np.full(self.dim, base.argmin)
        if self.rotation is not None:
            x = np.linalg.solve(self.rotation, x)
        if self.shift is not None:
            x = x + self.shift
        return x


def evaluate_bench(spec: BenchSpec, x: np.ndarray) -> float:
    """f_base(rotation @ (x - shift)) + bias."""
    x = np.asarray(x, dtype=float)
    if x.shape != (spec.dim,):
        raise ValueError(f"{spec.name}: point has shape {x.shape}, expected ({spec.dim},)")
    z = x if spec.shift is None else x - spec.shift
    if spec.rotation is not None:
        z = spec.rotation @ z
    return REGISTRY[spec.name].fn(z) + spec.bias


def make_problem(spec: BenchSpec) -> ObjectiveProblem:
    return ObjectiveProblem(
        name=spec.label,
        dimension=spec.dim,
        bounds=spec.bounds,
        evaluate=lambda x, _spec=spec: evaluate_bench(_spec, x),
    )


def default_suite_path() -> Path:
    return Path(__file__).parent / "data" / "default_suite.json"


def load_bench_suite(path: str | Path) -> list[BenchSpec]:
    """Parse a JSON suite file into specs.

    Entries are objects with keys name, dim, and optional shift (list),
    bias (number), bounds ([lower, upper] scalars or per-coordinate lists),
    rotation (path to a .npy orthogonal matrix, resolved next to the suite).
    """
    path = Path(path)
    try:
        entries = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ValueError(f"suite file {path} is not valid JSON: {exc}") from exc
    if not isinstance(entries, list):
        raise ValueError(f"suite file {path} must contain a JSON list")
    specs = []
    for idx, entry in enumerate(entries):
        where = f"suite entry {idx} in {path.name}"
        if not isinstance(entry, dict):
            raise ValueError(f"{where}: expected an object")
        try:
            name = entry["name"]
            dim = int(entry["dim"])
        except KeyError as exc:
            raise ValueError(f"{where}: missing required key {exc}") from exc
        shift = entry.get("shift")
        if shift is not None:
            shift = np.asarray(shift, dtype=float)
        bounds = entry.get("bounds")
        if bounds is not None:
            lo, hi = bounds
            lo = np.full(dim, float(lo)) if np.isscalar(lo) else np.asarray(lo, dtype=float)
            hi = np.full(dim, float(hi)) if np.isscalar(hi) else np.asarray(hi, dtype=float)
            bounds = Bounds(lo, hi)
        rotation = entry.get("rotation")
        if rotation is not None:
            rotation = np.load(path.parent / rotation)
        try:
            specs.append(BenchSpec(
                name=name,
                dim=dim,
                shift=shift,
                bias=float(entry.get("bias", 0.0)),
                bounds=bounds,
                rotation=rotation,
            ))
        except ValueError as exc:
            raise ValueError(f"{where}: {exc}") from exc
    return specs
