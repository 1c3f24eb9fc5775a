"""Patched-conics multi-gravity-assist trajectory objective.

Keplerian ephemerides, a Lambert solver, powered-swingby and orbit-insertion
impulse costs, composed into a box-bounded scalar objective over launch epoch
and leg durations.
"""

from .kepler import solve_kepler, propagate_universal, KeplerError
from .lambert import lambert, LambertGeometryError, LambertConvergenceError
from .bodies import KeplerianElements, BodyModel, StateVector, ephemeris_state, load_ephemeris, packaged_ephemeris_path
from .mga import (
    MgaProblem,
    insertion_dv,
    powered_swingby_dv,
    mga_objective,
    mga_breakdown,
    as_objective_problem,
    load_mga_problem,
    packaged_problem_path,
)

__all__ = [
    "solve_kepler",
    "propagate_universal",
    "KeplerError",
    "lambert",
    "LambertGeometryError",
    "LambertConvergenceError",
    "KeplerianElements",
    "BodyModel",
    "StateVector",
    "ephemeris_state",
    "load_ephemeris",
    "packaged_ephemeris_path",
    "MgaProblem",
    "insertion_dv",
    "powered_swingby_dv",
    "mga_objective",
    "mga_breakdown",
    "as_objective_problem",
    "load_mga_problem",
    "packaged_problem_path",
]
