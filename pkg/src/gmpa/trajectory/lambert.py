"""Single-revolution Lambert solver via the universal-variable formulation."""

from __future__ import annotations

import math

import numpy as np

from .kepler import stumpff_c2, stumpff_c3

__all__ = ["LambertGeometryError", "LambertConvergenceError", "lambert"]

FOUR_PI_SQ = 4.0 * math.pi * math.pi

# transfer angles closer than this to 0 or pi leave the plane ill-defined
ANGLE_TOL = 1e-8


class LambertGeometryError(ValueError):
    """Endpoints are (nearly) collinear: no unique transfer plane."""


class LambertConvergenceError(RuntimeError):
    """The time-of-flight iteration failed to reach the target."""


def _transfer_angle(r1: np.ndarray, r2: np.ndarray, direction: str) -> float:
    r1n = float(np.linalg.norm(r1))
    r2n = float(np.linalg.norm(r2))
    cos_dnu = float(np.dot(r1, r2)) / (r1n * r2n)
    cos_dnu = min(1.0, max(-1.0, cos_dnu))
    dnu = math.acos(cos_dnu)
    cross_z = r1[0] * r2[1] - r1[1] * r2[0]
    if direction == "prograde":
        if cross_z < 0.0:
            dnu = 2.0 * math.pi - dnu
    elif direction == "retrograde":
        if cross_z >= 0.0:
            dnu = 2.0 * math.pi - dnu
    else:
        raise ValueError(f"direction must be 'prograde' or 'retrograde', got {direction!r}")
    return dnu


def lambert(
    r1: np.ndarray,
    r2: np.ndarray,
    tof: float,
    mu: float,
    direction: str = "prograde",
    tol: float = 1e-13,
    max_iter: int = 200,
) -> tuple[np.ndarray, np.ndarray]:
    """Velocities (v1, v2) of the single-rev arc from r1 to r2 in time tof.

    Positions in km, tof in seconds, mu in km^3/s^2, velocities in km/s.
    The time of flight is monotone in the universal parameter z, so the
    solve runs secant steps inside a guaranteed bisection bracket over
    z in (-inf, (2*pi)^2). Raises LambertGeometryError when the transfer
    angle is within ANGLE_TOL of 0 or pi (no unique plane), and
    LambertConvergenceError if the iteration stalls.
    """
    r1 = np.asarray(r1, dtype=float)
    r2 = np.asarray(r2, dtype=float)
    if tof <= 0.0:
        raise ValueError("time of flight must be positive")
    if mu <= 0.0:
        raise ValueError("gravitational parameter must be positive")
    r1n = float(np.linalg.norm(r1))
    r2n = float(np.linalg.norm(r2))
    if r1n == 0.0 or r2n == 0.0:
        raise ValueError("endpoint positions must be nonzero")

    dnu = _transfer_angle(r1, r2, direction)
    if min(dnu, abs(math.pi - dnu), 2.0 * math.pi - dnu) < ANGLE_TOL:
        raise LambertGeometryError(
            f"transfer angle {dnu:.6g} rad is too close to 0 or pi"
        )
    a_geom = math.sin(dnu) * math.sqrt(r1n * r2n / (1.0 - math.cos(dnu)))

    sqrt_mu = math.sqrt(mu)

    def tof_of(z: float) -> float:
        """Time of flight at parameter z; -inf flags y<0 (z far too low)."""
        c2, c3 = stumpff_c2(z), stumpff_c3(z)
        y = r1n + r2n + a_geom * (z * c3 - 1.0) / math.sqrt(c2)
        if y < 0.0:
            return -math.inf
        chi = math.sqrt(y / c2)
        return (chi**3 * c3 + a_geom * math.sqrt(y)) / sqrt_mu

    lo = -FOUR_PI_SQ
    while tof_of(lo) > tof:
        lo *= 2.0
        if lo < -1e12:
            raise LambertConvergenceError("could not bracket from below")
    hi = FOUR_PI_SQ * (1.0 - 1e-12)
    if tof_of(hi) < tof:
        raise LambertConvergenceError("time of flight exceeds the single-rev range")

    z = 0.0 if lo < 0.0 < hi else 0.5 * (lo + hi)
    t_z = tof_of(z)
    z_prev, t_prev = lo, tof_of(lo)
    for _ in range(max_iter):
        if abs(t_z - tof) <= tol * tof:
            break
        if t_z > tof:
            hi = z
        else:
            lo = z
        candidate = None
        if math.isfinite(t_prev) and t_prev != t_z:
            candidate = z + (tof - t_z) * (z - z_prev) / (t_z - t_prev)
        if candidate is None or not lo < candidate < hi:
            candidate = 0.5 * (lo + hi)
        z_prev, t_prev = z, t_z
        z = candidate
        t_z = tof_of(z)
        if hi - lo <= abs(z) * 1e-16 + 5e-324:
            break
    if not abs(t_z - tof) <= 1e-9 * tof:
        raise LambertConvergenceError(
            f"time-of-flight residual {abs(t_z - tof):.3e} s after {max_iter} iterations"
        )

    c2, c3 = stumpff_c2(z), stumpff_c3(z)
    y = r1n + r2n + a_geom * (z * c3 - 1.0) / math.sqrt(c2)
    f = 1.0 - y / r1n
    g = a_geom * math.sqrt(y / mu)
    gdot = 1.0 - y / r2n
    v1 = (r2 - f * r1) / g
    v2 = (gdot * r2 - r1) / g
    return v1, v2
