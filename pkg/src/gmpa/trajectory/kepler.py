"""Two-body propagation building blocks: Kepler's equation and f-g series."""

from __future__ import annotations

import math

import numpy as np

__all__ = ["KeplerError", "solve_kepler", "stumpff_c2", "stumpff_c3", "propagate_universal"]

TWO_PI = 2.0 * math.pi


class KeplerError(RuntimeError):
    """Raised when an anomaly or propagation iteration fails to converge."""


def solve_kepler(mean_anomaly: float, e: float, tol: float = 1e-14, max_iter: int = 50) -> float:
    """Eccentric anomaly E with E - e*sin(E) = M, for elliptical orbits.

    Newton iteration from E0 = M + e*sin(M), guarded by bisection on
    [-pi, pi] after wrapping M; the residual at return is below 1e-12 for
    any finite M and 0 <= e < 1.
    """
    if not 0.0 <= e < 1.0:
        raise ValueError(f"eccentricity must be in [0, 1), got {e}")
    m_wrapped = math.remainder(mean_anomaly, TWO_PI)  # in [-pi, pi]
    offset = mean_anomaly - m_wrapped

    lo, hi = -math.pi, math.pi
    ecc_anom = m_wrapped + e * math.sin(m_wrapped)
    for _ in range(max_iter):
        f = ecc_anom - e * math.sin(ecc_anom) - m_wrapped
        if abs(f) < tol:
            return ecc_anom + offset
        if f > 0:
            hi = ecc_anom
        else:
            lo = ecc_anom
        step = f / (1.0 - e * math.cos(ecc_anom))
        candidate = ecc_anom - step
        if not lo < candidate < hi:
            candidate = 0.5 * (lo + hi)
        ecc_anom = candidate
    residual = ecc_anom - e * math.sin(ecc_anom) - m_wrapped
    raise KeplerError(
        f"Kepler iteration did not converge (M={mean_anomaly}, e={e}, residual={residual:.3e})"
    )


def stumpff_c2(z: float) -> float:
    if z > 1e-6:
        sz = math.sqrt(z)
        return (1.0 - math.cos(sz)) / z
    if z < -1e-6:
        sz = math.sqrt(-z)
        return (math.cosh(sz) - 1.0) / (-z)
    # series around 0; next omitted term is z^4/12!
    return 1.0 / 2.0 - z / 24.0 + z * z / 720.0 - z**3 / 40320.0


def stumpff_c3(z: float) -> float:
    if z > 1e-6:
        sz = math.sqrt(z)
        return (sz - math.sin(sz)) / (z * sz)
    if z < -1e-6:
        sz = math.sqrt(-z)
        return (math.sinh(sz) - sz) / (-z * sz)
    return 1.0 / 6.0 - z / 120.0 + z * z / 5040.0 - z**3 / 362880.0


def propagate_universal(
    r0: np.ndarray,
    v0: np.ndarray,
    dt: float,
    mu: float,
    tol: float = 1e-12,
    max_iter: int = 80,
) -> tuple[np.ndarray, np.ndarray]:
    """Propagate a two-body state by dt seconds via the universal anomaly.

    Solves the universal Kepler equation with Newton steps inside an
    expanding bisection bracket (the time-of-flight function is monotone in
    the universal anomaly), then applies the f-g series. Works for any conic.
    """
    r0 = np.asarray(r0, dtype=float)
    v0 = np.asarray(v0, dtype=float)
    if mu <= 0:
        raise ValueError("gravitational parameter must be positive")
    if dt == 0.0:
        return r0.copy(), v0.copy()
    r0n = float(np.linalg.norm(r0))
    v0n = float(np.linalg.norm(v0))
    if r0n == 0.0:
        raise ValueError("initial position must be nonzero")
    sqrt_mu = math.sqrt(mu)
    vr0 = float(np.dot(r0, v0)) / r0n
    alpha = 2.0 / r0n - v0n * v0n / mu  # reciprocal semi-major axis

    def tof_err(chi: float) -> float:
        z = alpha * chi * chi
        c2, c3 = stumpff_c2(z), stumpff_c3(z)
        return (
            r0n * vr0 / sqrt_mu * chi * chi * c2
            + (1.0 - alpha * r0n) * chi**3 * c3
            + r0n * chi
            - sqrt_mu * dt
        ) / sqrt_mu

    # initial guess: elliptic estimate, else a crude scale
    if alpha > 1e-12:
        chi = sqrt_mu * dt * alpha
    else:
        chi = math.copysign(math.sqrt(abs(dt)) * sqrt_mu / r0n ** 0.5, dt)

    # bracket the root; tof_err is increasing in chi
    lo, hi = chi, chi
    f = tof_err(chi)
    span = max(abs(chi), 1.0)
    for _ in range(200):
        if f > 0:
            lo = chi - span
            if tof_err(lo) <= 0:
                hi = chi
                break
        else:
            hi = chi + span
            if tof_err(hi) >= 0:
                lo = chi
                break
        chi = lo if f > 0 else hi
        f = tof_err(chi)
        span *= 2.0
    else:
        raise KeplerError("could not bracket the universal anomaly")

    chi = 0.5 * (lo + hi)
    for _ in range(max_iter):
        z = alpha * chi * chi
        c2, c3 = stumpff_c2(z), stumpff_c3(z)
        f = tof_err(chi)
        if abs(f) < tol * max(1.0, abs(dt)):
            break
        if f > 0:
            hi = chi
        else:
            lo = chi
        # dF/dchi = r(chi)/sqrt_mu
        r_chi = (
            chi * chi * c2
            + r0n * vr0 / sqrt_mu * chi * (1.0 - z * c3)
            + r0n * (1.0 - z * c2)
        )
        candidate = chi - f * sqrt_mu / r_chi if r_chi > 0 else 0.5 * (lo + hi)
        if not lo < candidate < hi:
            candidate = 0.5 * (lo + hi)
        chi = candidate
    else:
        raise KeplerError(f"universal Kepler iteration stalled (residual={f:.3e} s)")

    z = alpha * chi * chi
    c2, c3 = stumpff_c2(z), stumpff_c3(z)
    f_series = 1.0 - chi * chi * c2 / r0n
    g_series = dt - chi**3 * c3 / sqrt_mu
    r = f_series * r0 + g_series * v0
    rn = float(np.linalg.norm(r))
    fdot = sqrt_mu / (rn * r0n) * chi * (z * c3 - 1.0)
    gdot = 1.0 - chi * chi * c2 / rn
    v = fdot * r0 + gdot * v0
    return r, v
