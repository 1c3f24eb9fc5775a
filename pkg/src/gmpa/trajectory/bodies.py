"""Planetary ephemerides from linear-rate mean Keplerian elements."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .kepler import solve_kepler

__all__ = [
    "KeplerianElements",
    "BodyModel",
    "StateVector",
    "ephemeris_state",
    "load_ephemeris",
    "packaged_ephemeris_path",
]


@dataclass(frozen=True)
class KeplerianElements:
    """Mean heliocentric elements; the mean longitude advances linearly.

    Angles in radians, semi-major axis in km, rate in rad/day, epoch in
    days past J2000.
    """

    a_km: float
    e: float
    i_rad: float
    raan_rad: float
    lonperi_rad: float
    L0_rad: float
    L_rate_rad_per_day: float
    epoch_days: float = 0.0

    def __post_init__(self):
        if self.a_km <= 0:
            raise ValueError("semi-major axis must be positive")
        if not 0.0 <= self.e < 1.0:
            raise ValueError("eccentricity must be in [0, 1)")


@dataclass(frozen=True)
class BodyModel:
    name: str
    elements: KeplerianElements
    mu_km3_s2: float
    rp_min_km: float

    def __post_init__(self):
        if self.mu_km3_s2 <= 0:
            raise ValueError("gravitational parameter must be positive")
        if self.rp_min_km <= 0:
            raise ValueError("minimum flyby radius must be positive")


@dataclass(frozen=True)
class StateVector:
    """Heliocentric position (km) and velocity (km/s)."""

    r: np.ndarray
    v: np.ndarray


def ephemeris_state(body: BodyModel, t_days: float, mu_sun: float) -> StateVector:
    """Heliocentric ecliptic state of a body at t (days past J2000).

    Propagates the mean longitude linearly, solves Kepler's equation, builds
    the perifocal state and rotates it through (raan, inclination, argument
    of perihelion = lonperi - raan).
    """
    el = body.elements
    mean_longitude = el.L0_rad + el.L_rate_rad_per_day * (t_days - el.epoch_days)
    mean_anomaly = math.remainder(mean_longitude - el.lonperi_rad, 2.0 * math.pi)
    ecc_anom = solve_kepler(mean_anomaly, el.e)

    a, e = el.a_km, el.e
    cos_e, sin_e = math.cos(ecc_anom), math.sin(ecc_anom)
    b_over_a = math.sqrt(1.0 - e * e)
    r_mag = a * (1.0 - e * cos_e)
    r_pf = np.array([a * (cos_e - e), a * b_over_a * sin_e, 0.0])
    v_scale = math.sqrt(mu_sun * a) / r_mag
    v_pf = np.array([-v_scale * sin_e, v_scale * b_over_a * cos_e, 0.0])

    argp = el.lonperi_rad - el.raan_rad
    rot = _rot_z(el.raan_rad) @ _rot_x(el.i_rad) @ _rot_z(argp)
    return StateVector(r=rot @ r_pf, v=rot @ v_pf)


def _rot_z(angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def _rot_x(angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])


def packaged_ephemeris_path() -> Path:
    return Path(__file__).parent.parent / "data" / "planets.json"


def load_ephemeris(path: str | Path) -> dict[str, BodyModel]:
    """Read a JSON list of body records into models keyed by lowercase name.

    Each record carries: name, a_km, e, i_deg, raan_deg, lonperi_deg,
    L0_deg, L_rate_deg_per_day, epoch_jd2000_days, mu_km3_s2, rp_min_km.
    """
    path = Path(path)
    records = json.loads(path.read_text())
    if not isinstance(records, list):
        raise ValueError(f"ephemeris file {path} must contain a JSON list")
    bodies: dict[str, BodyModel] = {}
    rad = math.pi / 180.0
    for rec in records:
        try:
            el = KeplerianElements(
                a_km=float(rec["a_km"]),
                e=float(rec["e"]),
                i_rad=float(rec["i_deg"]) * rad,
                raan_rad=float(rec["raan_deg"]) * rad,
                lonperi_rad=float(rec["lonperi_deg"]) * rad,
                L0_rad=float(rec["L0_deg"]) * rad,
                L_rate_rad_per_day=float(rec["L_rate_deg_per_day"]) * rad,
                epoch_days=float(rec.get("epoch_jd2000_days", 0.0)),
            )
            body = BodyModel(
                name=str(rec["name"]),
                elements=el,
                mu_km3_s2=float(rec["mu_km3_s2"]),
                rp_min_km=float(rec["rp_min_km"]),
            )
        except KeyError as exc:
            raise ValueError(f"ephemeris record {rec.get('name', '?')!r} missing key {exc}") from exc
        bodies[body.name.lower()] = body
    return bodies
