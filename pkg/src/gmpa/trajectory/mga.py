"""Multi-gravity-assist delta-v objective over launch epoch and leg durations.

The decision vector is [t0, T1, ..., T_(N-1)] for an N-body sequence: launch
epoch plus per-leg durations, all in the problem's time unit (days for real
ephemerides). Each leg is a single-rev Lambert arc; intermediate encounters
are powered swingbys patched at a common pericenter radius; the final body
charges the capture-orbit insertion burn. The total is the sum of the launch
hyperbolic excess, all swingby burns (plus any infeasible-turn penalties),
and the insertion burn.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..core import Bounds, ObjectiveProblem
from .bodies import BodyModel, ephemeris_state, load_ephemeris, packaged_ephemeris_path
from .lambert import LambertConvergenceError, LambertGeometryError, lambert

__all__ = [
    "MgaProblem",
    "powered_swingby_dv",
    "insertion_dv",
    "mga_objective",
    "mga_breakdown",
    "as_objective_problem",
    "load_mga_problem",
    "packaged_problem_path",
]


def powered_swingby_dv(
    vinf_in: np.ndarray,
    vinf_out: np.ndarray,
    body: BodyModel,
    turn_penalty: float = 10.0,
    rp_cap_factor: float = 1e6,
    tol: float = 1e-12,
) -> tuple[float, float]:
    """Impulse (km/s) and pericenter radius (km) patching two excess velocities.

    The incoming and outgoing hyperbolae share a pericenter radius r_p at
    which their half-turn angles asin(mu/(mu + r_p*v^2)) sum to the required
    turn between the excess vectors; the burn is the pericenter speed gap.
    The turn equation is solved by Newton inside a bisection bracket on
    [r_p_min, r_p_cap]. Turns beyond what r_p_min allows pin r_p there and
    add turn_penalty km/s per radian of missing turn; turns smaller than the
    cap provides pin r_p at the cap (the near-straight flyby limit).
    """
    vinf_in = np.asarray(vinf_in, dtype=float)
    vinf_out = np.asarray(vinf_out, dtype=float)
    vin = float(np.linalg.norm(vinf_in))
    vout = float(np.linalg.norm(vinf_out))
    if vin == 0.0 or vout == 0.0:
        raise ValueError("excess velocities must be nonzero")
    mu = body.mu_km3_s2
    rp_min = body.rp_min_km
    rp_cap = rp_cap_factor * rp_min

    cross = float(np.linalg.norm(np.cross(vinf_in, vinf_out)))
    dot = float(np.dot(vinf_in, vinf_out))
    alpha = math.atan2(cross, dot)  # required turn in [0, pi]

    def half_turn(rp: float, v: float) -> float:
        return math.asin(mu / (mu + rp * v * v))

    def turn_gap(rp: float) -> float:
        return half_turn(rp, vin) + half_turn(rp, vout) - alpha

    def burn(rp: float) -> float:
        return abs(
            math.sqrt(vout * vout + 2.0 * mu / rp) - math.sqrt(vin * vin + 2.0 * mu / rp)
        )

    max_turn = half_turn(rp_min, vin) + half_turn(rp_min, vout)
    if alpha > max_turn:
        return burn(rp_min) + turn_penalty * (alpha - max_turn), rp_min
    if turn_gap(rp_cap) > 0.0:
        return burn(rp_cap), rp_cap

    lo, hi = rp_min, rp_cap  # turn_gap(lo) >= 0 >= turn_gap(hi)
    rp = math.sqrt(lo * hi)
    for _ in range(200):
        gap = turn_gap(rp)
        if abs(gap) < tol:
            break
        if gap > 0.0:
            lo = rp
        else:
            hi = rp
        slope = _turn_gap_slope(rp, vin, vout, mu)
        candidate = rp - gap / slope if slope != 0.0 else 0.5 * (lo + hi)
        if not lo < candidate < hi:
            candidate = 0.5 * (lo + hi)
        if candidate == rp:
            break
        rp = candidate
    return burn(rp), rp


def _turn_gap_slope(rp: float, vin: float, vout: float, mu: float) -> float:
    total = 0.0
    for v in (vin, vout):
        s = mu / (mu + rp * v * v)
        ds = -mu * v * v / (mu + rp * v * v) ** 2
        total += ds / math.sqrt(max(1.0 - s * s, 1e-300))
    return total


def insertion_dv(vinf: float, rp: float, e_target: float, mu: float) -> float:
    """Burn to drop from a hyperbolic approach into the capture orbit.

    Pericenter speed of the approach minus pericenter speed of an orbit with
    the given pericenter radius and eccentricity (e_target = 1 keeps a
    parabola, costing nothing for a parabolic approach).
    """
    if vinf < 0 or rp <= 0 or mu <= 0:
        raise ValueError("inputs must be positive (vinf may be zero)")
    if not 0.0 <= e_target <= 1.0:
        raise ValueError("target eccentricity must be in [0, 1]")
    return math.sqrt(vinf * vinf + 2.0 * mu / rp) - math.sqrt(mu / rp * (1.0 + e_target))


@dataclass(frozen=True)
class MgaProblem:
    """A body sequence plus physical constants defining a delta-v objective."""

    name: str
    mu_sun: float
    bodies: tuple[BodyModel, ...]
    capture_rp_km: float
    capture_e: float
    t0_window: tuple[float, float]
    leg_windows: tuple[tuple[float, float], ...]
    penalty_value: float = 1e6
    turn_penalty: float = 10.0
    rp_cap_factor: float = 1e6
    time_scale_s: float = 86400.0  # seconds per decision-time unit

    def __post_init__(self):
        if len(self.bodies) < 2:
            raise ValueError("sequence needs at least departure and arrival bodies")
        if len(self.leg_windows) != len(self.bodies) - 1:
            raise ValueError("need one leg window per consecutive body pair")
        for lo, hi in (self.t0_window, *self.leg_windows):
            if not lo < hi:
                raise ValueError("every window must have lo < hi")
        for lo, hi in self.leg_windows:
            if lo <= 0:
                raise ValueError("leg durations must be positive")
        if self.capture_rp_km <= 0 or not 0.0 <= self.capture_e <= 1.0:
            raise ValueError("invalid capture orbit")

    @property
    def dimension(self) -> int:
        return len(self.bodies)

    @property
    def bounds(self) -> Bounds:
        lows = [self.t0_window[0]] + [w[0] for w in self.leg_windows]
        highs = [self.t0_window[1]] + [w[1] for w in self.leg_windows]
        return Bounds(np.array(lows, dtype=float), np.array(highs, dtype=float))


def _check_in_bounds(prob: MgaProblem, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    b = prob.bounds
    if x.shape != (prob.dimension,):
        raise ValueError(f"decision vector must have {prob.dimension} entries")
    if np.any(x < b.lower) or np.any(x > b.upper):
        raise ValueError("decision vector outside the problem windows")
    return x


def mga_breakdown(prob: MgaProblem, x: np.ndarray) -> dict:
    """Per-leg and per-encounter decomposition of the total delta-v.

    Returns a dict with encounter epochs, per-leg Lambert velocities, the
    launch excess, per-flyby (dv, r_p), the insertion dv and the total.
    Degenerate or unconverged legs yield {'feasible': False, 'total':
    penalty_value} instead.
    """
    x = _check_in_bounds(prob, x)
    epochs = np.concatenate([[x[0]], x[0] + np.cumsum(x[1:])])
    states = [ephemeris_state(b, float(t), prob.mu_sun) for b, t in zip(prob.bodies, epochs)]

    legs = []
    try:
        for i in range(len(prob.bodies) - 1):
            tof_s = float(x[i + 1]) * prob.time_scale_s
            v1, v2 = lambert(states[i].r, states[i + 1].r, tof_s, prob.mu_sun)
            legs.append((v1, v2))
    except (LambertGeometryError, LambertConvergenceError) as exc:
        return {"feasible": False, "reason": str(exc), "total": prob.penalty_value}

    launch_vinf = legs[0][0] - states[0].v
    launch_dv = float(np.linalg.norm(launch_vinf))

    flybys = []
    for i in range(1, len(prob.bodies) - 1):
        vinf_in = legs[i - 1][1] - states[i].v
        vinf_out = legs[i][0] - states[i].v
        dv, rp = powered_swingby_dv(
            vinf_in, vinf_out, prob.bodies[i],
            turn_penalty=prob.turn_penalty, rp_cap_factor=prob.rp_cap_factor,
        )
        flybys.append({"body": prob.bodies[i].name, "dv": dv, "rp_km": rp})

    arrival_vinf = float(np.linalg.norm(legs[-1][1] - states[-1].v))
    capture_dv = insertion_dv(
        arrival_vinf, prob.capture_rp_km, prob.capture_e, prob.bodies[-1].mu_km3_s2
    )

    total = launch_dv + sum(f["dv"] for f in flybys) + capture_dv
    return {
        "feasible": True,
        "epochs": epochs.tolist(),
        "legs": [{"v1": v1.tolist(), "v2": v2.tolist()} for v1, v2 in legs],
        "launch_dv": launch_dv,
        "flybys": flybys,
        "arrival_vinf": arrival_vinf,
        "insertion_dv": capture_dv,
        "total": total,
    }


def mga_objective(prob: MgaProblem, x: np.ndarray) -> float:
    """Total mission delta-v in km/s (penalty_value on degenerate geometry)."""
    return float(mga_breakdown(prob, x)["total"])


def as_objective_problem(prob: MgaProblem) -> ObjectiveProblem:
    return ObjectiveProblem(
        name=prob.name,
        dimension=prob.dimension,
        bounds=prob.bounds,
        evaluate=lambda x, _p=prob: mga_objective(_p, x),
    )


def packaged_problem_path() -> Path:
    return Path(__file__).parent.parent / "data" / "cassini_like.json"


def load_mga_problem(path: str | Path) -> MgaProblem:
    """Read a JSON problem file (sequence, windows, capture orbit, penalty).

    The optional "ephemeris" key names a body file relative to the problem
    file; when absent the packaged planetary elements are used.
    """
    path = Path(path)
    cfg = json.loads(path.read_text())
    eph = cfg.get("ephemeris")
    eph_path = (path.parent / eph) if eph else packaged_ephemeris_path()
    bodies_by_name = load_ephemeris(eph_path)
    try:
        sequence = [str(b).lower() for b in cfg["sequence"]]
        missing = [b for b in sequence if b not in bodies_by_name]
        if missing:
            raise ValueError(f"bodies not in ephemeris file: {missing}")
        return MgaProblem(
            name=str(cfg.get("name", path.stem)),
            mu_sun=float(cfg["mu_sun_km3_s2"]),
            bodies=tuple(bodies_by_name[b] for b in sequence),
            capture_rp_km=float(cfg["capture_rp_km"]),
            capture_e=float(cfg["capture_e"]),
            t0_window=tuple(float(v) for v in cfg["t0_window_days"]),
            leg_windows=tuple(
                (float(lo), float(hi)) for lo, hi in cfg["leg_windows_days"]
            ),
            penalty_value=float(cfg.get("penalty_value", 1e6)),
            turn_penalty=float(cfg.get("turn_penalty_km_s_per_rad", 10.0)),
            rp_cap_factor=float(cfg.get("rp_cap_factor", 1e6)),
            time_scale_s=float(cfg.get("time_scale_s", 86400.0)),
        )
    except KeyError as exc:
        raise ValueError(f"problem file {path} missing key {exc}") from exc
