"""Planar rotation reconstruction: momentum term plus twice the swept area.

The rotation of body 1 (or of the separation vector of bodies 2 and 3) over
a motion equals the time integral of J/I plus twice the signed spherical
area swept by the projected shape curve about the chart pole C1 (or O1).
The swept area is a line integral, so no disk ever has to be meshed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.integrate import simpson
from scipy.interpolate import CubicSpline

from .angles import wrap_angle, unwrap_held
from .shape_core import (
    C1_DIRECTION,
    O1_DIRECTION,
    MassTriple,
    PlanarConfiguration,
    chart_angles,
    jacobi,
    jacobi_series,
    normalize_shape,
    positions_from_jacobi_series,
    shape_map,
    shape_series,
)
from .trajectory import Trajectory

__all__ = [
    "ShapeCurve",
    "ReconstructionReport",
    "shape_curve",
    "swept_area",
    "dynamic_term",
    "reconstruct_q1",
    "reconstruct_Z1",
    "zero_J_lift",
    "oracle_rotation",
    "planar_series",
]

# Distance on the radius-1/2 sphere below which a sample counts as sitting
# on the chart axis (either pole), where longitude is undefined.
POLE_PROXIMITY_TOL = 1e-9

# Endpoint vectors must clear the origin by this relative margin.
ENDPOINT_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class ShapeCurve:
    """Time-stamped curve on the radius-1/2 shape sphere.

    points is (n, 3) with |point| = 1/2; unwound_xi is the continuously
    unwound meridian longitude, held constant across samples where it is
    undefined; pole_crossings lists (index, "C1" | "O1") for samples within
    POLE_PROXIMITY_TOL of either end of the chart axis.
    """

    times: np.ndarray
    points: np.ndarray
    unwound_xi: np.ndarray
    pole_crossings: list

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        w = np.asarray(self.points, dtype=float)
        xi = np.asarray(self.unwound_xi, dtype=float)
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "points", w)
        object.__setattr__(self, "unwound_xi", xi)
        if t.ndim != 1 or t.size == 0 or not np.all(np.isfinite(t)):
            raise ValueError("times must be a nonempty finite 1-d array")
        if t.size > 1 and np.any(np.diff(t) <= 0.0):
            raise ValueError("times must be strictly increasing")
        if w.shape != (t.size, 3) or xi.shape != t.shape:
            raise ValueError("points must be (n, 3) and unwound_xi (n,)")
        radii = np.linalg.norm(w, axis=1)
        if np.any(np.abs(radii - 0.5) > 1e-10):
            raise ValueError("curve points must lie on the radius-1/2 sphere")
        defined = np.hypot(w[:, 1], w[:, 2]) > POLE_PROXIMITY_TOL
        steps = np.abs(np.diff(xi))
        interior = defined[1:] & defined[:-1]
        if np.any(steps[interior] >= 0.5 * np.pi):
            raise ValueError(
                "longitude turns by pi/2 or more between samples: "
                "resample the motion more densely"
            )
        mismatch = np.abs(wrap_angle(xi - np.arctan2(w[:, 2], w[:, 1])))
        if np.any(mismatch[defined] > 1e-9):
            raise ValueError("unwound_xi disagrees with the longitude of points")

    @classmethod
    def from_points(cls, times, points) -> "ShapeCurve":
        """Build a curve from normalized points, unwinding the longitude."""
        w = np.asarray(points, dtype=float)
        defined = np.hypot(w[:, 1], w[:, 2]) > POLE_PROXIMITY_TOL
        xi = unwrap_held(np.arctan2(w[:, 2], w[:, 1]), defined)
        crossings = [
            (int(k), "C1" if w[k, 0] < 0.0 else "O1")
            for k in np.flatnonzero(~defined)
        ]
        return cls(np.asarray(times, dtype=float), w, xi, crossings)

    @property
    def n_samples(self) -> int:
        return self.times.size


@dataclass(frozen=True)
class ReconstructionReport:
    """Outcome of a rotation reconstruction.

    total = dynamic_term + geometric_term by construction and total_mod_2pi
    is its representative in (-pi, pi].  With pole_crossed set, the raw
    total is only meaningful modulo 2 pi.  certified and bad_set_measure are
    populated by the spatial reconstruction only.
    """

    dynamic_term: float
    geometric_term: float
    total: float
    total_mod_2pi: float
    oracle: Optional[float]
    pole_crossed: bool
    samples: int
    certified: Optional[bool] = None
    bad_set_measure: Optional[float] = None

    def to_dict(self) -> dict:
        out = {
            "dynamic_term": self.dynamic_term,
            "geometric_term": self.geometric_term,
            "total": self.total,
            "total_mod_2pi": self.total_mod_2pi,
            "oracle": self.oracle,
            "pole_crossed": self.pole_crossed,
            "samples": self.samples,
        }
        if self.certified is not None:
            out["certified"] = self.certified
            out["bad_set_measure"] = self.bad_set_measure
        return out


def _report(dyn, geo, oracle, crossed, samples, certified=None, bad=None) -> ReconstructionReport:
    total = dyn + geo
    return ReconstructionReport(
        float(dyn),
        float(geo),
        float(total),
        wrap_angle(total),
        None if oracle is None else float(oracle),
        bool(crossed),
        int(samples),
        certified,
        bad,
    )


def planar_series(traj: Trajectory):
    """Per-sample Jacobi pairs, moment of inertia and angular momentum.

    Returns (Z1, Z2, I, J); requires velocities (finite-differenced if
    absent by the caller).
    """
    if traj.dim != 2:
        raise ValueError("planar series require a planar trajectory")
    if traj.velocities is None:
        raise ValueError("velocities are required; call ensure_velocities first")
    Z1, Z2 = jacobi_series(traj.positions, traj.masses)
    dZ1, dZ2 = jacobi_series(traj.velocities, traj.masses)
    inertia = np.abs(Z1) ** 2 + np.abs(Z2) ** 2
    momentum = (np.conj(Z1) * dZ1 + np.conj(Z2) * dZ2).imag
    return Z1, Z2, inertia, momentum


def shape_curve(traj: Trajectory) -> ShapeCurve:
    """Project a planar trajectory to its normalized shape curve."""
    Z1, Z2 = jacobi_series(traj.positions, traj.masses)
    w = shape_series(Z1, Z2)
    if np.any(w[:, 3] <= 0.0):
        raise ValueError("trajectory passes through triple collision")
    points = 0.5 * w[:, :3] / w[:, 3:4]
    return ShapeCurve.from_points(traj.times, points)


def _pole_frame(pole):
    p = np.asarray(pole, dtype=float)
    norm = np.linalg.norm(p)
    if norm == 0.0:
        raise ValueError("pole must be a nonzero direction")
    p = p / norm
    seed = np.zeros(3)
    seed[np.argmin(np.abs(p))] = 1.0
    u = seed - (seed @ p) * p
    u /= np.linalg.norm(u)
    # left-handed frame about the pole: u x v = -p, which makes the swept
    # area positive exactly when it adds to the tracked rotation angle
    v = -np.cross(p, u)
    return p, u, v


def _swept_area_flagged(curve: ShapeCurve, pole) -> tuple[float, bool]:
    p, u, v = _pole_frame(pole)
    w = curve.points
    x = w @ u
    y = w @ v
    defined = np.hypot(x, y) > POLE_PROXIMITY_TOL
    psi = unwrap_held(np.arctan2(y, x), defined)
    g = 0.25 - 0.5 * (w @ p)
    d = np.diff(psi)
    crossed = bool(np.any(~defined)) or bool(np.any(np.abs(d) >= 0.5 * np.pi))
    area = float(np.sum(0.5 * (g[1:] + g[:-1]) * d))
    return area, crossed


def swept_area(curve: ShapeCurve, pole) -> float:
    """Signed area swept about a pole axis along the curve.

    Line integral of rho^2 (1 - cos phi) d psi with colatitude phi from the
    pole and longitude psi about the pole axis, measured in a fixed frame
    (u, v) with u x v = -(pole direction) and continuously unwound.  Arcs of
    pole meridians sweep nothing, so closing the curve onto the pole leaves
    the value unchanged; at axis crossings the continuation keeps the last
    branch and the result is defined modulo the half-sphere area.  For pole
    C1 this evaluates to the integral of r1^2 dxi / 2 on unit-inertia data.
    """
    area, _ = _swept_area_flagged(curve, pole)
    return area


def _quadrature(t: np.ndarray, y: np.ndarray) -> float:
    """Simpson on uniform grids, trapezoid otherwise."""
    if t.size < 2:
        return 0.0
    dt = np.diff(t)
    if t.size >= 3 and np.max(np.abs(dt - dt[0])) <= 1e-9 * abs(dt[0]):
        return float(simpson(y, x=t))
    return float(np.trapezoid(y, t))


def dynamic_term(traj: Trajectory) -> float:
    """Time integral of J/I over the motion."""
    traj = traj.ensure_velocities()
    _, _, inertia, momentum = planar_series(traj)
    if np.any(inertia <= 0.0):
        raise ValueError("triple collision: the moment of inertia vanishes")
    return _quadrature(traj.times, momentum / inertia)


def oracle_rotation(traj: Trajectory, target: str) -> float:
    """Directly unwound polar-angle change of q1 or of Z1 = q3 - q2.

    Independent of the reconstruction machinery: arctangents plus
    continuity, nothing else.  Per-step turns must stay below pi/2,
    otherwise the sampling cannot be unwound unambiguously.
    """
    if target == "q1":
        vec = traj.positions[:, 0, :2]
    elif target == "Z1":
        vec = traj.positions[:, 2, :2] - traj.positions[:, 1, :2]
    else:
        raise ValueError("target must be 'q1' or 'Z1'")
    norms = np.hypot(vec[:, 0], vec[:, 1])
    defined = norms > 1e-12 * max(float(np.max(norms)), 1e-300)
    raw = np.arctan2(vec[:, 1], vec[:, 0])
    angles = unwrap_held(raw, defined)
    steps = np.abs(np.diff(angles))
    interior = defined[1:] & defined[:-1]
    if np.any(steps[interior] >= 0.5 * np.pi):
        raise ValueError(
            f"{target} turns by pi/2 or more between samples: resample more densely"
        )
    return float(angles[-1] - angles[0])


def _reconstruct(traj: Trajectory, pole, target: str, include_oracle: bool) -> ReconstructionReport:
    traj = traj.ensure_velocities()
    _, _, inertia, momentum = planar_series(traj)
    if np.any(inertia <= 0.0):
        raise ValueError("triple collision: the moment of inertia vanishes")
    if target == "q1":
        end_vecs = traj.positions[[0, -1], 0, :2]
    else:
        end_vecs = traj.positions[[0, -1], 2, :2] - traj.positions[[0, -1], 1, :2]
    scale = np.sqrt(inertia[[0, -1]])
    if np.any(np.linalg.norm(end_vecs, axis=1) <= ENDPOINT_TOL * scale):
        raise ValueError(
            f"{target} is at the origin at an endpoint; the rotation angle is undefined"
        )
    curve = shape_curve(traj)
    dyn = _quadrature(traj.times, momentum / inertia)
    area, crossed = _swept_area_flagged(curve, pole)
    oracle = oracle_rotation(traj, target) if include_oracle else None
    return _report(dyn, 2.0 * area, oracle, crossed, traj.n_samples)


def reconstruct_q1(traj: Trajectory, include_oracle: bool = False) -> ReconstructionReport:
    """Rotation angle of body 1 over the motion.

    Momentum term plus twice the area swept about C1 by the shape curve.
    Endpoints with body 1 at the origin are rejected; passages of the curve
    through the chart axis flag the report as modulo-2pi only.
    """
    return _reconstruct(traj, C1_DIRECTION, "q1", include_oracle)


def reconstruct_Z1(traj: Trajectory, include_oracle: bool = False) -> ReconstructionReport:
    """Rotation angle of the separation q3 - q2 over the motion.

    Same as reconstruct_q1 with the swept area taken about O1.
    """
    return _reconstruct(traj, O1_DIRECTION, "Z1", include_oracle)


def zero_J_lift(curve: ShapeCurve, initial: PlanarConfiguration, masses: MassTriple) -> Trajectory:
    """The unique zero-angular-momentum motion over a shape curve.

    On unit-inertia data the chart angles obey d(xi1) = -r2^2 d(xi) and
    d(xi2) = +r1^2 d(xi); the second is integrated with classical
    fourth-order steps on spline-interpolated curve data and the first is
    maintained exactly through xi2 - xi1 = xi, so the handoff between the
    two charts is exact wherever either is valid.  The lift keeps the
    moment of inertia of the initial configuration.
    """
    pair0 = jacobi(initial, masses)
    point0 = shape_map(pair0)
    start = normalize_shape(point0).vec()
    if np.linalg.norm(start - curve.points[0]) > 1e-8:
        raise ValueError("initial configuration does not project to the curve start")
    inertia0 = 2.0 * point0.w4

    t = curve.times
    r1sq = 0.5 + curve.points[:, 0]
    r2sq = 0.5 - curve.points[:, 0]
    xi = curve.unwound_xi

    if t.size >= 4:
        spline_r1 = CubicSpline(t, r1sq)
        spline_xi = CubicSpline(t, xi)
        xi_rate = spline_xi.derivative()

        def integrand(tt):
            return spline_r1(tt) * xi_rate(tt)

        mid = 0.5 * (t[:-1] + t[1:])
        incr = (np.diff(t) / 6.0) * (
            integrand(t[:-1]) + 4.0 * integrand(mid) + integrand(t[1:])
        )
        dxi_dt = xi_rate(t)
    else:
        incr = 0.5 * (r1sq[:-1] + r1sq[1:]) * np.diff(xi)
        dxi_dt = np.gradient(xi, t) if t.size > 1 else np.zeros_like(xi)
    accumulated = np.concatenate([[0.0], np.cumsum(incr)])

    angles0 = chart_angles(pair0)
    if angles0.defined2:
        xi2 = angles0.xi2 + accumulated
        xi1 = xi2 - xi
    elif angles0.defined1:
        xi1 = angles0.xi1 + accumulated - (xi - xi[0])
        xi2 = xi1 + xi
    else:
        raise ValueError("initial configuration is at triple collision")

    scale = np.sqrt(inertia0)
    r1 = scale * np.sqrt(np.clip(r1sq, 0.0, None))
    r2 = scale * np.sqrt(np.clip(r2sq, 0.0, None))
    Z1 = r1 * np.exp(1j * xi1)
    Z2 = r2 * np.exp(1j * xi2)
    positions = positions_from_jacobi_series(Z1, Z2, masses)

    # radial rates from d(r^2)/dt = +-d(w1)/dt; angle rates from the lift law
    if t.size >= 4:
        dr1sq = spline_r1.derivative()(t)
    else:
        dr1sq = np.gradient(r1sq, t) if t.size > 1 else np.zeros_like(r1sq)
    with np.errstate(divide="ignore", invalid="ignore"):
        dr1 = np.where(r1 > 0.0, scale * dr1sq / (2.0 * np.sqrt(np.clip(r1sq, 1e-300, None))), 0.0)
        dr2 = np.where(r2 > 0.0, scale * -dr1sq / (2.0 * np.sqrt(np.clip(r2sq, 1e-300, None))), 0.0)
    xi1_rate = -r2sq * dxi_dt
    xi2_rate = r1sq * dxi_dt
    dZ1 = (dr1 + 1j * r1 * xi1_rate) * np.exp(1j * xi1)
    dZ2 = (dr2 + 1j * r2 * xi2_rate) * np.exp(1j * xi2)
    velocities = positions_from_jacobi_series(dZ1, dZ2, masses)

    return Trajectory(masses, t, positions, velocities)
