"""Spatial rotation reconstruction through the locked inertia map.

A spatial motion with a smooth normal field projects to the reference plane
X orthogonal to a unit vector e by transporting the normal to e along the
minimizing geodesic.  The rotation angle of the projected first body is the
time integral of F(J) plus twice the area swept about C1 by the projected
shape curve, where F(J) collects the e and n components of sigma^{-1}(J)
and sigma is the configuration's inertia map.  The formula loses validity
on the set of collinear, spinning samples whose axis is not orthogonal to
e; its dwell time is measured and reported, and any positive value leaves
the result uncertified.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .planar import (
    ReconstructionReport,
    _quadrature,
    _report,
    _swept_area_flagged,
    oracle_rotation,
    shape_curve,
)
from .shape_core import (
    C1_DIRECTION,
    MassTriple,
    PlanarConfiguration,
    SpatialConfiguration,
)
from .trajectory import Trajectory

__all__ = [
    "SigmaTensor",
    "OrientedState",
    "sigma_tensor",
    "sigma_inverse",
    "decompose_e_n",
    "F_of_J",
    "plane_basis",
    "project_P",
    "oriented_state",
    "normal_track",
    "bad_set_measure",
    "reconstruct_spatial",
    "velocity_decompose",
]

# Smallest sigma eigenvalue below this fraction of the trace marks the
# configuration collinear (sigma has a kernel there).
COLLINEAR_EIG_TOL = 1e-8

# |e x n| below this uses the aligned branch of the decomposition.
ALIGNMENT_TOL = 1e-10

# |n + e| below this marks an antipodal crossing of the normal.
ANTIPODAL_TOL = 1e-6

# Condition estimate beyond which sigma_inverse warns about amplification.
CONDITION_WARN = 1e8

_BAD_SET_J_TOL = 1e-12
_BAD_SET_AXIS_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class SigmaTensor:
    """Locked inertia map sending angular-velocity vectors to angular momentum.

    matrix is sum_i m_i (|q_i|^2 Id - q_i q_i^T), symmetric positive
    semidefinite with trace 2I; it is singular exactly at collinear
    configurations, where axis carries the kernel direction.
    """

    matrix: np.ndarray
    smallest_eigenvalue: float
    axis: Optional[np.ndarray]

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix))

    @property
    def is_collinear(self) -> bool:
        return self.smallest_eigenvalue < COLLINEAR_EIG_TOL * self.trace


def _sigma_matrix_series(q: np.ndarray, m: np.ndarray) -> np.ndarray:
    norms = np.einsum("nid,nid->ni", q, q)
    iso = np.einsum("i,ni->n", m, norms)[:, None, None] * np.eye(3)
    outer = np.einsum("i,nia,nib->nab", m, q, q)
    return iso - outer


def sigma_tensor(config: SpatialConfiguration, masses: MassTriple) -> SigmaTensor:
    """Inertia map of a configuration about the origin."""
    q = config.as_array()[None, :, :]
    mat = _sigma_matrix_series(q, masses.as_array())[0]
    eigenvalues, eigenvectors = np.linalg.eigh(mat)
    smallest = float(eigenvalues[0])
    axis = None
    if smallest < COLLINEAR_EIG_TOL * float(np.trace(mat)):
        axis = eigenvectors[:, 0].copy()
    return SigmaTensor(mat, smallest, axis)


def sigma_inverse(tensor: SigmaTensor, Jvec, inertia: float) -> np.ndarray:
    """Angular-velocity vector whose angular momentum under sigma is Jvec.

    Collinear configurations use the Jvec/I convention since the literal
    inverse does not exist there; near-collinear solves with an estimated
    condition number beyond 1e8 warn that a tiny momentum implies a huge
    rate.
    """
    J = np.asarray(Jvec, dtype=float)
    if not np.all(np.isfinite(J)):
        raise ValueError("angular momentum must be finite")
    tr = tensor.trace
    condition = tr / max(tensor.smallest_eigenvalue, 1e-300)
    # warn when the map is badly conditioned but not merely singular to
    # roundoff: there a tiny momentum implies a huge rate and the outcome
    # depends on the collinear convention
    if condition > CONDITION_WARN and tensor.smallest_eigenvalue > 64.0 * np.finfo(float).eps * tr:
        warnings.warn(
            f"near-collinear configuration (condition estimate {condition:.2e}): "
            "the angular-velocity solve amplifies momentum errors",
            RuntimeWarning,
            stacklevel=2,
        )
    if tensor.is_collinear:
        return J / inertia
    return np.linalg.solve(tensor.matrix, J)


def decompose_e_n(w, e, n) -> tuple[float, float, float]:
    """Coefficients of w in the basis {e^n, e, n} (wedge unnormalized).

    Only the e and n coefficients feed the rotation-rate formula; the wedge
    component drives the tilt and is never consumed downstream, which is why
    normalizing e^n is unnecessary.
    """
    w = np.asarray(w, dtype=float)
    e = np.asarray(e, dtype=float)
    n = np.asarray(n, dtype=float)
    wedge = np.cross(e, n)
    if np.linalg.norm(wedge) < ALIGNMENT_TOL:
        raise ValueError("e and n are (anti)parallel: use the aligned branch instead")
    basis = np.column_stack([wedge, e, n])
    coeff = np.linalg.solve(basis, w)
    return float(coeff[0]), float(coeff[1]), float(coeff[2])


def plane_basis(e) -> tuple[np.ndarray, np.ndarray]:
    """Right-handed orthonormal basis (u1, u2) of the plane orthogonal to e."""
    e = np.asarray(e, dtype=float)
    e = e / np.linalg.norm(e)
    if abs(e[0]) < 1e-14 and abs(e[1]) < 1e-14 and e[2] > 0.0:
        return np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0])
    seed = np.zeros(3)
    seed[np.argmin(np.abs(e))] = 1.0
    u1 = seed - (seed @ e) * e
    u1 /= np.linalg.norm(u1)
    return u1, np.cross(e, u1)


def _project_positions(q: np.ndarray, normals: np.ndarray, e: np.ndarray) -> np.ndarray:
    """Rotate samples (n, 3, 3) so each normal lands on e; coordinates in X.

    The rotation is about the common perpendicular of n and e by the tilt
    angle; callers must exclude antipodal samples.
    """
    axis = np.cross(normals, e[None, :])
    sin_phi = np.linalg.norm(axis, axis=1)
    cos_phi = normals @ e
    safe = sin_phi > ALIGNMENT_TOL
    khat = np.where(safe[:, None], axis / np.maximum(sin_phi, 1e-300)[:, None], 0.0)
    proj = np.einsum("nd,nid->ni", khat, q)
    rotated = (
        q * cos_phi[:, None, None]
        + np.cross(np.broadcast_to(khat[:, None, :], q.shape), q) * sin_phi[:, None, None]
        + khat[:, None, :] * proj[:, :, None] * (1.0 - cos_phi)[:, None, None]
    )
    rotated = np.where(safe[:, None, None], rotated, q)
    u1, u2 = plane_basis(e)
    return np.stack([rotated @ u1, rotated @ u2], axis=-1)


def project_P(config: SpatialConfiguration, n, e) -> PlanarConfiguration:
    """Transport a spatial configuration into the plane X orthogonal to e.

    Moves the normal n to e along the minimizing geodesic of the unit
    sphere and reads coordinates in a fixed right-handed basis of X.  The
    antipodal case n = -e has no unique geodesic and is rejected.  The
    shape point is unchanged by the transport.
    """
    n = np.asarray(n, dtype=float)
    n = n / np.linalg.norm(n)
    e = np.asarray(e, dtype=float)
    e = e / np.linalg.norm(e)
    if np.linalg.norm(n + e) < ALIGNMENT_TOL:
        raise ValueError("n = -e: the transport to the plane is ambiguous")
    coords = _project_positions(config.as_array()[None, :, :], n[None, :], e)[0]
    return PlanarConfiguration(coords[0], coords[1], coords[2])


@dataclass(frozen=True, eq=False)
class OrientedState:
    """A spatial configuration with normal, reference axis, and tilt chart.

    phi_n in [0, pi] is the tilt of n from e; eta_n the longitude of n about
    e; theta1 the angle of body 1 about n, referenced so the projected first
    body sits at angle eta_n + theta1 in X whenever the tilt is interior.
    """

    config: SpatialConfiguration
    n: np.ndarray
    e: np.ndarray
    phi_n: float
    eta_n: float
    theta1: float


def oriented_state(config: SpatialConfiguration, n, e) -> OrientedState:
    """Build the tilt chart of a configuration; n must be normal to its plane."""
    n = np.asarray(n, dtype=float)
    n = n / np.linalg.norm(n)
    e = np.asarray(e, dtype=float)
    e = e / np.linalg.norm(e)
    q = config.as_array()
    for span in (q[1] - q[0], q[2] - q[0]):
        span_norm = np.linalg.norm(span)
        if span_norm > 0.0 and abs(span @ n) > 1e-10 * span_norm:
            raise ValueError("n is not orthogonal to the configuration plane")
    phi = float(np.arccos(np.clip(n @ e, -1.0, 1.0)))
    u1, u2 = plane_basis(e)
    axis = np.cross(n, e)
    axis_norm = np.linalg.norm(axis)
    if axis_norm < ALIGNMENT_TOL:
        eta = 0.0
        theta1 = float(np.arctan2(q[0] @ u2, q[0] @ u1))
    else:
        khat = axis / axis_norm
        eta = float(np.arctan2(n @ u2, n @ u1))
        d1 = np.cross(n, khat)
        d2 = -khat
        theta1 = float(np.arctan2(q[0] @ d2, q[0] @ d1))
    return OrientedState(config, n, e, phi, eta, theta1)


def F_of_J(state: OrientedState, Jvec, inertia: float, masses: MassTriple) -> float:
    """Rotation rate of the projected first body due to the rigid part.

    With w = sigma^{-1}(J) this is sigma_e + sigma_n of the {e^n, e, n}
    decomposition, evaluated through the exact identity
    (e.w + n.w) / (1 + e.n), which stays conditioned near n = e; at
    n = +-e only the rate about n contributes.
    """
    tensor = sigma_tensor(state.config, masses)
    w = sigma_inverse(tensor, Jvec, inertia)
    e, n = state.e, state.n
    if np.linalg.norm(np.cross(e, n)) < ALIGNMENT_TOL:
        return float(n @ w)
    return float((e @ w + n @ w) / (1.0 + e @ n))


def _slerp(a: np.ndarray, b: np.ndarray, fractions: np.ndarray) -> np.ndarray:
    cosang = float(np.clip(a @ b, -1.0, 1.0))
    angle = np.arccos(cosang)
    if angle > np.pi - 1e-6:
        raise ValueError("collinear gap too wide to bridge: flanking normals are antipodal")
    if angle < 1e-9:
        out = a[None, :] + fractions[:, None] * (b - a)[None, :]
    else:
        out = (
            np.sin((1.0 - fractions) * angle)[:, None] * a[None, :]
            + np.sin(fractions * angle)[:, None] * b[None, :]
        ) / np.sin(angle)
    return out / np.linalg.norm(out, axis=1, keepdims=True)


def normal_track(traj: Trajectory, e=None, initial_sign: Optional[int] = None) -> np.ndarray:
    """Smooth unit normals along a spatial trajectory.

    Triangle normals with the sign continued sample to sample (the branch
    maximizing the dot product with the previous normal); collinear
    stretches are bridged by spherical interpolation between the flanking
    triangular samples.  The first normal is flipped so n(0) . e >= 0 unless
    initial_sign overrides.
    """
    if traj.dim != 3:
        raise ValueError("normal_track expects a spatial trajectory")
    q = traj.positions
    raw = np.cross(q[:, 2] - q[:, 1], q[:, 0] - q[:, 1])
    norms = np.linalg.norm(raw, axis=1)
    scale = np.linalg.norm(q[:, 2] - q[:, 1], axis=1) * np.linalg.norm(q[:, 0] - q[:, 1], axis=1)
    triangular = norms > 1e-10 * np.maximum(scale, 1e-300)
    if not np.any(triangular):
        raise ValueError("all samples are collinear: the orientation is undefined")
    idx = np.flatnonzero(triangular)
    units = raw[idx] / norms[idx][:, None]
    if idx.size > 1:
        dots = np.einsum("kd,kd->k", units[1:], units[:-1])
        flips = np.concatenate([[1.0], np.cumprod(np.where(dots >= 0.0, 1.0, -1.0))])
        units *= flips[:, None]
    reference = np.array([0.0, 0.0, 1.0]) if e is None else np.asarray(e, dtype=float)
    if initial_sign is not None:
        units *= float(np.sign(initial_sign))
    elif units[0] @ reference < 0.0:
        units = -units

    out = np.empty((traj.n_samples, 3))
    out[idx] = units
    if idx.size < traj.n_samples:
        t = traj.times
        missing = np.flatnonzero(~triangular)
        runs = np.split(missing, np.flatnonzero(np.diff(missing) > 1) + 1)
        for run in runs:
            before = idx[idx < run[0]]
            after = idx[idx > run[-1]]
            if before.size == 0:
                out[run] = out[after[0]]
            elif after.size == 0:
                out[run] = out[before[-1]]
            else:
                a, b = before[-1], after[0]
                fractions = (t[run] - t[a]) / (t[b] - t[a])
                out[run] = _slerp(out[a], out[b], fractions)
    return out


def _momentum_vectors(traj: Trajectory) -> np.ndarray:
    m = traj.masses.as_array()
    return np.einsum("i,nid->nd", m, np.cross(traj.positions, traj.velocities))


def _inertia_series(traj: Trajectory) -> np.ndarray:
    m = traj.masses.as_array()
    return np.einsum("i,nid,nid->n", m, traj.positions, traj.positions)


def _dwell_weights(t: np.ndarray) -> np.ndarray:
    if t.size < 2:
        return np.zeros_like(t)
    w = np.empty_like(t)
    w[1:-1] = 0.5 * (t[2:] - t[:-2])
    w[0] = 0.5 * (t[1] - t[0])
    w[-1] = 0.5 * (t[-1] - t[-2])
    return w


def bad_set_measure(traj: Trajectory, e) -> tuple[float, list]:
    """Dwell time in the set where the spatial formula loses validity.

    Flags samples that are collinear (smallest sigma eigenvalue under
    1e-8 x trace) while carrying nonzero angular momentum with e not
    orthogonal to the configuration axis; returns the trapezoidal dwell
    time of flagged samples and the flagged time intervals.
    """
    traj = traj.ensure_velocities()
    if traj.dim != 3:
        raise ValueError("bad_set_measure expects a spatial trajectory")
    e = np.asarray(e, dtype=float)
    e = e / np.linalg.norm(e)
    mats = _sigma_matrix_series(traj.positions, traj.masses.as_array())
    eigenvalues, eigenvectors = np.linalg.eigh(mats)
    trace = eigenvalues.sum(axis=1)
    collinear = eigenvalues[:, 0] < COLLINEAR_EIG_TOL * trace
    axes = eigenvectors[:, :, 0]
    momentum = np.linalg.norm(_momentum_vectors(traj), axis=1)
    inertia = 0.5 * trace
    duration = max(traj.duration, 1e-300)
    momentous = momentum > _BAD_SET_J_TOL * inertia / duration
    tilted = np.abs(axes @ e) > _BAD_SET_AXIS_TOL
    flagged = collinear & momentous & tilted
    weights = _dwell_weights(traj.times)
    measure = float(np.sum(weights[flagged]))
    intervals = []
    if np.any(flagged):
        hits = np.flatnonzero(flagged)
        for run in np.split(hits, np.flatnonzero(np.diff(hits) > 1) + 1):
            intervals.append((float(traj.times[run[0]]), float(traj.times[run[-1]])))
    return measure, intervals


def _antipodal_runs(antipodal: np.ndarray) -> list:
    hits = np.flatnonzero(antipodal)
    if hits.size == 0:
        return []
    return [run for run in np.split(hits, np.flatnonzero(np.diff(hits) > 1) + 1)]


def reconstruct_spatial(
    traj: Trajectory,
    e=None,
    antipodal_branch: int = 1,
    include_oracle: bool = False,
) -> ReconstructionReport:
    """Rotation angle of the projected first body over a spatial motion.

    Integrates F(J) and adds twice the area swept about C1 by the shape
    curve of the projected motion.  e defaults to the direction of the
    initial angular momentum (or the third axis if that vanishes).  Supplied
    per-sample normals are used as-is; otherwise they are tracked from the
    triangle orientation.  Where the normal crosses -e the projected angle
    jumps by 2 pi; each crossing adds antipodal_branch * 2 pi to the
    dynamic term, the crossing samples are excised from the projection, and
    the report is marked modulo-2pi.  A positive bad-set dwell time leaves
    the result uncertified.
    """
    if traj.dim != 3:
        raise ValueError("reconstruct_spatial expects a spatial trajectory")
    if antipodal_branch not in (1, -1):
        raise ValueError("antipodal_branch must be +1 or -1")
    traj = traj.ensure_velocities()
    momentum_vec = _momentum_vectors(traj)
    if e is None:
        j0 = momentum_vec[0]
        e = j0 if np.linalg.norm(j0) > 0.0 else np.array([0.0, 0.0, 1.0])
    e = np.asarray(e, dtype=float)
    e = e / np.linalg.norm(e)
    normals = traj.normals if traj.normals is not None else normal_track(traj, e)

    inertia = _inertia_series(traj)
    if np.any(inertia <= 0.0):
        raise ValueError("triple collision: the moment of inertia vanishes")

    mats = _sigma_matrix_series(traj.positions, traj.masses.as_array())
    eigenvalues = np.linalg.eigvalsh(mats)
    collinear = eigenvalues[:, 0] < COLLINEAR_EIG_TOL * eigenvalues.sum(axis=1)
    w = np.empty((traj.n_samples, 3))
    if np.any(~collinear):
        w[~collinear] = np.linalg.solve(
            mats[~collinear], momentum_vec[~collinear][:, :, None]
        )[:, :, 0]
    if np.any(collinear):
        w[collinear] = momentum_vec[collinear] / inertia[collinear, None]

    dots = normals @ e
    aligned = np.linalg.norm(np.cross(normals, np.broadcast_to(e, normals.shape)), axis=1)
    aligned = aligned < ALIGNMENT_TOL
    ew = w @ e
    nw = np.einsum("nd,nd->n", normals, w)
    denom = np.where(aligned, 1.0, 1.0 + dots)
    rate = np.where(aligned, nw, (ew + nw) / denom)

    antipodal = np.linalg.norm(normals + e[None, :], axis=1) < ANTIPODAL_TOL
    runs = _antipodal_runs(antipodal)
    if runs and (antipodal[0] or antipodal[-1]):
        raise ValueError("normal is antipodal to e at an endpoint: the projection is undefined")
    for run in runs:
        before, after = run[0] - 1, run[-1] + 1
        if np.linalg.norm(normals[after] - normals[before]) < 1e-10:
            raise ValueError(
                "normal stalls at -e instead of crossing it: the projected motion "
                "cannot be continued"
            )
        # the rate carries an unresolved jump here; bridge it linearly and
        # account for the crossing through the branch convention below
        frac = (traj.times[run] - traj.times[before]) / (traj.times[after] - traj.times[before])
        rate[run] = rate[before] + frac * (rate[after] - rate[before])
    crossings = len(runs)

    dyn = _quadrature(traj.times, rate) + 2.0 * np.pi * antipodal_branch * crossings

    keep = ~antipodal
    projected = _project_positions(traj.positions[keep], normals[keep], e)
    planar_view = Trajectory(traj.masses, traj.times[keep], projected)
    curve = shape_curve(planar_view)
    area, pole_crossed = _swept_area_flagged(curve, C1_DIRECTION)
    oracle = oracle_rotation(planar_view, "q1") if include_oracle else None

    measure, _ = bad_set_measure(traj, e)
    return _report(
        dyn,
        2.0 * area,
        oracle,
        pole_crossed or crossings > 0,
        traj.n_samples,
        certified=bool(measure == 0.0),
        bad=float(measure),
    )


def velocity_decompose(config: SpatialConfiguration, velocity, masses: MassTriple):
    """Split body velocities into the rigid rotation part and the internal part.

    v_R,i = w x q_i with w = sigma^{-1}(J); the remainder v_I carries no
    linear momentum and, on triangular configurations, no angular momentum.
    Collinear configurations fall back to the J/I convention, with a
    warning, and then v_I may retain angular momentum.
    """
    v = np.asarray(velocity, dtype=float)
    if v.shape != (3, 3) or not np.all(np.isfinite(v)):
        raise ValueError("velocity must be a finite (3, 3) array, one row per body")
    q = config.as_array()
    m = masses.as_array()
    pnum = np.linalg.norm(m @ v)
    pden = float(np.sum(m * np.linalg.norm(v, axis=1)))
    if pnum > 1e-10 * max(pden, 1e-300):
        raise ValueError("velocity carries net linear momentum")
    momentum = np.einsum("i,id->d", m, np.cross(q, v))
    inertia = float(np.einsum("i,id,id->", m, q, q))
    tensor = sigma_tensor(config, masses)
    if tensor.is_collinear:
        warnings.warn(
            "collinear configuration: using the J/I convention, the internal part "
            "may retain angular momentum",
            RuntimeWarning,
            stacklevel=2,
        )
    w = sigma_inverse(tensor, momentum, inertia)
    v_rigid = np.cross(np.broadcast_to(w, (3, 3)), q)
    return v_rigid, v - v_rigid
