"""Trajectory container, file input/output, differencing, and motion generators."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.interpolate import CubicSpline

from .angles import TWO_PI
from .shape_core import (
    MassTriple,
    derive_masses,
    equilateral_configuration,
    positions_from_jacobi_series,
)

__all__ = [
    "Trajectory",
    "ParseError",
    "parse",
    "serialize",
    "finite_difference_velocities",
    "resample",
    "generate",
    "embed_planar",
    "apply_rotation_profile",
    "rotation_matrices",
]


class ParseError(ValueError):
    """Malformed trajectory file."""


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Sampled three-body motion.

    positions has shape (n, 3, dim) with dim 2 or 3; velocities (same shape)
    and per-sample unit normals (n, 3; spatial only) are optional.  Samples
    must be centered; build through `from_samples` to recenter raw data.
    max_center_shift records the largest recentering applied on ingest.
    """

    masses: MassTriple
    times: np.ndarray
    positions: np.ndarray
    velocities: Optional[np.ndarray] = None
    normals: Optional[np.ndarray] = None
    max_center_shift: float = 0.0

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        q = np.asarray(self.positions, dtype=float)
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "positions", q)
        if t.ndim != 1 or t.size == 0 or not np.all(np.isfinite(t)):
            raise ValueError("times must be a nonempty finite 1-d array")
        if t.size > 1 and np.any(np.diff(t) <= 0.0):
            raise ValueError("times must be strictly increasing")
        if q.ndim != 3 or q.shape[0] != t.size or q.shape[1] != 3 or q.shape[2] not in (2, 3):
            raise ValueError("positions must have shape (n, 3, 2) or (n, 3, 3)")
        if not np.all(np.isfinite(q)):
            raise ValueError("positions must be finite")
        m = self.masses.as_array()
        num = np.linalg.norm(np.einsum("i,nid->nd", m, q), axis=1)
        den = np.einsum("i,ni->n", m, np.linalg.norm(q, axis=2))
        if np.any(num > 1e-10 * np.maximum(den, 1e-300)):
            raise ValueError(
                "positions are not centered on the mass centroid; "
                "use Trajectory.from_samples to recenter"
            )
        if self.velocities is not None:
            v = np.asarray(self.velocities, dtype=float)
            object.__setattr__(self, "velocities", v)
            if v.shape != q.shape or not np.all(np.isfinite(v)):
                raise ValueError("velocities must match positions in shape and be finite")
            vnum = np.linalg.norm(np.einsum("i,nid->nd", m, v), axis=1)
            vden = np.einsum("i,ni->n", m, np.linalg.norm(v, axis=2))
            if np.any(vnum > 1e-10 * np.maximum(vden, 1e-300)):
                raise ValueError("velocities carry net linear momentum")
        if self.normals is not None:
            nrm = np.asarray(self.normals, dtype=float)
            object.__setattr__(self, "normals", nrm)
            if nrm.shape != (t.size, 3) or not np.all(np.isfinite(nrm)):
                raise ValueError("normals must have shape (n, 3) and be finite")
            if np.any(np.abs(np.linalg.norm(nrm, axis=1) - 1.0) > 1e-8):
                raise ValueError("normals must be unit vectors")

    @property
    def dim(self) -> int:
        return self.positions.shape[2]

    @property
    def n_samples(self) -> int:
        return self.times.size

    @property
    def duration(self) -> float:
        return float(self.times[-1] - self.times[0])

    @classmethod
    def from_samples(cls, masses, times, positions, velocities=None, normals=None):
        """Build a trajectory, recentering positions on the mass centroid and
        removing any net momentum drift from the velocities."""
        q = np.array(positions, dtype=float)
        m = masses.as_array()
        shift = np.einsum("i,nid->nd", m, q) / masses.M
        q -= shift[:, None, :]
        max_shift = float(np.max(np.linalg.norm(shift, axis=1), initial=0.0))
        v = None
        if velocities is not None:
            v = np.array(velocities, dtype=float)
            drift = np.einsum("i,nid->nd", m, v) / masses.M
            v -= drift[:, None, :]
            max_shift = max(max_shift, float(np.max(np.linalg.norm(drift, axis=1), initial=0.0)))
        return cls(masses, np.asarray(times, dtype=float), q, v, normals, max_shift)

    def ensure_velocities(self) -> "Trajectory":
        """Return self if velocities are present, else add finite differences."""
        if self.velocities is not None:
            return self
        return finite_difference_velocities(self)


def finite_difference_velocities(traj: Trajectory) -> Trajectory:
    """Differentiate positions with three-point stencils, exact on quadratics.

    Interior samples use the nonuniform central stencil; the ends use the
    matching one-sided second-order stencils.
    """
    if traj.n_samples < 3:
        raise ValueError("need at least 3 samples to difference velocities")
    t = traj.times
    q = traj.positions
    v = np.empty_like(q)
    h0 = (t[1:-1] - t[:-2])[:, None, None]
    h1 = (t[2:] - t[1:-1])[:, None, None]
    v[1:-1] = (
        -(h1 / (h0 * (h0 + h1))) * q[:-2]
        + ((h1 - h0) / (h0 * h1)) * q[1:-1]
        + (h0 / (h1 * (h0 + h1))) * q[2:]
    )
    a, b = t[1] - t[0], t[2] - t[1]
    v[0] = (
        -((2 * a + b) / (a * (a + b))) * q[0]
        + ((a + b) / (a * b)) * q[1]
        - (a / (b * (a + b))) * q[2]
    )
    a, b = t[-2] - t[-3], t[-1] - t[-2]
    v[-1] = (
        (b / (a * (a + b))) * q[-3]
        - ((a + b) / (a * b)) * q[-2]
        + ((a + 2 * b) / (b * (a + b))) * q[-1]
    )
    return Trajectory(traj.masses, t, q, v, traj.normals, traj.max_center_shift)


def resample(traj: Trajectory, n: int) -> Trajectory:
    """Cubic resampling of positions onto a uniform grid of n samples.

    Endpoint values are preserved exactly.  Velocities, when present, are
    regenerated from the position spline; normals are renormalized linear
    interpolants.  Inputs with fewer than 4 samples fall back to linear
    interpolation and drop velocities.
    """
    if n < 2:
        raise ValueError("resample needs n >= 2")
    t = traj.times
    t_new = np.linspace(t[0], t[-1], n)
    flat = traj.positions.reshape(t.size, -1)
    if t.size >= 4:
        spline = CubicSpline(t, flat, axis=0)
        q_new = spline(t_new)
        v_new = spline.derivative()(t_new) if traj.velocities is not None else None
    else:
        q_new = np.stack([np.interp(t_new, t, flat[:, c]) for c in range(flat.shape[1])], axis=1)
        v_new = None
    q_new = q_new.reshape(n, 3, traj.dim)
    if v_new is not None:
        v_new = v_new.reshape(n, 3, traj.dim)
    normals = None
    if traj.normals is not None:
        normals = np.stack([np.interp(t_new, t, traj.normals[:, c]) for c in range(3)], axis=1)
        normals /= np.linalg.norm(normals, axis=1, keepdims=True)
    return Trajectory.from_samples(traj.masses, t_new, q_new, v_new, normals)


# ---------------------------------------------------------------------------
# file formats


def _csv_columns(dim: int, has_velocities: bool, has_normals: bool) -> list[str]:
    axes = "xyz"[:dim]
    cols = ["t"]
    cols += [f"q{i}{a}" for i in (1, 2, 3) for a in axes]
    if has_velocities:
        cols += [f"v{i}{a}" for i in (1, 2, 3) for a in axes]
    if has_normals:
        cols += ["nx", "ny", "nz"]
    return cols


def _header_layout(header: list[str]):
    for dim in (2, 3):
        for has_v in (False, True):
            for has_n in ((False, True) if dim == 3 else (False,)):
                if header == _csv_columns(dim, has_v, has_n):
                    return dim, has_v, has_n
    raise ParseError(f"unrecognized CSV header: {','.join(header)}")


def parse(source, format: str, masses: Optional[MassTriple] = None) -> Trajectory:
    """Parse a trajectory from CSV or JSON text.

    CSV carries no masses, so they must be supplied; JSON embeds them but an
    explicit argument takes precedence.  Positions are recentered on ingest
    and the applied shift is recorded on the result.
    """
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    if format == "csv":
        return _parse_csv(source, masses)
    if format == "json":
        return _parse_json(source, masses)
    raise ParseError(f"unknown trajectory format {format!r}")


def _parse_csv(text: str, masses: Optional[MassTriple]) -> Trajectory:
    if masses is None:
        raise ParseError("CSV trajectories carry no masses: pass them explicitly")
    header = None
    rows = []
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if header is None:
            header = [c.strip() for c in stripped.split(",")]
            continue
        rows.append(stripped)
    if header is None:
        raise ParseError("empty CSV: no header row found")
    dim, has_v, has_n = _header_layout(header)
    ncols = len(header)
    data = np.empty((len(rows), ncols))
    for k, row in enumerate(rows, start=1):
        parts = row.split(",")
        if len(parts) != ncols:
            raise ParseError(f"data row {k}: expected {ncols} columns, got {len(parts)}")
        try:
            values = [float(p) for p in parts]
        except ValueError:
            raise ParseError(f"data row {k}: non-numeric field") from None
        if not all(np.isfinite(values)):
            raise ParseError(f"data row {k}: non-finite number")
        data[k - 1] = values
    if data.shape[0] == 0:
        raise ParseError("CSV contains no data rows")
    t = data[:, 0]
    bad = np.flatnonzero(np.diff(t) <= 0.0)
    if bad.size:
        raise ParseError(f"time does not increase at data row {bad[0] + 2}")
    col = 1
    q = data[:, col : col + 3 * dim].reshape(-1, 3, dim)
    col += 3 * dim
    v = None
    if has_v:
        v = data[:, col : col + 3 * dim].reshape(-1, 3, dim)
        col += 3 * dim
    normals = data[:, col : col + 3] if has_n else None
    try:
        return Trajectory.from_samples(masses, t, q, v, normals)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def _parse_json(text: str, masses: Optional[MassTriple]) -> Trajectory:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "samples" not in doc:
        raise ParseError("JSON trajectory must be an object with a 'samples' list")
    if masses is None:
        if "masses" not in doc:
            raise ParseError("no masses: neither the JSON field nor an argument was given")
        try:
            masses = derive_masses(*doc["masses"])
        except (TypeError, ValueError) as exc:
            raise ParseError(f"bad masses field: {exc}") from exc
    dim = int(doc.get("dim", 2))
    if dim not in (2, 3):
        raise ParseError(f"dim must be 2 or 3, got {dim}")
    times, qs, vs, ns = [], [], [], []
    for k, sample in enumerate(doc["samples"], start=1):
        try:
            times.append(float(sample["t"]))
            qs.append(np.asarray(sample["q"], dtype=float).reshape(3, dim))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"sample {k}: {exc}") from exc
        if "v" in sample:
            vs.append(np.asarray(sample["v"], dtype=float).reshape(3, dim))
        if "n" in sample:
            ns.append(np.asarray(sample["n"], dtype=float).reshape(3))
    if vs and len(vs) != len(qs):
        raise ParseError("velocities must be present on all samples or none")
    if ns and len(ns) != len(qs):
        raise ParseError("normals must be present on all samples or none")
    t = np.asarray(times)
    bad = np.flatnonzero(np.diff(t) <= 0.0)
    if bad.size:
        raise ParseError(f"time does not increase at sample {bad[0] + 2}")
    try:
        return Trajectory.from_samples(
            masses,
            t,
            np.stack(qs),
            np.stack(vs) if vs else None,
            np.stack(ns) if ns else None,
        )
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def serialize(traj: Trajectory, format: str = "csv") -> str:
    """Render a trajectory as canonical CSV or JSON text."""
    if format == "csv":
        cols = _csv_columns(traj.dim, traj.velocities is not None, traj.normals is not None)
        blocks = [traj.times[:, None], traj.positions.reshape(traj.n_samples, -1)]
        if traj.velocities is not None:
            blocks.append(traj.velocities.reshape(traj.n_samples, -1))
        if traj.normals is not None:
            blocks.append(traj.normals)
        table = np.concatenate(blocks, axis=1)
        lines = [",".join(cols)]
        lines += [",".join(repr(float(x)) for x in row) for row in table]
        return "\n".join(lines) + "\n"
    if format == "json":
        samples = []
        for k in range(traj.n_samples):
            sample = {"t": float(traj.times[k]), "q": traj.positions[k].tolist()}
            if traj.velocities is not None:
                sample["v"] = traj.velocities[k].tolist()
            if traj.normals is not None:
                sample["n"] = traj.normals[k].tolist()
            samples.append(sample)
        doc = {
            "masses": [traj.masses.m1, traj.masses.m2, traj.masses.m3],
            "dim": traj.dim,
            "samples": samples,
        }
        return json.dumps(doc, indent=2) + "\n"
    raise ValueError(f"unknown trajectory format {format!r}")


# ---------------------------------------------------------------------------
# generators


def rotation_matrices(axis, angles) -> np.ndarray:
    """Rotation matrices about a fixed axis for a batch of angles."""
    k = np.asarray(axis, dtype=float)
    k = k / np.linalg.norm(k)
    K = np.array([[0.0, -k[2], k[1]], [k[2], 0.0, -k[0]], [-k[1], k[0], 0.0]])
    angles = np.atleast_1d(np.asarray(angles, dtype=float))
    c = np.cos(angles)[:, None, None]
    s = np.sin(angles)[:, None, None]
    return np.eye(3) + s * K + (1.0 - c) * (K @ K)


def _config_array(config, dim: int) -> np.ndarray:
    if hasattr(config, "as_array"):
        config = config.as_array()
    q = np.asarray(config, dtype=float)
    if q.shape != (3, dim):
        raise ValueError(f"config must be a (3, {dim}) array of positions")
    return q


def _center_input(masses: MassTriple, q: np.ndarray) -> np.ndarray:
    return q - (masses.as_array() @ q) / masses.M


def _rigid_rotation(masses, config, rate, duration, samples, axis=None) -> Trajectory:
    """Rigid rotation of a configuration at a constant angular rate."""
    t = np.linspace(0.0, duration, samples)
    angles = rate * t
    if axis is None:
        q0 = _center_input(masses, _config_array(config, 2))
        z = q0[:, 0] + 1j * q0[:, 1]
        rot = np.exp(1j * angles)[:, None] * z[None, :]
        q = np.stack([rot.real, rot.imag], axis=-1)
        v_c = 1j * rate * rot
        v = np.stack([v_c.real, v_c.imag], axis=-1)
    else:
        q0 = _center_input(masses, _config_array(config, 3))
        mats = rotation_matrices(axis, angles)
        q = np.einsum("nab,ib->nia", mats, q0)
        k = np.asarray(axis, dtype=float)
        k = k / np.linalg.norm(k)
        v = rate * np.cross(k[None, None, :], q)
    return Trajectory.from_samples(masses, t, q, v)


def _homothety(masses, config, rate, duration, samples) -> Trajectory:
    """Pure dilation q(t) = exp(rate t) q(0); zero angular momentum."""
    if hasattr(config, "as_array"):
        config = config.as_array()
    config = np.asarray(config, dtype=float)
    q0 = _center_input(masses, _config_array(config, config.shape[-1]))
    t = np.linspace(0.0, duration, samples)
    scale = np.exp(rate * t)[:, None, None]
    q = scale * q0[None, :, :]
    v = rate * q
    return Trajectory.from_samples(masses, t, q, v)


def pole_configuration(masses: MassTriple) -> np.ndarray:
    """Configuration of maximal triangle area at I = 1 (counterclockwise
    labels, orthocenter at the mass centroid); body 1 on the positive
    second axis."""
    r = np.sqrt(0.5)
    Z1 = np.array([r + 0.0j])
    Z2 = np.array([1j * r])
    return positions_from_jacobi_series(Z1, Z2, masses)[0]


def _figure1_pinch(masses, duration, samples, stop_fraction=1.0) -> Trajectory:
    """Pinch motion: body 3 fixed, bodies 1 and 2 move uniformly along
    straight lines to their common mass center, meeting at t = duration.

    Starts from the maximal-area configuration.  stop_fraction < 1 halts
    short of the binary collision, which spatial pipelines need to keep the
    projected curve inside a valid chart.
    """
    if duration <= 0.0:
        raise ValueError("pinch duration must be positive")
    if not 0.0 < stop_fraction <= 1.0:
        raise ValueError("stop_fraction must lie in (0, 1]")
    q0 = pole_configuration(masses)
    meet = (masses.m1 * q0[0] + masses.m2 * q0[1]) / (masses.m1 + masses.m2)
    t = np.linspace(0.0, stop_fraction * duration, samples)
    frac = (1.0 - t / duration)[:, None]
    q = np.empty((samples, 3, 2))
    q[:, 0] = meet + frac * (q0[0] - meet)
    q[:, 1] = meet + frac * (q0[1] - meet)
    q[:, 2] = q0[2]
    v = np.empty_like(q)
    v[:, 0] = (meet - q0[0]) / duration
    v[:, 1] = (meet - q0[1]) / duration
    v[:, 2] = 0.0
    return Trajectory.from_samples(masses, t, q, v)


def _gravity_accel(q: np.ndarray, m: np.ndarray, G: float) -> np.ndarray:
    acc = np.zeros_like(q)
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            d = q[j] - q[i]
            acc[i] += G * m[j] * d / np.linalg.norm(d) ** 3
    return acc


def _newtonian(masses, config, velocities, G, duration, samples) -> Trajectory:
    """Fixed-step fourth-order integration of the gravitational equations."""
    dim = np.shape(config)[-1]
    q = _center_input(masses, _config_array(config, dim))
    v = np.asarray(velocities, dtype=float).copy()
    if v.shape != q.shape:
        raise ValueError("velocities must match the configuration shape")
    m = masses.as_array()
    v -= (m @ v) / masses.M
    t = np.linspace(0.0, duration, samples)
    h = t[1] - t[0]
    qs = np.empty((samples, 3, dim))
    vs = np.empty_like(qs)
    qs[0], vs[0] = q, v
    for k in range(samples - 1):
        k1q, k1v = v, _gravity_accel(q, m, G)
        k2q, k2v = v + 0.5 * h * k1v, _gravity_accel(q + 0.5 * h * k1q, m, G)
        k3q, k3v = v + 0.5 * h * k2v, _gravity_accel(q + 0.5 * h * k2q, m, G)
        k4q, k4v = v + h * k3v, _gravity_accel(q + h * k3q, m, G)
        q = q + (h / 6.0) * (k1q + 2.0 * k2q + 2.0 * k3q + k4q)
        v = v + (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        qs[k + 1], vs[k + 1] = q, v
    return Trajectory.from_samples(masses, t, qs, vs)


def _random_smooth(
    masses,
    seed,
    duration,
    samples,
    amplitude=0.2,
    harmonics=3,
    rotation_rate=0.4,
    periodic=False,
) -> Trajectory:
    """Seeded smooth motion: truncated Fourier series in the Jacobi
    variables times a rotation profile.

    The series perturbs the fixed base pair (Z1, Z2) = (1, 0.9i) by at most
    `amplitude`, keeping the shape away from collisions, the chart poles and
    the collinear equator; the rotation profile adds angular momentum.
    Centered by construction.
    """
    if not 0.0 < amplitude < 0.5:
        raise ValueError("amplitude must lie in (0, 0.5)")
    rng = np.random.default_rng(seed)
    t = np.linspace(0.0, duration, samples)
    base_freq = TWO_PI / duration if periodic else (TWO_PI / duration) * rng.uniform(0.55, 0.85)

    def series_pair():
        pos = (rng.standard_normal(harmonics) + 1j * rng.standard_normal(harmonics))
        neg = (rng.standard_normal(harmonics) + 1j * rng.standard_normal(harmonics))
        norm = np.sum(np.abs(pos)) + np.sum(np.abs(neg))
        scale = amplitude / norm
        return pos * scale, neg * scale

    ks = np.arange(1, harmonics + 1)
    phases = np.exp(1j * base_freq * np.outer(t, ks))

    def evaluate(pos, neg):
        delta = phases @ pos + np.conj(phases) @ neg
        ddelta = phases @ (1j * base_freq * ks * pos) + np.conj(phases) @ (
            -1j * base_freq * ks * neg
        )
        return delta, ddelta

    d1, dd1 = evaluate(*series_pair())
    d2, dd2 = evaluate(*series_pair())

    spin_amp = rng.uniform(0.1, 0.3)
    spin_phase = rng.uniform(0.0, TWO_PI)
    theta = rotation_rate * t + spin_amp * np.sin(base_freq * t + spin_phase)
    dtheta = rotation_rate + spin_amp * base_freq * np.cos(base_freq * t + spin_phase)
    spin = np.exp(1j * theta)

    b1, b2 = 1.0, 0.9j
    Z1 = b1 * (1.0 + d1) * spin
    Z2 = b2 * (1.0 + d2) * spin
    dZ1 = b1 * (dd1 + (1.0 + d1) * 1j * dtheta) * spin
    dZ2 = b2 * (dd2 + (1.0 + d2) * 1j * dtheta) * spin

    q = positions_from_jacobi_series(Z1, Z2, masses)
    v = positions_from_jacobi_series(dZ1, dZ2, masses)
    return Trajectory.from_samples(masses, t, q, v)


_GENERATORS = {
    "rigid_rotation": _rigid_rotation,
    "homothety": _homothety,
    "figure1_pinch": _figure1_pinch,
    "newtonian": _newtonian,
    "random_smooth": _random_smooth,
}


def generate(kind: str, **params) -> Trajectory:
    """Build one of the named test motions.

    Kinds: rigid_rotation(masses, config, rate, duration, samples[, axis]),
    homothety(masses, config, rate, duration, samples),
    figure1_pinch(masses, duration, samples[, stop_fraction]),
    newtonian(masses, config, velocities, G, duration, samples),
    random_smooth(masses, seed, duration, samples[, amplitude, harmonics,
    rotation_rate, periodic]).
    """
    try:
        builder = _GENERATORS[kind]
    except KeyError:
        raise ValueError(f"unknown generator kind {kind!r}") from None
    return builder(**params)


def embed_planar(traj: Trajectory, rotation=None) -> Trajectory:
    """Embed a planar trajectory into space (third coordinate zero).

    An optional 3x3 rotation matrix tilts the whole motion rigidly.
    """
    if traj.dim != 2:
        raise ValueError("embed_planar expects a planar trajectory")
    n = traj.n_samples
    q = np.concatenate([traj.positions, np.zeros((n, 3, 1))], axis=2)
    v = None
    if traj.velocities is not None:
        v = np.concatenate([traj.velocities, np.zeros((n, 3, 1))], axis=2)
    if rotation is not None:
        R = np.asarray(rotation, dtype=float)
        q = q @ R.T
        if v is not None:
            v = v @ R.T
    return Trajectory.from_samples(traj.masses, traj.times, q, v)


def apply_rotation_profile(traj: Trajectory, axis, angle, rate) -> Trajectory:
    """Rigidly rotate a spatial trajectory about a fixed axis by a
    time-dependent angle.

    angle and rate are per-sample arrays (or callables of time); velocities
    pick up the rotational term rate * axis x q.
    """
    if traj.dim != 3:
        raise ValueError("apply_rotation_profile expects a spatial trajectory")
    if traj.velocities is None:
        raise ValueError("the source trajectory needs velocities")
    t = traj.times
    angle = np.asarray(angle(t) if callable(angle) else angle, dtype=float)
    rate = np.asarray(rate(t) if callable(rate) else rate, dtype=float)
    if angle.shape != t.shape or rate.shape != t.shape:
        raise ValueError("angle and rate must align with the time grid")
    mats = rotation_matrices(axis, angle)
    q = np.einsum("nab,nib->nia", mats, traj.positions)
    k = np.asarray(axis, dtype=float)
    k = k / np.linalg.norm(k)
    v = np.einsum("nab,nib->nia", mats, traj.velocities)
    v += rate[:, None, None] * np.cross(k[None, None, :], q)
    return Trajectory.from_samples(traj.masses, t, q, v)


def equilateral_array(masses: MassTriple) -> np.ndarray:
    """Convenience (3, 2) array of the unit-inertia equilateral configuration."""
    return equilateral_configuration(masses).as_array()
