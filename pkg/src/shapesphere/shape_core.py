"""Masses, Jacobi coordinates, the shape-sphere projection, and marked points.

Three centered bodies map to normalized Jacobi coordinates (Z1, Z2), treated
as complex numbers in the planar case, and on to shape coordinates
(w1, w2, w3, w4) with w4 = I/2.  Fixing the moment of inertia I = 1 puts the
shape on a sphere of radius 1/2; `atlas` lays out its marked points (binary
collisions C_i, center markers O_i, Euler and Lagrange central
configurations, poles) for a given mass triple.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .angles import TWO_PI, wrap_angle

__all__ = [
    "MassTriple",
    "PlanarConfiguration",
    "SpatialConfiguration",
    "JacobiPair",
    "ShapePoint",
    "ChartAngles",
    "MarkedAtlas",
    "derive_masses",
    "jacobi",
    "jacobi_pivot3",
    "configuration_from_jacobi",
    "inertia_and_momentum",
    "shape_map",
    "normalize_shape",
    "chart_angles",
    "configuration_from_fiber",
    "equilateral_configuration",
    "euler_collinear_point",
    "atlas",
    "jacobi_series",
    "shape_series",
    "positions_from_jacobi_series",
    "centroid_residual",
    "C1_DIRECTION",
    "O1_DIRECTION",
]

# Unit directions of the meridian-chart axis: C1 marks the collision of
# bodies 2 and 3, O1 marks body 1 sitting at the center of mass.
C1_DIRECTION = np.array([-1.0, 0.0, 0.0])
O1_DIRECTION = np.array([1.0, 0.0, 0.0])

# Relative radius below which a Jacobi polar angle is flagged undefined.
CHART_RADIUS_TOL = 1e-13

_CENTROID_TOL = 1e-12


@dataclass(frozen=True)
class MassTriple:
    """Three positive masses plus the derived Jacobi scale factors.

    The scale factors satisfy 1/mu1^2 = 1/m2 + 1/m3 and
    1/mu2^2 = 1/m1 + 1/(m2 + m3); M is the total mass.
    """

    m1: float
    m2: float
    m3: float
    mu1: float
    mu2: float
    M: float

    def as_array(self) -> np.ndarray:
        return np.array([self.m1, self.m2, self.m3])


def derive_masses(m1, m2, m3) -> MassTriple:
    """Validate three masses and derive the Jacobi scale factors."""
    for name, m in (("m1", m1), ("m2", m2), ("m3", m3)):
        if not np.isfinite(m) or m <= 0:
            raise ValueError(f"mass {name}={m!r} must be a positive finite number")
    m1, m2, m3 = float(m1), float(m2), float(m3)
    mu1 = 1.0 / np.sqrt(1.0 / m2 + 1.0 / m3)
    mu2 = 1.0 / np.sqrt(1.0 / m1 + 1.0 / (m2 + m3))
    return MassTriple(m1, m2, m3, float(mu1), float(mu2), m1 + m2 + m3)


def _as_vectors(values, dim: int, names) -> list[np.ndarray]:
    out = []
    for name, value in zip(names, values):
        v = np.asarray(value, dtype=float)
        if v.shape != (dim,) or not np.all(np.isfinite(v)):
            raise ValueError(f"{name} must be a finite {dim}-vector")
        out.append(v)
    return out


@dataclass(frozen=True, eq=False)
class PlanarConfiguration:
    """Positions of the three bodies in the plane."""

    q1: np.ndarray
    q2: np.ndarray
    q3: np.ndarray

    def __post_init__(self):
        q1, q2, q3 = _as_vectors((self.q1, self.q2, self.q3), 2, ("q1", "q2", "q3"))
        object.__setattr__(self, "q1", q1)
        object.__setattr__(self, "q2", q2)
        object.__setattr__(self, "q3", q3)

    def as_array(self) -> np.ndarray:
        return np.stack([self.q1, self.q2, self.q3])

    def as_complex(self) -> np.ndarray:
        a = self.as_array()
        return a[:, 0] + 1j * a[:, 1]


@dataclass(frozen=True, eq=False)
class SpatialConfiguration:
    """Positions of the three bodies in space."""

    q1: np.ndarray
    q2: np.ndarray
    q3: np.ndarray

    def __post_init__(self):
        q1, q2, q3 = _as_vectors((self.q1, self.q2, self.q3), 3, ("q1", "q2", "q3"))
        object.__setattr__(self, "q1", q1)
        object.__setattr__(self, "q2", q2)
        object.__setattr__(self, "q3", q3)

    def as_array(self) -> np.ndarray:
        return np.stack([self.q1, self.q2, self.q3])


def centroid_residual(config, masses: MassTriple) -> float:
    """Relative size of the mass-weighted centroid of a configuration."""
    q = config.as_array()
    m = masses.as_array()
    num = float(np.linalg.norm(m @ q))
    den = float(np.sum(m * np.linalg.norm(q, axis=1)))
    if den == 0.0:
        return 0.0
    return num / den


def _require_centered(config, masses: MassTriple):
    res = centroid_residual(config, masses)
    if res > _CENTROID_TOL:
        raise ValueError(
            f"configuration is not centered: relative centroid residual {res:.3e} "
            f"exceeds {_CENTROID_TOL:g}"
        )


@dataclass(frozen=True)
class JacobiPair:
    """Normalized Jacobi coordinates of a planar configuration.

    Z1 is the scaled separation of bodies 2 and 3, Z2 runs from their mass
    center to body 1; both are complex numbers and the map to centered
    configurations is a bijection.
    """

    Z1: complex
    Z2: complex


def jacobi(config: PlanarConfiguration, masses: MassTriple) -> JacobiPair:
    """Normalized Jacobi coordinates of a centered planar configuration."""
    _require_centered(config, masses)
    q1, q2, q3 = config.as_complex()
    Z1 = masses.mu1 * (q3 - q2)
    Z2 = masses.mu2 * (q1 - (masses.m2 * q2 + masses.m3 * q3) / (masses.m2 + masses.m3))
    return JacobiPair(complex(Z1), complex(Z2))


def jacobi_pivot3(config: PlanarConfiguration, masses: MassTriple) -> JacobiPair:
    """Jacobi coordinates built around body 3 instead of body 1.

    Z1 joins bodies 1 and 2 and Z2 runs from their mass center to body 3.
    Relabeling changes the shape projection by a fixed orthogonal map of
    shape space.
    """
    q1, q2, q3 = config.as_complex()
    m1, m2, m3 = masses.m1, masses.m2, masses.m3
    mu1 = 1.0 / np.sqrt(1.0 / m1 + 1.0 / m2)
    mu2 = 1.0 / np.sqrt(1.0 / m3 + 1.0 / (m1 + m2))
    Z1 = mu1 * (q2 - q1)
    Z2 = mu2 * (q3 - (m1 * q1 + m2 * q2) / (m1 + m2))
    return JacobiPair(complex(Z1), complex(Z2))


def configuration_from_jacobi(pair: JacobiPair, masses: MassTriple) -> PlanarConfiguration:
    """Invert the Jacobi map back to a centered planar configuration."""
    m23 = masses.m2 + masses.m3
    q1 = pair.Z2 * m23 / (masses.mu2 * masses.M)
    c23 = -masses.m1 * q1 / m23
    q2 = c23 - (masses.m3 / m23) * pair.Z1 / masses.mu1
    q3 = c23 + (masses.m2 / m23) * pair.Z1 / masses.mu1
    return PlanarConfiguration(
        np.array([q1.real, q1.imag]),
        np.array([q2.real, q2.imag]),
        np.array([q3.real, q3.imag]),
    )


def inertia_and_momentum(pair: JacobiPair, pair_rate: JacobiPair) -> tuple[float, float]:
    """Moment of inertia and angular momentum from Jacobi data.

    I = |Z1|^2 + |Z2|^2 and J = Im(conj(Z1) dZ1 + conj(Z2) dZ2), which
    agrees with sum_i m_i (x_i vy_i - y_i vx_i) over the bodies.
    """
    inertia = abs(pair.Z1) ** 2 + abs(pair.Z2) ** 2
    momentum = (np.conj(pair.Z1) * pair_rate.Z1 + np.conj(pair.Z2) * pair_rate.Z2).imag
    return float(inertia), float(momentum)


@dataclass(frozen=True)
class ShapePoint:
    """Shape coordinates (w1, w2, w3, w4) of a planar configuration.

    w4 equals half the moment of inertia and (w1, w2, w3) lies on the sphere
    of radius w4; w3 is proportional to the signed triangle area.
    """

    w1: float
    w2: float
    w3: float
    w4: float

    def __post_init__(self):
        coords = (self.w1, self.w2, self.w3, self.w4)
        if not all(np.isfinite(c) for c in coords):
            raise ValueError("shape coordinates must be finite")
        if self.w4 < 0.0:
            raise ValueError("w4 must be nonnegative")
        radius_sq = self.w1**2 + self.w2**2 + self.w3**2
        if abs(radius_sq - self.w4**2) > 1e-12 * max(self.w4**2, 1e-300):
            raise ValueError("shape coordinates violate w1^2 + w2^2 + w3^2 = w4^2")

    def vec(self) -> np.ndarray:
        return np.array([self.w1, self.w2, self.w3])


def shape_map(pair: JacobiPair) -> ShapePoint:
    """Shape coordinates of the configuration with Jacobi coordinates (Z1, Z2).

    w4 + w1 = |Z1|^2, w4 - w1 = |Z2|^2 and w2 + i w3 = conj(Z1) Z2.
    """
    a = abs(pair.Z1) ** 2
    b = abs(pair.Z2) ** 2
    c = np.conj(pair.Z1) * pair.Z2
    return ShapePoint(0.5 * (a - b), float(c.real), float(c.imag), 0.5 * (a + b))


def normalize_shape(p: ShapePoint) -> ShapePoint:
    """Rescale a shape point onto the radius-1/2 sphere (w4 = 1/2)."""
    if p.w4 <= 0.0:
        raise ValueError("triple collision: no direction is defined at the shape origin")
    s = 0.5 / p.w4
    return ShapePoint(p.w1 * s, p.w2 * s, p.w3 * s, 0.5)


@dataclass(frozen=True)
class ChartAngles:
    """Polar data of a Jacobi pair: Z1 = r1 e^{i xi1}, Z2 = r2 e^{i xi2}.

    xi is the rotation angle from Z1 to Z2, stored in (-pi, pi]; it is also
    the meridian longitude of the shape point.  A vanishing Z has no polar
    angle, recorded in the defined flags rather than raised.
    """

    r1: float
    r2: float
    xi1: float
    xi2: float
    xi: float
    defined1: bool
    defined2: bool


def chart_angles(pair: JacobiPair) -> ChartAngles:
    """Polar decomposition of the Jacobi pair with undefined-angle flags."""
    r1 = abs(pair.Z1)
    r2 = abs(pair.Z2)
    floor = CHART_RADIUS_TOL * np.sqrt(r1 * r1 + r2 * r2)
    defined1 = bool(r1 > floor)
    defined2 = bool(r2 > floor)
    xi1 = float(np.angle(pair.Z1)) if defined1 else 0.0
    xi2 = float(np.angle(pair.Z2)) if defined2 else 0.0
    xi = wrap_angle(xi2 - xi1) if (defined1 and defined2) else 0.0
    return ChartAngles(float(r1), float(r2), xi1, xi2, xi, defined1, defined2)


def configuration_from_fiber(
    p: ShapePoint, angle: float, which: str, masses: MassTriple
) -> PlanarConfiguration:
    """Configuration over a shape point with one Jacobi polar angle fixed.

    The configurations over a shape point form a circle; prescribing the
    polar angle of Z1 (which="xi1") or of Z2 (which="xi2") selects one.  A
    chart is only valid where its radius is positive.
    """
    if which not in ("xi1", "xi2"):
        raise ValueError("which must be 'xi1' or 'xi2'")
    if p.w4 <= 0.0:
        raise ValueError("triple collision: the fiber over the shape origin is empty")
    r1 = float(np.sqrt(max(p.w4 + p.w1, 0.0)))
    r2 = float(np.sqrt(max(p.w4 - p.w1, 0.0)))
    floor = CHART_RADIUS_TOL * np.sqrt(2.0 * p.w4)
    xi = float(np.arctan2(p.w3, p.w2))
    if which == "xi1":
        if r1 <= floor:
            raise ValueError("chart xi1 is invalid here (Z1 = 0): use chart xi2")
        xi1 = float(angle)
        xi2 = xi1 + xi
    else:
        if r2 <= floor:
            raise ValueError("chart xi2 is invalid here (Z2 = 0): use chart xi1")
        xi2 = float(angle)
        xi1 = xi2 - xi
    pair = JacobiPair(r1 * np.exp(1j * xi1), r2 * np.exp(1j * xi2))
    return configuration_from_jacobi(pair, masses)


def equilateral_configuration(masses: MassTriple) -> PlanarConfiguration:
    """Equilateral configuration, labels 1, 2, 3 counterclockwise, I = 1."""
    base = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, 0.5 * np.sqrt(3.0)]])
    m = masses.as_array()
    centered = base - (m @ base) / masses.M
    inertia = float(np.sum(m * np.sum(centered**2, axis=1)))
    scaled = centered / np.sqrt(inertia)
    return PlanarConfiguration(scaled[0], scaled[1], scaled[2])


def euler_collinear_point(masses: MassTriple, i: int) -> ShapePoint:
    """Normalized shape point of the collinear central configuration with
    body i between the other two.

    The adjacent-distance ratio solves the classical quintic condition that
    the acceleration be an affine function of position along the line; the
    condition has exactly one positive root, found by bracketing.
    """
    if i not in (1, 2, 3):
        raise ValueError(f"central body index must be 1, 2 or 3, got {i!r}")
    j, k = (b for b in (1, 2, 3) if b != i)
    m = masses.as_array()
    mj, mi, mk = m[j - 1], m[i - 1], m[k - 1]

    def imbalance(x):
        # bodies j, i, k at 0, 1, 1 + x on a line, unit gravity constant
        aj = mi + mk / (1.0 + x) ** 2
        ai = -mj + mk / x**2
        ak = -mj / (1.0 + x) ** 2 - mi / x**2
        return (ai - aj) * (1.0 + x) - (ak - aj)

    lo, hi = 1e-9, 1.0
    while imbalance(hi) > 0.0:
        hi *= 2.0
        if hi > 1e12:
            raise RuntimeError("failed to bracket the collinear ratio root")
    try:
        ratio = brentq(imbalance, lo, hi, xtol=1e-15, maxiter=200)
    except RuntimeError as exc:
        raise RuntimeError(f"collinear ratio root did not converge: {exc}") from exc

    positions = np.zeros((3, 2))
    positions[j - 1, 0] = 0.0
    positions[i - 1, 0] = 1.0
    positions[k - 1, 0] = 1.0 + ratio
    centered = positions - (m @ positions) / masses.M
    config = PlanarConfiguration(centered[0], centered[1], centered[2])
    return normalize_shape(shape_map(jacobi(config, masses)))


@dataclass(frozen=True, eq=False)
class MarkedAtlas:
    """Marked points of the radius-1/2 shape sphere for one mass triple.

    Equator points are also stored as counterclockwise angles from O1 in the
    (w1, w2) plane, which makes ordering assertions exact; alpha holds the
    three half-separation angles between collision points and beta the
    longitude of the Lagrange point L1.
    """

    alpha: np.ndarray
    beta: float
    points: dict
    equator_angles: dict

    def to_json_dict(self) -> dict:
        out = {name: [float(c) for c in vec] for name, vec in self.points.items()}
        out["alpha"] = [float(a) for a in self.alpha]
        out["beta"] = float(self.beta)
        return out


def atlas(masses: MassTriple) -> MarkedAtlas:
    """Lay out the marked points of the shape sphere for a mass triple.

    cos(alpha2) = sqrt(m1 m3 / ((m1+m2)(m3+m2))) and cyclic analogues; the
    counterclockwise equator angle from C1 to C3 is 2 alpha2, from C3 to C2
    is 2 alpha1 and from C2 back to C1 is 2 alpha3, giving the ordering
    C1, O2, C3, O1, C2, O3.  L1 is the projected equilateral configuration
    with counterclockwise labels, L2 its mirror below the collinear plane,
    and P1/P2 the poles of maximal triangle area.
    """
    m1, m2, m3 = masses.m1, masses.m2, masses.m3
    a1 = float(np.arccos(np.sqrt(m2 * m3 / ((m2 + m1) * (m3 + m1)))))
    a2 = float(np.arccos(np.sqrt(m1 * m3 / ((m1 + m2) * (m3 + m2)))))
    a3 = float(np.arccos(np.sqrt(m1 * m2 / ((m3 + m2) * (m3 + m1)))))

    angles = {
        "O1": 0.0,
        "C2": 2.0 * (a1 + a2) - np.pi,
        "O3": 2.0 * a2,
        "C1": np.pi,
        "O2": 2.0 * (a1 + a2),
        "C3": np.pi + 2.0 * a2,
    }

    points = {}
    for name, theta in angles.items():
        points[name] = np.array([0.5 * np.cos(theta), 0.5 * np.sin(theta), 0.0])

    for i in (1, 2, 3):
        e_point = euler_collinear_point(masses, i)
        points[f"E{i}"] = e_point.vec()
        angles[f"E{i}"] = float(np.arctan2(e_point.w2, e_point.w1) % TWO_PI)

    lagrange_pair = jacobi(equilateral_configuration(masses), masses)
    l1 = normalize_shape(shape_map(lagrange_pair)).vec()
    points["L1"] = l1
    points["L2"] = l1 * np.array([1.0, 1.0, -1.0])
    points["P1"] = np.array([0.0, 0.0, 0.5])
    points["P2"] = np.array([0.0, 0.0, -0.5])
    beta = chart_angles(lagrange_pair).xi

    return MarkedAtlas(
        alpha=np.array([a1, a2, a3]),
        beta=float(beta),
        points=points,
        equator_angles={k: float(v) for k, v in angles.items()},
    )


# ---------------------------------------------------------------------------
# vectorized helpers over sampled batches of configurations


def jacobi_series(positions: np.ndarray, masses: MassTriple) -> tuple[np.ndarray, np.ndarray]:
    """Jacobi map applied to a batch of planar samples, shape (n, 3, 2).

    The map is linear, so it applies verbatim to velocities as well.
    """
    q = positions[..., 0] + 1j * positions[..., 1]
    Z1 = masses.mu1 * (q[:, 2] - q[:, 1])
    Z2 = masses.mu2 * (
        q[:, 0] - (masses.m2 * q[:, 1] + masses.m3 * q[:, 2]) / (masses.m2 + masses.m3)
    )
    return Z1, Z2


def shape_series(Z1: np.ndarray, Z2: np.ndarray) -> np.ndarray:
    """Shape coordinates for batches of Jacobi pairs; rows (w1, w2, w3, w4)."""
    a = np.abs(Z1) ** 2
    b = np.abs(Z2) ** 2
    c = np.conj(Z1) * Z2
    return np.stack([0.5 * (a - b), c.real, c.imag, 0.5 * (a + b)], axis=-1)


def positions_from_jacobi_series(
    Z1: np.ndarray, Z2: np.ndarray, masses: MassTriple
) -> np.ndarray:
    """Invert the Jacobi map for batches; returns centered (n, 3, 2) samples."""
    m23 = masses.m2 + masses.m3
    q1 = Z2 * m23 / (masses.mu2 * masses.M)
    c23 = -masses.m1 * q1 / m23
    q2 = c23 - (masses.m3 / m23) * Z1 / masses.mu1
    q3 = c23 + (masses.m2 / m23) * Z1 / masses.mu1
    q = np.stack([q1, q2, q3], axis=1)
    return np.stack([q.real, q.imag], axis=-1)
