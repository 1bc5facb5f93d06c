"""Shape-sphere projection and rotation reconstruction for three-body motions.

Planar and spatial motions of three point masses project to curves on the
shape sphere; the rotation angle of an individual body is recovered from
the angular momentum and moment of inertia along the motion plus twice the
spherical area swept by that curve about a marked pole.
"""

from .shape_core import (
    MassTriple,
    PlanarConfiguration,
    SpatialConfiguration,
    JacobiPair,
    ShapePoint,
    ChartAngles,
    MarkedAtlas,
    derive_masses,
    jacobi,
    configuration_from_jacobi,
    inertia_and_momentum,
    shape_map,
    normalize_shape,
    chart_angles,
    configuration_from_fiber,
    equilateral_configuration,
    euler_collinear_point,
    atlas,
    C1_DIRECTION,
    O1_DIRECTION,
)
from .trajectory import (
    Trajectory,
    ParseError,
    parse,
    serialize,
    finite_difference_velocities,
    resample,
    generate,
    embed_planar,
    apply_rotation_profile,
)
from .planar import (
    ShapeCurve,
    ReconstructionReport,
    shape_curve,
    swept_area,
    dynamic_term,
    reconstruct_q1,
    reconstruct_Z1,
    zero_J_lift,
    oracle_rotation,
)
from .spatial import (
    SigmaTensor,
    OrientedState,
    sigma_tensor,
    sigma_inverse,
    decompose_e_n,
    F_of_J,
    project_P,
    oriented_state,
    normal_track,
    bad_set_measure,
    reconstruct_spatial,
    velocity_decompose,
    plane_basis,
)
from .verify import run_suite

__version__ = "0.1.0"

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
    "configuration_from_jacobi",
    "inertia_and_momentum",
    "shape_map",
    "normalize_shape",
    "chart_angles",
    "configuration_from_fiber",
    "equilateral_configuration",
    "euler_collinear_point",
    "atlas",
    "C1_DIRECTION",
    "O1_DIRECTION",
    "Trajectory",
    "ParseError",
    "parse",
    "serialize",
    "finite_difference_velocities",
    "resample",
    "generate",
    "embed_planar",
    "apply_rotation_profile",
    "ShapeCurve",
    "ReconstructionReport",
    "shape_curve",
    "swept_area",
    "dynamic_term",
    "reconstruct_q1",
    "reconstruct_Z1",
    "zero_J_lift",
    "oracle_rotation",
    "SigmaTensor",
    "OrientedState",
    "sigma_tensor",
    "sigma_inverse",
    "decompose_e_n",
    "F_of_J",
    "project_P",
    "oriented_state",
    "normal_track",
    "bad_set_measure",
    "reconstruct_spatial",
    "velocity_decompose",
    "plane_basis",
    "run_suite",
]
