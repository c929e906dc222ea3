"""Elliptic-function parametrization of a hyperbolic coaxal pencil, the
circle-induced groups acting on the unit circle, and Poncelet closure."""

from .elliptic import (
    JacobiTriple,
    Modulus,
    QuadratureError,
    addition_cn,
    addition_sn,
    amplitude,
    incomplete_f,
    jacobi,
    oracle_f_quadrature,
    quarter_period,
)
from .errors import (
    ClosureInconsistency,
    ConcentricCircles,
    IntersectingCircles,
    NotInPencil,
    PencilError,
    TangentPencil,
)
from .pencil import (
    OrientedCircle,
    Pencil,
    SimilarityTransform,
    canonical_frame,
    circle_at,
    group_op,
    order_of,
    parameter_of,
    parameter_of_order,
    pencil_from_limit_point,
    power_of_point,
)
from .poncelet import (
    ClosureReport,
    Trajectory,
    closure_test,
    composite_gamma,
    diagonal_tangency,
    interscribed_ngon,
    jacobi_ratio,
    trajectory,
)
from .tangent_map import (
    CirclePoint,
    TangentMap,
    a1_apply,
    a1_circle,
    a1_compose,
    apply,
    chord_distance,
    compose,
    conjugate_tangency_circle,
    psi,
    tangency_check,
)

__version__ = "0.1.0"
