"""Differential geometry of curves and hypersurfaces in Euclidean n-space."""

from .curve import (
    Curve,
    FrenetData,
    arc_length,
    frenet,
    frenet_ode_residual,
    is_line,
    is_spherical,
    slant_helix_space,
    tangent_indicatrix,
    unit_speed,
)
from .errors import (
    DegenerateFrame,
    DomainError,
    ExprSyntaxError,
    GeometryError,
    NonRegular,
    PreconditionError,
    RankDeficient,
    SceneError,
    StepTooLarge,
    VerificationFailed,
)
from .geodesic import GeodesicTrace, integrate_geodesic, trace_to_surface_curve
from .helix_space import HelixDirectionSpace, classify_strong_r_helix, helix_angle, helix_directions
from .hypersurface import (
    Hypersurface,
    SurfaceCurve,
    gauss_map_curve,
    is_asymptotic,
    is_geodesic,
    is_line_of_curvature,
)
from .sampling import SamplePlan
from .scene import Scene, load_scene
from .theorems import SuiteConfig, TheoremReport, run_suite

__version__ = "0.1.0"
