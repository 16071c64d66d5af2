"""Cap sections of convex graph hypersurfaces."""

from ._core import (
    HypersectError,
    QuadratureConfig,
    Surface,
    SurfacePoint,
    cap_oracle_paraboloid,
    cap_oracle_sphere,
    classify,
    custom,
    limits,
    mean_value,
    named,
    paraboloid,
    paraboloid_alpha,
    parse_surface,
    point_at,
    run_cli,
    run_suite,
    scan,
    section,
    sphere,
    u_check,
)

__version__ = "0.1.0"
