"""Toric Hermitian Ricci-flat ALF gravitational instantons from convex
piecewise-linear rod functions: construction, moment polytopes, regularity,
classification, blowup, and numerical verification."""

from .blowup import BlowupRequest, blow_up
from .curvature import (
    CheckResult,
    CurvatureReport,
    VerificationReport,
    ricci_fd,
    scal_kahler_fd,
    verify_suite,
)
from .errors import (
    AlfrodError,
    InputError,
    ParseError,
    ValidationError,
)
from .examples import (
    EXAMPLES,
    chen_teo,
    kerr,
    kerr_taub_bolt,
    make_example,
    schwarzschild,
    taub_bolt,
    taub_nut,
)
from .metric import KahlerSample, MetricSample, kahler_sample, moment_map, tod_metric
from .plf import (
    RodFunction,
    build_rod_function,
    center_rod_function,
    eval_rod_function,
    rescale_rod_function,
    rod_function_from_samples,
)
from .polytope import (
    ClassificationResult,
    DelzantReport,
    Family,
    PolytopeData,
    RodStructure,
    classify_smooth,
    delzant_check,
    edge_normals,
    lattice_coords,
    make_rod_structure,
    polytope_vertices,
    rod_constants,
    solve_cone_angles_general,
    solve_cone_angles_r2,
)
from .potential import (
    PotentialSample,
    axis_limits,
    laplacian_residual,
    potential_eval,
    u0_eval,
)
from .rodfile import parse_rod_file, serialize_rod
from .svg import export_polytope_svg, render_polytope_svg

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
