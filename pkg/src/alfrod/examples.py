"""Constructors for the classical instanton families as rod structures."""

import math
from typing import Dict, Optional

from .errors import ParameterConstraintViolated, UnknownExample
from .plf import RodFunction, build_rod_function, rod_function_from_samples
from .polytope import RodStructure, make_rod_structure, solve_cone_angles_r2


def taub_nut(n: float = 1.0) -> RodStructure:
    """Single-kink rod f(z) = 2n + |z|."""
    if not n > 0.0:
        raise ParameterConstraintViolated(f"taub_nut needs n > 0, got {n!r}")
    return make_rod_structure(build_rod_function(2.0 * n, [(0.0, 1.0)]))


def kerr_taub_bolt(a: float, b: float, m: float, n: float) -> RodStructure:
    """Two-kink rod with slopes (-1, -a/b, 1), kinks at -b and b, and
    f(-b) = a + b + m + n; cone angles solved from the parameters."""
    angles = solve_cone_angles_r2(a, b, m, n)  # also validates the parameters
    f = rod_function_from_samples([-1.0, -a / b, 1.0], [-b, b], a + b + m + n)
    if abs(f.A - (m + n)) > 1e-9 * max(1.0, m + n):
        raise ParameterConstraintViolated(
            f"inconsistent rod data: recovered A={f.A!r}, expected {m + n!r}")
    return make_rod_structure(f, angles)


def kerr(p: float) -> RodStructure:
    """Smooth rotating family, p = a/b in [0, 1) with b = 1, m = sqrt(1-p^2), n = 0."""
    if not 0.0 <= p < 1.0:
        raise ParameterConstraintViolated(f"kerr needs p in [0, 1), got {p!r}")
    return kerr_taub_bolt(p, 1.0, math.sqrt(1.0 - p * p), 0.0)


def schwarzschild() -> RodStructure:
    return kerr(0.0)


def taub_bolt(orientation: int = 1) -> RodStructure:
    """The smooth zero-middle-slope rod, (a, b, m, n) = (0, 1, 5/3, +/-4/3)."""
    if orientation not in (1, -1):
        raise ParameterConstraintViolated(
            f"taub_bolt orientation must be +1 or -1, got {orientation!r}")
    return kerr_taub_bolt(0.0, 1.0, 5.0 / 3.0, orientation * 4.0 / 3.0)


def chen_teo(p: float) -> RodStructure:
    """One-parameter smooth three-kink family, q = 1 - p.

    Slopes (-1, -p, q, 1), kinks at (q - sqrt(q), 0, sqrt(p) - p), middle
    kink value p q.
    """
    if not 0.0 < p < 1.0:
        raise ParameterConstraintViolated(f"chen_teo needs p in (0, 1), got {p!r}")
    q = 1.0 - p
    f = rod_function_from_samples(
        [-1.0, -p, q, 1.0],
        [q - math.sqrt(q), 0.0, math.sqrt(p) - p],
        p * q / math.sqrt(q))
    return make_rod_structure(f)


EXAMPLES: Dict[str, dict] = {
    "taub_nut": {"params": {"n": "real > 0 (default 1)"},
                 "description": "single-kink rod f(z) = 2n + |z|; one nut, smooth"},
    "kerr": {"params": {"p": "real in [0, 1)"},
             "description": "smooth rotating two-kink family; p=0 is schwarzschild"},
    "schwarzschild": {"params": {},
                      "description": "static limit of the kerr family"},
    "taub_bolt": {"params": {"orientation": "+1 or -1 (default +1)"},
                  "description": "smooth zero-middle-slope two-kink rod"},
    "chen_teo": {"params": {"p": "real in (0, 1)"},
                 "description": "smooth three-kink one-parameter family"},
    "kerr_taub_bolt": {"params": {"a": "real >= 0", "b": "real > 0",
                                  "m": "real > 0, b^2 = a^2 + m^2 - n^2",
                                  "n": "real, |n| <= m, m + n > 0"},
                       "description": "general two-kink rod, conical unless n = 0"},
}


def make_example(name: str, params: Optional[dict] = None) -> RodStructure:
    """Build a named example; params is a name->value dict."""
    params = dict(params or {})
    builders = {"taub_nut": taub_nut, "kerr": kerr, "schwarzschild": schwarzschild,
                "taub_bolt": taub_bolt, "chen_teo": chen_teo,
                "kerr_taub_bolt": kerr_taub_bolt}
    if name not in builders:
        raise UnknownExample(
            f"unknown example {name!r}; known: {sorted(builders)}")
    allowed = set(EXAMPLES[name]["params"])
    extra = set(params) - allowed
    if extra:
        raise ParameterConstraintViolated(
            f"unknown parameters {sorted(extra)} for {name!r}; allowed: {sorted(allowed)}")
    if name == "taub_bolt" and "orientation" in params:
        params["orientation"] = int(params["orientation"])
    return builders[name](**params)
