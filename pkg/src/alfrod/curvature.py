"""Finite-difference verification of the curvature identities.

The metric depends on (rho, z) only, so Christoffel symbols and the Ricci
tensor are obtained from central differences in those two coordinates alone
(second order, with optional one-step Richardson extrapolation).  The two
verification targets are Ricci(g) = 0 and Scal(gK) = 6 k x1 for gK = x1^2 g.
"""

import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from . import _kernels
from .errors import NonPositiveRho, StepTooLarge
from .metric import flat_deviation, h_metric_constant, moment_map, tod_metric
from .plf import RodFunction, eval_rod_function
from .polytope import RodStructure, _ZERO_SLOPE, delzant_check
from .potential import potential_eval

RICCI_TOL = 1e-5
SCALK_TOL = 1e-4


@dataclass(frozen=True)
class CurvatureReport:
    rho: float
    z: float
    h: float
    richardson: bool
    ricci: Optional[np.ndarray] = field(default=None, repr=False)
    ricci_max_abs: Optional[float] = None
    scalK_numeric: Optional[float] = None
    scalK_target: Optional[float] = None
    scalK_residual: Optional[float] = None


def default_step(rho: float, z: float) -> float:
    """1e-3 (1 + R), capped by rho/100: near the axis the metric varies on the
    scale of rho itself, so the stencil must stay well inside that scale."""
    return min(1e-3 * (1.0 + math.hypot(rho, z)), rho / 100.0)


def _check_step(rho: float, h: float) -> None:
    if not rho > 0.0:
        raise NonPositiveRho(f"rho must be positive, got {rho!r}")
    if not h > 0.0 or rho <= 10.0 * h:
        raise StepTooLarge(f"need rho > 10 h, got rho={rho!r}, h={h!r}")


def ricci_fd(f: RodFunction, rho: float, z: float,
             h: Optional[float] = None, richardson: bool = True) -> CurvatureReport:
    """Ricci tensor of the assembled metric by central finite differences."""
    if h is None:
        h = default_step(rho, z)
    _check_step(rho, h)
    hc = h_metric_constant(f)
    args = (f.A, f.kink_z, f.kink_a, hc, False, float(rho), float(z), float(h))
    if richardson:
        ric = _kernels.ricci_fd_richardson(*args)
    else:
        ric = _kernels.ricci_fd(*args)
    return CurvatureReport(rho=rho, z=z, h=h, richardson=richardson,
                           ricci=ric, ricci_max_abs=float(np.abs(ric).max()))


def scal_kahler_fd(f: RodFunction, rho: float, z: float,
                   h: Optional[float] = None, richardson: bool = True) -> CurvatureReport:
    """Scalar curvature of gK = x1^2 g against the target 6 k x1."""
    if h is None:
        h = default_step(rho, z)
    _check_step(rho, h)
    hc = h_metric_constant(f)
    scal = _kernels.scalar_curvature_fd(
        f.A, f.kink_z, f.kink_a, hc, True, float(rho), float(z), float(h), richardson)
    x1, _ = moment_map(f, rho, z)
    target = 6.0 * (2.0 * f.A) * x1
    return CurvatureReport(rho=rho, z=z, h=h, richardson=richardson,
                           scalK_numeric=float(scal), scalK_target=target,
                           scalK_residual=float(scal) - target)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    residual: float
    threshold: float
    worst_point: Optional[Tuple[float, float]] = None
    details: Optional[dict] = None

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": bool(self.passed),
                "residual": float(self.residual), "threshold": self.threshold,
                "worst_point": list(self.worst_point) if self.worst_point else None,
                "details": self.details}


@dataclass(frozen=True)
class VerificationReport:
    checks: Tuple[CheckResult, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {"format": "report-v1", "all_passed": bool(self.all_passed),
                "checks": [c.to_dict() for c in self.checks]}


def _default_grid(f: RodFunction, n_rho: int, n_z: int):
    rhos = np.logspace(math.log10(0.1), math.log10(10.0), n_rho)
    zs = np.linspace(f.kink_z[0] - 5.0, f.kink_z[-1] + 5.0, n_z)
    pts = [(float(r), float(z)) for r in rhos for z in zs]
    # keep clear of kinks, where second derivatives of U blow up on the axis
    return [(r, z) for r, z in pts
            if np.all(np.abs(z - f.kink_z) > 1e-6) or r > 1e-3]


def verify_suite(rod: RodStructure, grid: Tuple[int, int] = (9, 9),
                 h: Optional[float] = None,
                 curvature_points: int = 20) -> VerificationReport:
    """Aggregate numerical verification of the geometric identities.

    Checks: harmonicity of U, sign conditions, Ricci flatness, the Kaehler
    scalar identity, constancy of F and of mu + F_i x1 along each edge,
    ALF decay, and the integer relation (Delzant) report for the given angles.
    """
    f = rod.f
    pts = _default_grid(f, *grid)
    checks = []

    worst, wpt = 0.0, None
    sign_margin, spt = -np.inf, None
    for rho, z in pts:
        s = potential_eval(f, rho, z)
        scale = abs(s.U_rhorho) + abs(s.U_rho / rho) + abs(s.U_zz)
        res = abs(s.U_rhorho + s.U_rho / rho + s.U_zz) / scale
        if res > worst:
            worst, wpt = res, (rho, z)
        m = max(-s.U_rho, s.U_zz)  # both must be negative: U_rho>0, U_zz<0
        if m > sign_margin:
            sign_margin, spt = m, (rho, z)
    checks.append(CheckResult("harmonicity", worst <= 1e-12, worst, 1e-12, wpt))
    checks.append(CheckResult("sign_conditions", sign_margin < 0.0,
                              sign_margin, 0.0, spt))

    stride = max(1, len(pts) // curvature_points)
    cpts = pts[::stride][:curvature_points]
    worst, wpt = 0.0, None
    for rho, z in cpts:
        rep = ricci_fd(f, rho, z, h=h)
        if rep.ricci_max_abs > worst:
            worst, wpt = rep.ricci_max_abs, (rho, z)
    checks.append(CheckResult("ricci_flat", worst <= RICCI_TOL, worst, RICCI_TOL, wpt))

    worst, wpt = 0.0, None
    for rho, z in cpts:
        rep = scal_kahler_fd(f, rho, z, h=h)
        res = abs(rep.scalK_residual) / max(1.0, abs(rep.scalK_target))
        if res > worst:
            worst, wpt = res, (rho, z)
    checks.append(CheckResult("kahler_scalar", worst <= SCALK_TOL, worst, SCALK_TOL, wpt))

    # per-edge constancy of F(0,z) and of mu + F_i x1, sampled near the axis
    s = f.slopes
    zk = f.kink_z
    bounds = np.concatenate(([zk[0] - 2.0], zk, [zk[-1] + 2.0]))
    worst_f, wfpt = 0.0, None
    worst_mu, wmpt = 0.0, None
    for e in range(f.r + 1):
        if abs(s[e]) <= _ZERO_SLOPE:
            continue
        lo, hi = bounds[e], bounds[e + 1]
        # the axis values are approached like (rho / edge length)^2, so short
        # edges need a proportionally smaller sampling rho
        rho_e = 1e-6 * min(1.0, float(hi - lo))
        zs = np.linspace(lo + 0.25 * (hi - lo), hi - 0.25 * (hi - lo), 5)
        fvals, muvals = [], []
        for z in zs:
            ms = tod_metric(f, rho_e, float(z))
            x1, mu = moment_map(f, rho_e, float(z))
            fvals.append(ms.F)
            muvals.append(mu + rod.F[e] * x1)
        rf = max(fvals) - min(fvals)
        rm = max(muvals) - min(muvals)
        if rf > worst_f:
            worst_f, wfpt = rf, (rho_e, float(zs[0]))
        if rm > worst_mu:
            worst_mu, wmpt = rm, (rho_e, float(zs[0]))
    checks.append(CheckResult("edge_F_constant", worst_f <= 1e-8, worst_f, 1e-8, wfpt))
    checks.append(CheckResult("edge_moment_constant", worst_mu <= 1e-8,
                              worst_mu, 1e-8, wmpt))

    radii = (10.0, 100.0, 1000.0)
    thetas = (0.4, 0.9, 1.4, 1.9, 2.6)
    errs = [max(flat_deviation(f, R, th) for th in thetas) for R in radii]
    consts = [e * R for e, R in zip(errs, radii)]
    ratio = max(consts) / min(consts)
    decreasing = all(a > b for a, b in zip(errs, errs[1:]))
    checks.append(CheckResult("alf_decay", decreasing and ratio <= 10.0, ratio, 10.0,
                              details={"radii": list(radii), "errors": errs,
                                       "error_times_R": consts}))

    report = delzant_check(rod.normals, rod.angles)
    worst = max((e[3] for e in report.entries), default=0.0)
    checks.append(CheckResult("delzant_relations", worst <= report.tol, worst,
                              report.tol, details=report.to_dict()))

    return VerificationReport(checks=tuple(checks))
