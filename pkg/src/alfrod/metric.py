"""Assembly of the Ricci-flat metric and the moment map at interior points.

The ansatz is g = e^{2nu}(drho^2 + dz^2) + V rho^2 dx3^2 + V^{-1}(dt - F dx3)^2
built from the generating potential U of the rod function, with scale k = 2A.

Gauge note: the conjugate function H is defined up to a constant.  The moment
map and polytope use the gauge with leftmost rod constant F_0 = 0; the metric
itself uses the symmetric gauge (F shifted by -(F_0 + F_r)/2), which makes the
off-diagonal term decay at infinity so the metric is manifestly ALF.
"""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from . import _kernels
from .errors import NearAxisPoint, NonPositiveRho, NonPositiveV
from .plf import RodFunction
from .polytope import moment_shift, rod_constants
from .potential import h_gauge_constant, potential_eval

_AXIS_FRACTION = 1e-8


@dataclass(frozen=True)
class MetricSample:
    """Ansatz scalars and the 4x4 metric in coordinate order (rho, z, x3, t)."""
    rho: float
    z: float
    e2nu: float
    V: float
    F: float
    g: np.ndarray
    k: float


@dataclass(frozen=True)
class KahlerSample:
    """Moments and the conformally rescaled Kaehler metric gK = x1^2 g."""
    rho: float
    z: float
    x1: float
    mu: float
    gK: np.ndarray
    scalK_target: float
    k: float


def _check_point(rho: float, z: float) -> None:
    if not rho > 0.0:
        raise NonPositiveRho(f"rho must be positive, got {rho!r}")
    if rho < _AXIS_FRACTION * (1.0 + abs(z)):
        raise NearAxisPoint(
            f"rho={rho!r} too close to the axis for stable interior evaluation; "
            "use axis_limits")


def h_metric_constant(f: RodFunction) -> float:
    """H gauge constant of the symmetric F gauge used by the metric."""
    F = rod_constants(f)
    k = 2.0 * f.A
    return h_gauge_constant(f) + (k / 4.0) * (F[0] + F[-1])


def tod_metric(f: RodFunction, rho: float, z: float) -> MetricSample:
    """The Ricci-flat metric sample at an interior point (rho > 0)."""
    _check_point(rho, z)
    e2nu, v, big_f, _ = _kernels.metric_scalars(
        f.A, f.kink_z, f.kink_a, h_metric_constant(f), float(rho), float(z))
    if not v > 0.0:
        raise NonPositiveV(f"V = {v!r} at (rho, z) = ({rho}, {z})")
    g = np.zeros((4, 4))
    g[0, 0] = g[1, 1] = e2nu
    g[2, 2] = v * rho * rho + big_f * big_f / v
    g[3, 3] = 1.0 / v
    g[2, 3] = g[3, 2] = -big_f / v
    g.setflags(write=False)
    return MetricSample(rho=rho, z=z, e2nu=e2nu, V=v, F=big_f, g=g, k=2.0 * f.A)


def moment_map(f: RodFunction, rho: float, z: float) -> Tuple[float, float]:
    """Moments (x1, mu) of the two torus generators.

    x1 = 2/(rho U_rho); mu is centered so that the edge at infinity spans
    mu in (-1, 1).
    """
    _check_point(rho, z)
    s = potential_eval(f, rho, z)
    k = 2.0 * f.A
    h_z = rho * s.U_rho
    x1 = 2.0 / h_z
    rho_h_rho = -rho * rho * s.U_z
    mu = -(2.0 / k) * (z + (rho_h_rho - 2.0 * s.H) / h_z) + moment_shift(f)
    return x1, mu


def kahler_sample(f: RodFunction, rho: float, z: float) -> KahlerSample:
    """gK = x1^2 g with the scalar-curvature target 6 k x1."""
    ms = tod_metric(f, rho, z)
    x1, mu = moment_map(f, rho, z)
    gk = x1 * x1 * ms.g
    gk.setflags(write=False)
    return KahlerSample(rho=rho, z=z, x1=x1, mu=mu, gK=gk,
                        scalK_target=6.0 * ms.k * x1, k=ms.k)


def flat_deviation(f: RodFunction, big_r: float, theta: float) -> float:
    """Frame-normalized max deviation of g from the flat model at radius R.

    theta is the polar angle from the positive z axis; the x3 components are
    divided by rho so every entry tends to the flat diag(1, 1, 1, 1) limit.
    """
    rho = big_r * math.sin(theta)
    z = big_r * math.cos(theta)
    ms = tod_metric(f, rho, z)
    return max(abs(ms.e2nu - 1.0),
               abs(ms.g[2, 2] / (rho * rho) - 1.0),
               abs(ms.g[3, 3] - 1.0),
               abs(ms.g[2, 3] / rho))
