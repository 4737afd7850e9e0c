"""Closed-form generating potential U, its conjugate H, and axis limits.

U(rho, z) = A log rho^2 + sum_i a_i U0(rho, z - z_i), where U0 is the
axisymmetric harmonic building block 2R + z log((R-z)/(R+z)).  H is the
axisymmetric conjugate (H_rho = -rho U_z, H_z = rho U_rho) fixed in the gauge
where the leftmost rod constant F_0 vanishes.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels
from .errors import KinkPoint, NonPositiveRho, ZeroSlopeSegment
from .plf import RodFunction, eval_rod_function

_KINK_TOL = 1e-12


@dataclass(frozen=True)
class PotentialSample:
    """U, H and all first/second partials at one half-plane point (rho > 0)."""
    rho: float
    z: float
    U: float
    U_rho: float
    U_z: float
    U_rhorho: float
    U_rhoz: float
    U_zz: float
    H: float


@dataclass(frozen=True)
class AxisLimits:
    """Boundary values of the ansatz scalars on a rod segment (rho = 0).

    On a zero-slope segment V diverges like v_coeff / rho^2 and F_axis,
    V_axis, e2nu_axis are None; elsewhere v_coeff is None.
    """
    z: float
    F_axis: Optional[float]
    V_axis: Optional[float]
    e2nu_axis: Optional[float]
    zero_slope: bool = False
    v_coeff: Optional[float] = None


def _check_rho(rho: float) -> None:
    if not rho > 0.0:
        raise NonPositiveRho(f"rho must be positive, got {rho!r}")


def u0_eval(rho: float, z: float) -> PotentialSample:
    """Closed-form building block U0 = 2R + z log((R-z)/(R+z)) with derivatives."""
    _check_rho(rho)
    u0, u0_r, u0_z, u0_rr, u0_rz, u0_zz, h0 = _kernels.u0_terms(float(rho), float(z))
    return PotentialSample(rho=rho, z=z, U=u0, U_rho=u0_r, U_z=u0_z,
                           U_rhorho=u0_rr, U_rhoz=u0_rz, U_zz=u0_zz, H=h0)


def h_gauge_constant(f: RodFunction) -> float:
    """Additive constant of H making the leftmost rod constant F_0 vanish.

    On the leftmost segment the slope is -1, so F(0,z)=0 forces
    H(0,z) = f(z)^2/f'(z) = -f(z)^2 there; H(0,z) without the constant is
    2Az + sum a_i (z-z_i)|z-z_i|, evaluated at any z left of the first kink.
    """
    z = float(f.kink_z[0]) - 1.0
    value, _, _ = eval_rod_function(f, z)
    h_raw = 2.0 * f.A * z + float(f.kink_a @ ((z - f.kink_z) * np.abs(z - f.kink_z)))
    return -value * value - h_raw


def h_axis(f: RodFunction, z: float, h_const: Optional[float] = None) -> float:
    """H(0,z) = 2Az + sum a_i (z-z_i)|z-z_i| + gauge constant."""
    if h_const is None:
        h_const = h_gauge_constant(f)
    return (2.0 * f.A * z
            + float(f.kink_a @ ((z - f.kink_z) * np.abs(z - f.kink_z)))
            + h_const)


def potential_eval(f: RodFunction, rho: float, z: float) -> PotentialSample:
    """Evaluate U, H and all partials through second order at (rho, z)."""
    _check_rho(rho)
    t = _kernels.potential_terms(f.A, f.kink_z, f.kink_a, float(rho), float(z))
    return PotentialSample(rho=rho, z=z, U=t[0], U_rho=t[1], U_z=t[2],
                           U_rhorho=t[3], U_rhoz=t[4], U_zz=t[5],
                           H=t[6] + h_gauge_constant(f))


def laplacian_residual(f: RodFunction, rho: float, z: float) -> float:
    """U_rhorho + U_rho/rho + U_zz from the closed forms (analytically zero)."""
    s = potential_eval(f, rho, z)
    return s.U_rhorho + s.U_rho / rho + s.U_zz


def u_zz_axis(f: RodFunction, z: float) -> float:
    """U_zz(0, z) = -2 sum a_i / |z - z_i| off the kinks."""
    return -2.0 * float(f.kink_a @ (1.0 / np.abs(z - f.kink_z)))


def axis_limits(f: RodFunction, z: float, allow_zero_slope: bool = False) -> AxisLimits:
    """Boundary values of (F, V, e^{2nu}) on the axis segment containing z.

    Requires z to lie strictly inside a segment.  On a zero-slope segment the
    finite forms do not exist; with allow_zero_slope the coefficient of the
    1/rho^2 divergence of V is returned instead.
    """
    if np.any(np.abs(z - f.kink_z) <= _KINK_TOL * (1.0 + abs(z))):
        raise KinkPoint(f"z={z!r} is a kink position; axis limits need an interior point")
    value, _, slope = eval_rod_function(f, z)
    k = 2.0 * f.A
    uzz = u_zz_axis(f, z)
    if slope == 0.0:
        if not allow_zero_slope:
            raise ZeroSlopeSegment(
                f"segment containing z={z!r} has slope 0; V diverges like 1/rho^2")
        coeff = -(4.0 / k) * value * value / uzz
        return AxisLimits(z=z, F_axis=None, V_axis=None, e2nu_axis=None,
                          zero_slope=True, v_coeff=coeff)
    f_ax = (2.0 / k) * (value * value / slope - h_axis(f, z))
    v_ax = -(2.0 * value + (value * value / (slope * slope)) * uzz) / k
    return AxisLimits(z=z, F_axis=f_ax, V_axis=v_ax, e2nu_axis=slope * slope * v_ax)


def u0_h0(rho: float, z: float) -> float:
    """Conjugate H0 = zR + rho^2 log((R+z)/rho) of the building block."""
    _check_rho(rho)
    return _kernels.u0_terms(float(rho), float(z))[6]


def u0_asymptotic_ratio(f: RodFunction, rho: float, z: float) -> float:
    """U / U0 at one point; tends to 1 at infinity for any valid rod function."""
    return potential_eval(f, rho, z).U / u0_eval(rho, z).U


def conjugacy_residuals(f: RodFunction, rho: float, z: float, h: float = 1e-5):
    """Finite-difference check of H_rho = -rho U_z and H_z = rho U_rho.

    Returns (residual_rho, residual_z) with O(h^2) discretization error.
    """
    s = potential_eval(f, rho, z)
    h_rho = (potential_eval(f, rho + h, z).H - potential_eval(f, rho - h, z).H) / (2.0 * h)
    h_z = (potential_eval(f, rho, z + h).H - potential_eval(f, rho, z - h).H) / (2.0 * h)
    return h_rho + rho * s.U_z, h_z - rho * s.U_rho


def edge_density_extrapolated(f: RodFunction, z: float,
                              rho1: float = 1e-6, rho2: float = 1e-8) -> float:
    """Limit of U/log(rho^2) as rho -> 0 by two-point extrapolation in 1/log.

    U(rho,z) = f(z) log rho^2 + c(z) + o(1), so the ratio converges only like
    1/log(rho^2); eliminating the constant with two samples recovers f(z) to
    high accuracy.
    """
    l1 = math.log(rho1 * rho1)
    l2 = math.log(rho2 * rho2)
    r1 = potential_eval(f, rho1, z).U / l1
    r2 = potential_eval(f, rho2, z).U / l2
    return (r1 * l1 - r2 * l2) / (l1 - l2)
