"""Hot numeric kernels.

Every function here is written in plain scalar numpy/math style so the same
source runs both as a numba @njit kernel and as a pure-Python fallback.  The
fallback is selected by setting the environment variable ALFROD_DISABLE_NUMBA
to a truthy value before import (or automatically when numba is missing).

The un-jitted originals stay importable under their underscored names so the
benchmark in benchmarks/bench_kernels.py can time both paths in one process.

Kernel conventions:
  * a rod function is passed as (A, zk, ak): base constant and the kink
    position/weight arrays;
  * h_const is the additive constant of the conjugate function H -- callers
    pick the gauge;
  * metric matrices are 4x4 in coordinate order (rho, z, x3, t).
"""

import math
import os
import types

import numpy as np


def _u0_terms(rho, z):
    """Building-block harmonic potential 2R + z*log((R-z)/(R+z)) and friends.

    Returns (U0, U0_rho, U0_z, U0_rhorho, U0_rhoz, U0_zz, H0).  The log is
    evaluated in a cancellation-safe form: (R-z)(R+z) = rho^2, so
    log((R-z)/(R+z)) = 2*log(rho/(R+z)) = -2*log(rho/(R-z)), and we pick the
    branch that avoids the cancelling difference for |z| >> rho.
    """
    big_r = math.hypot(rho, z)
    if z >= 0.0:
        lg = 2.0 * math.log(rho / (big_r + z))
    else:
        lg = -2.0 * math.log(rho / (big_r - z))
    u0 = 2.0 * big_r + z * lg
    u0_r = 2.0 * big_r / rho
    u0_z = lg
    u0_rr = 2.0 / big_r - 2.0 * big_r / (rho * rho)
    u0_rz = 2.0 * z / (rho * big_r)
    u0_zz = -2.0 / big_r
    # H0 = z*R + rho^2 * log((R+z)/rho), and log((R+z)/rho) = -lg/2
    h0 = z * big_r - 0.5 * rho * rho * lg
    return (u0, u0_r, u0_z, u0_rr, u0_rz, u0_zz, h0)


def _potential_terms(A, zk, ak, rho, z):
    """U = A log rho^2 + sum a_i U0(rho, z - z_i), with all derivatives and H.

    Returns array (U, U_rho, U_z, U_rhorho, U_rhoz, U_zz, H_raw) where H_raw
    carries no gauge constant.
    """
    out = np.zeros(7)
    lr = math.log(rho)
    out[0] = 2.0 * A * lr
    out[1] = 2.0 * A / rho
    out[3] = -2.0 * A / (rho * rho)
    out[6] = 2.0 * A * z
    for i in range(zk.shape[0]):
        u0, u0_r, u0_z, u0_rr, u0_rz, u0_zz, h0 = _u0_terms(rho, z - zk[i])
        out[0] += ak[i] * u0
        out[1] += ak[i] * u0_r
        out[2] += ak[i] * u0_z
        out[3] += ak[i] * u0_rr
        out[4] += ak[i] * u0_rz
        out[5] += ak[i] * u0_zz
        out[6] += ak[i] * h0
    return out


def _potential_grid(A, zk, ak, rhos, zs):
    """Vectorised _potential_terms over paired coordinate arrays."""
    n = rhos.shape[0]
    out = np.empty((n, 7))
    for j in range(n):
        out[j, :] = _potential_terms(A, zk, ak, rhos[j], zs[j])
    return out


def _metric_scalars(A, zk, ak, h_const, rho, z):
    """Ansatz scalars (e2nu, V, F, x1) at an interior point.

    F uses the H gauge fixed by h_const.
    """
    t = _potential_terms(A, zk, ak, rho, z)
    u_r = t[1]
    u_z = t[2]
    u_rz = t[4]
    u_zz = t[5]
    h = t[6] + h_const
    k = 2.0 * A
    denom = u_rz * u_rz + u_zz * u_zz
    v = -(rho * u_r + u_r * u_r * u_zz / denom) / k
    e2nu = 0.25 * v * rho * rho * denom
    f = -(-rho * u_r * u_r * u_rz / denom + rho * rho * u_z + 2.0 * h) / k
    x1 = 2.0 / (rho * u_r)
    return (e2nu, v, f, x1)


def _metric_matrix(A, zk, ak, h_const, kahler, rho, z):
    """Full 4x4 metric in (rho, z, x3, t); kahler=True rescales by x1^2."""
    e2nu, v, f, x1 = _metric_scalars(A, zk, ak, h_const, rho, z)
    g = np.zeros((4, 4))
    g[0, 0] = e2nu
    g[1, 1] = e2nu
    g[2, 2] = v * rho * rho + f * f / v
    g[3, 3] = 1.0 / v
    g[2, 3] = -f / v
    g[3, 2] = -f / v
    if kahler:
        g *= x1 * x1
    return g


def _christoffel_fd(A, zk, ak, h_const, kahler, rho, z, h):
    """Christoffel symbols Gamma[a, b, c] from central differences of the metric.

    The metric depends on (rho, z) only, so derivative indices >= 2 vanish.
    """
    g0 = _metric_matrix(A, zk, ak, h_const, kahler, rho, z)
    ginv = np.linalg.inv(g0)
    dg = np.zeros((2, 4, 4))
    dg[0] = (_metric_matrix(A, zk, ak, h_const, kahler, rho + h, z)
             - _metric_matrix(A, zk, ak, h_const, kahler, rho - h, z)) / (2.0 * h)
    dg[1] = (_metric_matrix(A, zk, ak, h_const, kahler, rho, z + h)
             - _metric_matrix(A, zk, ak, h_const, kahler, rho, z - h)) / (2.0 * h)
    gam = np.zeros((4, 4, 4))
    for a in range(4):
        for b in range(4):
            for c in range(4):
                s = 0.0
                for d in range(4):
                    term = 0.0
                    if b < 2:
                        term += dg[b, d, c]
                    if c < 2:
                        term += dg[c, d, b]
                    if d < 2:
                        term -= dg[d, b, c]
                    s += ginv[a, d] * term
                gam[a, b, c] = 0.5 * s
    return gam


def _ricci_fd(A, zk, ak, h_const, kahler, rho, z, h):
    """Ricci tensor by one more layer of central differences over Christoffels."""
    gam0 = _christoffel_fd(A, zk, ak, h_const, kahler, rho, z, h)
    dgam = np.zeros((2, 4, 4, 4))
    dgam[0] = (_christoffel_fd(A, zk, ak, h_const, kahler, rho + h, z, h)
               - _christoffel_fd(A, zk, ak, h_const, kahler, rho - h, z, h)) / (2.0 * h)
    dgam[1] = (_christoffel_fd(A, zk, ak, h_const, kahler, rho, z + h, h)
               - _christoffel_fd(A, zk, ak, h_const, kahler, rho, z - h, h)) / (2.0 * h)
    ric = np.zeros((4, 4))
    for a in range(4):
        for b in range(4):
            s = 0.0
            for c in range(2):
                s += dgam[c, c, a, b]
            if a < 2:
                for c in range(4):
                    s -= dgam[a, c, c, b]
            for c in range(4):
                for d in range(4):
                    s += gam0[c, c, d] * gam0[d, a, b]
                    s -= gam0[c, a, d] * gam0[d, c, b]
            ric[a, b] = s
    return ric


def _ricci_fd_richardson(A, zk, ak, h_const, kahler, rho, z, h):
    """One Richardson step on the O(h^2) Ricci stencil: (4 R(h/2) - R(h)) / 3."""
    coarse = _ricci_fd(A, zk, ak, h_const, kahler, rho, z, h)
    fine = _ricci_fd(A, zk, ak, h_const, kahler, rho, z, 0.5 * h)
    return (4.0 * fine - coarse) / 3.0


def _scalar_curvature_fd(A, zk, ak, h_const, kahler, rho, z, h, richardson):
    """Scalar curvature of g (or of g_K when kahler=True) at one point."""
    if richardson:
        ric = _ricci_fd_richardson(A, zk, ak, h_const, kahler, rho, z, h)
    else:
        ric = _ricci_fd(A, zk, ak, h_const, kahler, rho, z, h)
    g = _metric_matrix(A, zk, ak, h_const, kahler, rho, z)
    ginv = np.linalg.inv(g)
    s = 0.0
    for a in range(4):
        for b in range(4):
            s += ginv[a, b] * ric[a, b]
    return s


def _env_flag_disabled():
    return os.environ.get("ALFROD_DISABLE_NUMBA", "").strip().lower() in (
        "1", "true", "yes", "on")


NUMBA_ENABLED = not _env_flag_disabled()
if NUMBA_ENABLED:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover - numba is a declared dependency
        NUMBA_ENABLED = False

_KERNEL_NAMES = ("u0_terms", "potential_terms", "potential_grid",
                 "metric_scalars", "metric_matrix", "christoffel_fd",
                 "ricci_fd", "ricci_fd_richardson", "scalar_curvature_fd")

# The pure-Python originals stay reachable under *_py for the benchmark.
# They are rebuilt over an isolated globals dict so that their internal calls
# keep resolving to the pure versions even after the underscored module
# globals are rebound to the jitted ones below.
_pure_globals = dict(globals())
for _name in _KERNEL_NAMES:
    _orig = globals()["_" + _name]
    _copy = types.FunctionType(_orig.__code__, _pure_globals, _orig.__name__,
                               _orig.__defaults__, _orig.__closure__)
    _pure_globals["_" + _name] = _copy
    globals()[_name + "_py"] = _copy

if NUMBA_ENABLED:
    _jit = njit(cache=True, fastmath=False)
    # rebind the underscored globals so jitted callers resolve jitted callees
    for _name in _KERNEL_NAMES:
        globals()["_" + _name] = _jit(globals()["_" + _name])
for _name in _KERNEL_NAMES:
    globals()[_name] = globals()["_" + _name]
del _name
