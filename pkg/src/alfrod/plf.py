"""Convex piecewise-linear rod functions f(z) = A + sum a_i |z - z_i|.

A rod function is the generating datum for everything else in the package:
A > 0, kinks strictly ordered, weights a_i > 0 summing to 1, so the slope
rises from -1 on the far left to +1 on the far right.
"""

from dataclasses import dataclass, field
from typing import Sequence, Tuple

import numpy as np

from .errors import (
    InconsistentLengths,
    NonIncreasingKinks,
    NonPositiveA,
    NonPositiveWeight,
    SlopeRangeViolation,
    WeightsNotNormalized,
    ZeroScale,
)

_SUM_TOL = 1e-12


@dataclass(frozen=True)
class RodFunction:
    """Validated convex piecewise-linear rod function.

    Attributes
    ----------
    A : float
        Base constant; f(z) = A + sum a_i |z - z_i|.
    kink_z : ndarray
        Strictly increasing kink positions z_1 < ... < z_r.
    kink_a : ndarray
        Positive weights with sum 1.
    """

    A: float
    kink_z: np.ndarray = field(repr=False)
    kink_a: np.ndarray = field(repr=False)

    @property
    def r(self) -> int:
        """Number of kinks (= number of finite edges + 1... the edge count is r+1)."""
        return self.kink_z.shape[0]

    @property
    def slopes(self) -> np.ndarray:
        """Edge slopes f'_0 = -1 < f'_1 < ... < f'_r = +1 (length r+1)."""
        return np.concatenate(([-1.0], -1.0 + 2.0 * np.cumsum(self.kink_a)))

    @property
    def kink_values(self) -> np.ndarray:
        """f(z_i) at each kink."""
        return self.A + np.abs(self.kink_z[:, None] - self.kink_z[None, :]) @ self.kink_a

    @property
    def kinks(self) -> Tuple[Tuple[float, float], ...]:
        return tuple((float(z), float(a)) for z, a in zip(self.kink_z, self.kink_a))


def build_rod_function(A: float, kinks: Sequence[Tuple[float, float]]) -> RodFunction:
    """Validate and build a RodFunction from (A, [(z_i, a_i), ...]).

    Weights within 1e-12 of summing to 1 are renormalized exactly;
    anything further off is rejected as a user error.
    """
    kinks = list(kinks)
    if not kinks or not all(np.isfinite(v) for zk in kinks for v in zk) or not np.isfinite(A):
        raise InconsistentLengths("need a nonempty sequence of finite (z, a) pairs")
    zk = np.asarray([z for z, _ in kinks], dtype=float)
    ak = np.asarray([a for _, a in kinks], dtype=float)
    if np.any(np.diff(zk) <= 0.0):
        raise NonIncreasingKinks(f"kink positions must strictly increase, got {zk.tolist()}")
    if np.any(ak <= 0.0):
        raise NonPositiveWeight(f"kink weights must be positive, got {ak.tolist()}")
    total = float(ak.sum())
    if abs(total - 1.0) > _SUM_TOL:
        raise WeightsNotNormalized(f"kink weights must sum to 1, got {total!r}")
    ak = ak / total
    if A <= 0.0:
        raise NonPositiveA(f"base constant must be positive, got {A!r}")
    f = RodFunction(A=float(A), kink_z=zk, kink_a=ak)
    f.kink_z.setflags(write=False)
    f.kink_a.setflags(write=False)
    # with A > 0 and positive weights, positivity and slope monotonicity are
    # automatic; assert them anyway as a guard against degenerate input
    assert np.all(np.diff(f.slopes) > 0.0)
    assert np.all(f.kink_values > 0.0)
    return f


def rod_function_from_samples(slopes: Sequence[float],
                              kink_positions: Sequence[float],
                              value_at_first_kink: float) -> RodFunction:
    """Build a RodFunction from edge slopes, kink positions and f(z_1).

    Takes r+1 slopes (strictly increasing from -1 to +1) and r positions.
    """
    sl = np.asarray(slopes, dtype=float)
    zk = np.asarray(kink_positions, dtype=float)
    if sl.ndim != 1 or zk.ndim != 1 or sl.shape[0] != zk.shape[0] + 1:
        raise InconsistentLengths(
            f"need r+1 slopes for r positions, got {sl.shape[0]} and {zk.shape[0]}")
    if abs(sl[0] + 1.0) > _SUM_TOL or abs(sl[-1] - 1.0) > _SUM_TOL:
        raise SlopeRangeViolation(f"extreme slopes must be -1 and +1, got {sl.tolist()}")
    if np.any(np.diff(sl) <= 0.0):
        raise SlopeRangeViolation(f"slopes must strictly increase, got {sl.tolist()}")
    ak = np.diff(sl) / 2.0
    # f(z_1) = A + sum_i a_i (z_i - z_1) since all kinks sit at or right of z_1
    A = float(value_at_first_kink) - float(ak[1:] @ (zk[1:] - zk[0])) if zk.shape[0] > 1 \
        else float(value_at_first_kink)
    if A <= 0.0:
        raise NonPositiveA(f"recovered base constant is not positive: {A!r}")
    return build_rod_function(A, list(zip(zk, ak)))


def eval_rod_function(f: RodFunction, z: float) -> Tuple[float, float, float]:
    """Evaluate f at z, returning (value, left_slope, right_slope)."""
    value = f.A + float(f.kink_a @ np.abs(z - f.kink_z))
    left = -1.0 + 2.0 * float(f.kink_a[f.kink_z < z].sum())
    right = -1.0 + 2.0 * float(f.kink_a[f.kink_z <= z].sum())
    return value, left, right


def rescale_rod_function(f: RodFunction, a: float, b: float) -> RodFunction:
    """Return |a|^-1 f(a z + b): kinks move to (z_i - b)/a, A scales to A/|a|."""
    if a == 0.0:
        raise ZeroScale("rescale factor must be nonzero")
    zk = (f.kink_z - b) / a
    ak = f.kink_a
    if a < 0.0:
        zk = zk[::-1]
        ak = ak[::-1]
    return build_rod_function(f.A / abs(a), list(zip(zk, ak)))


def center_rod_function(f: RodFunction) -> RodFunction:
    """Translate so that sum a_i z_i = 0 (makes the moment-map shift vanish)."""
    return rescale_rod_function(f, 1.0, float(f.kink_a @ f.kink_z))
