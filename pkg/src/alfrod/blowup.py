"""Edge insertion (blowup) at a polytope vertex.

Inserting a new edge of cone angle alpha at the vertex joining edges i-1 and
i replaces the kink z_i by two nearby kinks; the new edge's slope and rod
constant are the alpha-weighted combinations of the neighbours', and the new
boundary values f_-, f_+ are fixed by requiring the vertex relations to hold.
alpha = alpha_{i-1} + alpha_i reproduces the input.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    InconsistentVertex,
    OrderingViolation,
    ParameterConstraintViolated,
    ZeroNewSlope,
)
from .plf import rod_function_from_samples
from .polytope import RodStructure, _ZERO_SLOPE, make_rod_structure

_IDENTITY_TOL = 1e-12


@dataclass(frozen=True)
class BlowupRequest:
    rod: RodStructure
    vertex_index: int  # kink index i in 1..r, joining edges i-1 and i
    alpha: float


def blow_up(req: BlowupRequest) -> RodStructure:
    """Perform the edge insertion and return the validated new rod structure."""
    rod = req.rod
    f = rod.f
    r = f.r
    i = req.vertex_index
    alpha = float(req.alpha)
    if not 1 <= i <= r:
        raise ParameterConstraintViolated(
            f"vertex index must be in 1..{r}, got {i!r}")
    if not alpha > 0.0:
        raise ParameterConstraintViolated(f"new cone angle must be positive, got {alpha!r}")
    s = f.slopes
    fv = f.kink_values
    zk = f.kink_z
    ang = rod.angles
    p_prev, p_next = s[i - 1], s[i]
    if abs(p_prev) <= _ZERO_SLOPE or abs(p_next) <= _ZERO_SLOPE:
        raise ParameterConstraintViolated(
            "blowup requires nonzero slopes on both edges at the vertex")
    a_prev, a_next = ang[i - 1], ang[i]
    if abs(alpha - (a_prev + a_next)) <= _IDENTITY_TOL:
        return rod  # zero-length insertion: the procedure changes nothing
    num = a_prev * p_prev + a_next * p_next
    if abs(num) <= _ZERO_SLOPE:
        raise ZeroNewSlope(
            "alpha_{i-1} f'_{i-1} + alpha_i f'_i = 0: the inserted edge would have "
            "slope 0; this sits outside the nonzero-slope procedure (the two-kink "
            "zero-middle-slope rods arise instead as the a=0 kerr_taub_bolt family)")
    fi = fv[i - 1]
    den_minus = a_next * p_next - (alpha - a_prev) * p_prev
    den_plus = (alpha - a_next) * p_next - a_prev * p_prev
    gap = (p_next - p_prev) * fi * fi
    if abs(den_minus) <= _ZERO_SLOPE or abs(den_plus) <= _ZERO_SLOPE:
        raise OrderingViolation("degenerate boundary-value denominators at this alpha")
    f_minus_sq = gap * a_next / den_minus
    f_plus_sq = gap * a_prev / den_plus
    if f_minus_sq <= 0.0 or f_plus_sq <= 0.0:
        raise OrderingViolation(
            f"boundary values undefined (squares {f_minus_sq!r}, {f_plus_sq!r}); "
            "alpha is outside the admissible window")
    f_minus = math.sqrt(f_minus_sq)
    f_plus = math.sqrt(f_plus_sq)
    p_new = num / alpha
    # the new boundary values must sit on the correct side of the old vertex
    if (f_minus - fi) * p_prev >= 0.0 or (f_plus - fi) * p_next <= 0.0:
        raise OrderingViolation(
            f"boundary values f_-={f_minus!r}, f_+={f_plus!r} fall outside their "
            f"segments around f_i={fi!r}")
    if (f_plus - f_minus) / p_new <= 0.0:
        raise OrderingViolation(
            f"inserted segment would have nonpositive length: f_-={f_minus!r}, "
            f"f_+={f_plus!r}, slope {p_new!r}")

    new_slopes = np.concatenate([s[:i], [p_new], s[i:]])
    new_values = np.concatenate([fv[:i - 1], [f_minus, f_plus], fv[i:]])
    new_angles = np.concatenate([ang[:i], [alpha], ang[i:]])
    # rebuild kink positions from values and slopes, anchored at the input's
    # first kink; a zero-slope edge elsewhere keeps its original length
    zero_lengths = {}
    for e in range(1, r):
        if abs(s[e]) <= _ZERO_SLOPE:
            enew = e if e < i else e + 1
            zero_lengths[enew] = zk[e] - zk[e - 1]
    positions = [float(zk[0])]
    for j in range(1, new_values.shape[0]):
        e = j  # edge between new kinks j-1 and j (0-based)
        if e in zero_lengths:
            dz = zero_lengths[e]
        else:
            dz = (new_values[j] - new_values[j - 1]) / new_slopes[e]
        if dz <= 0.0:
            raise OrderingViolation(
                f"kink ordering violated at inserted edge {e}: dz = {dz!r}")
        positions.append(positions[-1] + dz)
    new_f = rod_function_from_samples(new_slopes, positions, float(new_values[0]))
    out = make_rod_structure(new_f, new_angles)
    # the weighted normal of the inserted edge must be the sum of its
    # neighbours' (the defining vertex relations of the insertion)
    v = out.normals
    resid = float(np.abs(v[i - 1] + v[i + 1] - v[i]).max()) / float(np.abs(v).max())
    if resid > 1e-9:
        raise InconsistentVertex(
            f"inserted-edge normal relation residual {resid!r} exceeds 1e-9")
    return out
