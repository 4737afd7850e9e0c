"""Rod constants, edge normals, moment polytopes and regularity.

Edge indexing: a rod function with r kinks z_1 < ... < z_r cuts the axis into
r+1 edges, numbered 0 (z < z_1) through r (z > z_r), with slopes
-1 = f'_0 < f'_1 < ... < f'_r = +1.  Kink i joins edges i-1 and i.  Normals
are 2-vectors in the torus coordinate frame, component order
(coefficient of d/dx3, coefficient of d/dt).
"""

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np

from .errors import (
    DegenerateBasis,
    InconsistentLengths,
    InconsistentVertex,
    ParameterConstraintViolated,
)
from .plf import RodFunction

_ZERO_SLOPE = 1e-12


def rod_constants(f: RodFunction) -> np.ndarray:
    """Rod constants F_0..F_r, with F_0 = 0 and NaN on a zero-slope edge.

    Across kink i between two nonzero-slope edges,
    F_i - F_{i-1} = (2/k) f(z_i)^2 (1/f'_i - 1/f'_{i-1}); a zero-slope edge
    is bridged in one step, the bridge picking up -2*(edge length)*f.
    """
    s = f.slopes
    fv = f.kink_values
    zk = f.kink_z
    r = f.r
    k = 2.0 * f.A
    F = np.full(r + 1, np.nan)
    F[0] = 0.0
    j = 0
    while j < r:
        if abs(s[j + 1]) > _ZERO_SLOPE:
            F[j + 1] = F[j] + (2.0 / k) * fv[j] ** 2 * (1.0 / s[j + 1] - 1.0 / s[j])
            j += 1
        else:
            gap = zk[j + 1] - zk[j]
            F[j + 2] = F[j] + (2.0 / k) * (
                fv[j] ** 2 * (1.0 / s[j + 2] - 1.0 / s[j]) - 2.0 * gap * fv[j])
            j += 2
    return F


def edge_normals(f: RodFunction, angles: Optional[Sequence[float]] = None) -> np.ndarray:
    """Weighted edge normals v_i = alpha_i f'_i (1, F_i), zero-slope edges
    contributing (0, (2/k) alpha_i f_i^2)."""
    r = f.r
    if angles is None:
        angles = np.ones(r + 1)
    angles = np.asarray(angles, dtype=float)
    if angles.shape != (r + 1,):
        raise InconsistentLengths(f"need {r + 1} angles, got {angles.shape}")
    if np.any(angles <= 0.0):
        raise ParameterConstraintViolated(f"cone angles must be positive: {angles.tolist()}")
    s = f.slopes
    F = rod_constants(f)
    fv = f.kink_values
    k = 2.0 * f.A
    v = np.zeros((r + 1, 2))
    for e in range(r + 1):
        if abs(s[e]) > _ZERO_SLOPE:
            v[e, 0] = angles[e] * s[e]
            v[e, 1] = angles[e] * s[e] * F[e]
        else:
            # edge e lies between kinks e-1 and e (0-based e-1), f constant on it
            v[e, 1] = (2.0 / k) * angles[e] * fv[e - 1] ** 2
    return v


@dataclass(frozen=True)
class RodStructure:
    """A rod function together with its per-edge cone angles and derived data."""
    f: RodFunction
    angles: np.ndarray = field(repr=False)
    F: np.ndarray = field(repr=False)
    normals: np.ndarray = field(repr=False)

    @property
    def k(self) -> float:
        return 2.0 * self.f.A

    @property
    def r(self) -> int:
        return self.f.r


def make_rod_structure(f: RodFunction,
                       angles: Optional[Sequence[float]] = None) -> RodStructure:
    r = f.r
    if angles is None:
        angles = np.ones(r + 1)
    angles = np.asarray(angles, dtype=float)
    normals = edge_normals(f, angles)
    rs = RodStructure(f=f, angles=angles, F=rod_constants(f), normals=normals)
    rs.angles.setflags(write=False)
    rs.F.setflags(write=False)
    rs.normals.setflags(write=False)
    return rs


@dataclass(frozen=True)
class DelzantReport:
    """Per-interior-vertex integer relation search and the smoothness verdict."""
    entries: Tuple[Tuple[int, int, int, float], ...]  # (j, epsilon, ell, residual)
    smooth: bool
    convex: bool
    unit_angles: bool
    tol: float
    search_bound: int

    @property
    def ells(self) -> Tuple[int, ...]:
        return tuple(e[2] for e in self.entries)

    def to_dict(self) -> dict:
        return {
            "entries": [{"vertex": j, "epsilon": e, "ell": l, "residual": res}
                        for j, e, l, res in self.entries],
            "smooth": self.smooth,
            "convex": self.convex,
            "unit_angles": self.unit_angles,
            "tol": self.tol,
            "search_bound": self.search_bound,
        }


@dataclass(frozen=True)
class PolytopeData:
    """Moment polytope vertices, ordered along the boundary.

    Canonical coordinates are (x1, mu); the first and last vertices are the
    two ends (0, -1), (0, +1) of the edge at infinity.
    """
    vertices_canonical: np.ndarray
    vertex_residuals: np.ndarray
    angles: np.ndarray
    vertices_lattice: Optional[np.ndarray] = None
    basis: Optional[np.ndarray] = None
    delzant: Optional[DelzantReport] = None


def moment_shift(f: RodFunction) -> float:
    """Centering shift making the edge at infinity span mu in (-1, 1)."""
    return float(f.kink_a @ f.kink_z) / f.A


def polytope_vertices(f: RodFunction,
                      angles: Optional[Sequence[float]] = None) -> PolytopeData:
    """Vertices in canonical (x1, mu) coordinates.

    Each kink vertex has x1 = 1/f(z_i); mu is computed from every adjacent
    nonzero-slope edge and cross-checked (the spread is the recorded residual).
    """
    r = f.r
    s = f.slopes
    F = rod_constants(f)
    fv = f.kink_values
    zk = f.kink_z
    k = 2.0 * f.A
    shift = moment_shift(f)
    if angles is None:
        angles = np.ones(r + 1)
    verts = [(0.0, -1.0)]
    residuals = [0.0]
    for j in range(r):
        x1 = 1.0 / fv[j]
        mus = []
        for e in (j, j + 1):
            if abs(s[e]) > _ZERO_SLOPE:
                mus.append(-F[e] / fv[j] + (2.0 / k) * (fv[j] / s[e] - zk[j]) + shift)
        res = max(mus) - min(mus)
        if res > 1e-9 * (1.0 + max(abs(m) for m in mus)):
            raise InconsistentVertex(
                f"mu at kink {j + 1} disagrees between adjacent edges: {mus}")
        verts.append((x1, sum(mus) / len(mus)))
        residuals.append(res)
    verts.append((0.0, 1.0))
    residuals.append(0.0)
    return PolytopeData(vertices_canonical=np.asarray(verts),
                        vertex_residuals=np.asarray(residuals),
                        angles=np.asarray(angles, dtype=float))


def _cross(u, v) -> float:
    # orientation form matching edges ordered by increasing z
    return u[1] * v[0] - u[0] * v[1]


def lattice_coords(rod: RodStructure,
                   basis: Optional[np.ndarray] = None) -> PolytopeData:
    """Vertices in lattice-adapted coordinates.

    The default basis is (alpha_1 v_1, -alpha_0 v_0) built from the weighted
    normals; a point m = (x1, mu) gets coordinates (<m, e1>, <m, e2>) with
    <m, w> = w_t x1 + w_x3 mu.
    """
    data = polytope_vertices(rod.f, rod.angles)
    if basis is None:
        basis = np.vstack([rod.normals[1], -rod.normals[0]])
    basis = np.asarray(basis, dtype=float)
    det = _cross(basis[0], basis[1])
    if abs(det) <= 1e-12 * max(1.0, float(np.abs(basis).max()) ** 2):
        raise DegenerateBasis(f"lattice basis vectors are parallel: {basis.tolist()}")
    vc = data.vertices_canonical
    lat = np.column_stack([
        basis[0, 1] * vc[:, 0] + basis[0, 0] * vc[:, 1],
        basis[1, 1] * vc[:, 0] + basis[1, 0] * vc[:, 1],
    ])
    return PolytopeData(vertices_canonical=vc,
                        vertex_residuals=data.vertex_residuals,
                        angles=data.angles,
                        vertices_lattice=lat,
                        basis=basis)


def delzant_check(normals: np.ndarray,
                  angles: Optional[Sequence[float]] = None,
                  tol: float = 1e-8,
                  search_bound: int = 64) -> DelzantReport:
    """Integer-relation search v_{j-1} + eps v_{j+1} = ell v_j at each interior vertex.

    The verdict is smooth iff every best residual is within tol and all cone
    angles equal 1 (the angle weighting is already carried in the normals).
    """
    nv = np.asarray(normals, dtype=float)
    n_edges = nv.shape[0]
    scale = float(np.abs(nv).max())
    entries = []
    for j in range(1, n_edges - 1):
        best = None
        for eps in (1, -1):
            target = nv[j - 1] + eps * nv[j + 1]
            for ell in range(-search_bound, search_bound + 1):
                res = float(np.abs(target - ell * nv[j]).max()) / scale
                if best is None or res < best[2]:
                    best = (eps, ell, res)
        entries.append((j, best[0], best[1], best[2]))
    crosses = [_cross(nv[i - 1], nv[i]) for i in range(1, n_edges)]
    convex = all(c > 0.0 for c in crosses)
    if angles is None:
        unit = True
    else:
        unit = bool(np.all(np.abs(np.asarray(angles, dtype=float) - 1.0) <= 1e-12))
    smooth = unit and all(e[3] <= tol for e in entries)
    return DelzantReport(entries=tuple(entries), smooth=smooth, convex=convex,
                         unit_angles=unit, tol=tol, search_bound=search_bound)


def solve_cone_angles_r2(a: float, b: float, m: float, n: float
                         ) -> Tuple[float, float, float]:
    """Cone angles (alpha_0, alpha_1, alpha_2) of the two-kink rod with data
    (a, b, m, n), b^2 = a^2 + m^2 - n^2; n = 0 is the smooth rotating family."""
    if not (m > 0.0 and b > 0.0 and a >= 0.0):
        raise ParameterConstraintViolated(f"need m>0, b>0, a>=0; got {(a, b, m, n)}")
    if abs(b * b - (a * a + m * m - n * n)) > 1e-9 * max(1.0, b * b):
        raise ParameterConstraintViolated(
            f"b^2 = a^2 + m^2 - n^2 violated for {(a, b, m, n)}")
    if abs(n) > m:
        raise ParameterConstraintViolated(f"|n| <= m violated for {(a, b, m, n)}")
    if m + n <= 0.0:
        raise ParameterConstraintViolated(f"m + n must be positive for {(a, b, m, n)}")
    if n == 0.0:
        return (1.0, 1.0, 1.0)
    a0 = ((b + m) ** 2 - (a - n) ** 2) / (4.0 * abs(n) * b)
    a2 = ((b + m) ** 2 - (a + n) ** 2) / (4.0 * abs(n) * b)
    return (a0, 1.0, a2)


def bolt_renormalized_angle(a: float, b: float, m: float, n: float) -> float:
    """For a = 0, the bolt angle 2*pi/alpha_0 after renormalizing by 1/alpha_0."""
    if a != 0.0 or n == 0.0:
        raise ParameterConstraintViolated("bolt angle renormalization needs a=0, n!=0")
    a0 = solve_cone_angles_r2(a, b, m, n)[0]
    return 2.0 * math.pi / a0


def _positive_nullspace_vector(M: np.ndarray, nvar: int,
                               sv_tol: float = 1e-9) -> Optional[np.ndarray]:
    """A strictly positive vector in the nullspace of M, or None.

    Handles nullspace dimension 1 exactly; higher dimensions by deterministic
    direction sampling (sufficient for the small systems arising here).
    """
    if M.shape[0] == 0:
        M = np.zeros((1, nvar))
    _, sv, vt = np.linalg.svd(M)
    smax = sv[0] if sv.size else 0.0
    basis = vt[[i for i in range(nvar)
                if i >= sv.size or sv[i] <= sv_tol * max(1.0, smax)]]
    d = basis.shape[0]
    if d == 0:
        return None

    def _try(vec):
        mx = np.abs(vec).max()
        if mx == 0.0:
            return None
        for sgn in (1.0, -1.0):
            w = sgn * vec
            if np.all(w > 1e-9 * mx):
                return w / mx
        return None

    if d == 1:
        return _try(basis[0])
    if d == 2:
        for theta in np.linspace(0.0, math.pi, 721):
            w = _try(math.cos(theta) * basis[0] + math.sin(theta) * basis[1])
            if w is not None:
                return w
        return None
    rng = np.random.default_rng(0)
    for _ in range(4000):
        w = _try(rng.standard_normal(d) @ basis)
        if w is not None:
            return w
    return None


def solve_cone_angles_general(f: RodFunction,
                              ell: Sequence[int],
                              tol: float = 1e-9) -> Optional[np.ndarray]:
    """Positive cone angles solving alpha_{j-1} v_{j-1} + alpha_{j+1} v_{j+1}
    = ell_j alpha_j v_j on the unweighted normals, normalized to alpha_0 = 1.

    Returns None (infeasible) when no positive solution exists within tol.
    """
    r = f.r
    ell = list(ell)
    if len(ell) != r - 1:
        raise InconsistentLengths(f"need {r - 1} integers ell, got {len(ell)}")
    if any(abs(l) > 64 for l in ell):
        raise ParameterConstraintViolated("|ell| must be <= 64")
    nv = edge_normals(f)  # unit angles
    scale = float(np.abs(nv).max())
    M = np.zeros((2 * (r - 1), r + 1))
    for j in range(1, r):
        row = 2 * (j - 1)
        M[row:row + 2, j - 1] += nv[j - 1]
        M[row:row + 2, j + 1] += nv[j + 1]
        M[row:row + 2, j] -= ell[j - 1] * nv[j]
    alpha = _positive_nullspace_vector(M / scale, r + 1)
    if alpha is None:
        return None
    alpha = alpha / alpha[0]
    res = float(np.abs(M @ alpha).max()) / (scale * float(np.abs(alpha).max()))
    if res > tol:
        return None
    return alpha


# --------------------------------------------------------------------------
# smooth classification: exhaustive search over the integer relation data
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Family:
    """One connected family of smooth solutions with r kinks."""
    name: str
    r: int
    dimension: int  # continuous parameters modulo scale and translation
    epsilon: Tuple[int, ...]
    ell: Tuple[int, ...]
    zero_slope_edge: Optional[int]
    constraints: Tuple[str, ...]
    witness: Optional[dict] = None

    def to_dict(self) -> dict:
        return {"name": self.name, "r": self.r, "dimension": self.dimension,
                "epsilon": list(self.epsilon), "ell": list(self.ell),
                "zero_slope_edge": self.zero_slope_edge,
                "constraints": list(self.constraints), "witness": self.witness}


@dataclass(frozen=True)
class ClassificationResult:
    r: int
    families: Tuple[Family, ...]
    notes: Tuple[str, ...]
    search_bound: int

    def to_dict(self) -> dict:
        return {"r": self.r, "families": [f.to_dict() for f in self.families],
                "notes": list(self.notes), "search_bound": self.search_bound}


def _solve_slopes(r, eps, ells, zero_edge):
    """Solve the first-component relations for the interior slopes.

    Returns ('isolated', [s]) or ('family', [s, ...]) with each s the full
    slope vector (-1, s_1, ..., s_{r-1}, 1), or None when inconsistent.
    """
    nu = r - 1
    rows, rhs = [], []
    for j in range(1, r):
        row = np.zeros(nu)
        c = 0.0
        for idx, coef in ((j - 1, 1.0), (j + 1, float(eps[j - 1])),
                          (j, -float(ells[j - 1]))):
            if idx == zero_edge:
                continue  # zero-slope normal has vanishing first component
            if idx == 0:
                c += coef * (-1.0)
            elif idx == r:
                c += coef * 1.0
            else:
                row[idx - 1] += coef
        rows.append(row)
        rhs.append(-c)
    if zero_edge is not None:
        row = np.zeros(nu)
        row[zero_edge - 1] = 1.0
        rows.append(row)
        rhs.append(0.0)
    A = np.vstack(rows)
    b = np.asarray(rhs)
    sol, *_ = np.linalg.lstsq(A, b, rcond=None)
    if float(np.abs(A @ sol - b).max()) > 1e-9:
        return None
    _, sv, vt = np.linalg.svd(A)
    smax = sv[0] if sv.size else 0.0
    null = [vt[i] for i in range(nu)
            if i >= sv.size or sv[i] <= 1e-9 * max(1.0, smax)]

    def full(u):
        s = np.concatenate(([-1.0], u, [1.0]))
        if zero_edge is not None:
            s[zero_edge] = 0.0
        return s

    def admissible(s):
        if np.any(np.diff(s) <= 1e-9):
            return False
        for e in range(1, r):
            if e == zero_edge:
                continue
            if abs(s[e]) <= 1e-9:
                return False  # zero slopes handled by the zero_edge branch
        return True

    if not null:
        s = full(sol)
        return ("isolated", [s]) if admissible(s) else None
    if len(null) == 1:
        samples = [full(sol + t * null[0]) for t in np.linspace(-3.0, 3.0, 241)]
        samples = [s for s in samples if admissible(s)]
        return ("family", samples) if samples else None
    # higher-dimensional slope families do not occur for r <= 4, but sample anyway
    grid = np.linspace(-3.0, 3.0, 31)
    samples = []
    for coefs in itertools.product(grid, repeat=len(null)):
        s = full(sol + sum(c * n for c, n in zip(coefs, null)))
        if admissible(s):
            samples.append(s)
    return ("family", samples) if samples else None


def _value_feasible(r, s, eps, ells, zero_edge):
    """Check the second-component relations for positive kink values.

    The relations are linear in the squared kink values (plus, across a
    zero-slope edge, the product length*value); feasibility means the linear
    system has a strictly positive nullspace vector that also respects the
    kink ordering and yields A > 0.  Returns a witness dict or None.
    """
    nvar = r + (1 if zero_edge is not None else 0)
    unit = np.eye(nvar)
    G = [None] * (r + 1)
    G[0] = np.zeros(nvar)
    extra_rows = []
    j = 0
    while j < r:
        e = j + 1
        if e == zero_edge:
            eq = unit[j] - unit[j + 1]  # kink values across a flat edge agree
            extra_rows.append(eq)
            G[j + 2] = G[j] + (1.0 / s[j + 2] - 1.0 / s[j]) * unit[j] - 2.0 * unit[r]
            j += 2
        else:
            G[j + 1] = G[j] + (1.0 / s[j + 1] - 1.0 / s[j]) * unit[j]
            j += 1

    def term(e, coef):
        if e == zero_edge:
            return coef * unit[e - 1]  # second component (2/k) f^2, value at kink e-1
        return coef * s[e] * G[e]

    rows = list(extra_rows)
    for j in range(1, r):
        rows.append(term(j - 1, 1.0) + term(j + 1, float(eps[j - 1]))
                    - term(j, float(ells[j - 1])))
    x = _positive_nullspace_vector(np.vstack(rows), nvar)
    if x is None:
        return None
    fvals = np.sqrt(x[:r])
    scale = float(fvals.max())
    zpos = [0.0]
    for j in range(r - 1):
        e = j + 1
        if e == zero_edge:
            dz = x[r] / fvals[j]
        else:
            dz = (fvals[j + 1] - fvals[j]) / s[e]
        if dz <= 1e-9 * scale:
            return None
        zpos.append(zpos[-1] + dz)
    weights = (s[1:] - s[:-1]) / 2.0
    A = fvals[0] - float(weights[1:] @ (np.asarray(zpos[1:]) - zpos[0]))
    if A <= 1e-9 * scale:
        return None
    return {"slopes": [float(v) for v in s],
            "values": [float(v) for v in fvals],
            "positions": [float(v) for v in zpos],
            "A": float(A)}


def _search_smooth(r, ell_bound):
    """All integer relation data (eps, ell, zero-slope edge) admitting smooth
    solutions, each tagged 'isolated' or 'family' with witnesses."""
    found = []
    for eps in itertools.product((1, -1), repeat=r - 1):
        for ells in itertools.product(range(-ell_bound, ell_bound + 1), repeat=r - 1):
            for zero_edge in (None, *range(1, r)):
                sol = _solve_slopes(r, eps, ells, zero_edge)
                if sol is None:
                    continue
                kind, samples = sol
                witnesses = []
                for s in samples:
                    w = _value_feasible(r, s, eps, ells, zero_edge)
                    if w is not None:
                        witnesses.append(w)
                if not witnesses:
                    continue
                if kind == "family" and len(witnesses) < 3:
                    continue  # isolated pinch of a slope line, not an open family
                found.append({"kind": kind, "eps": eps, "ells": ells,
                              "zero_edge": zero_edge, "witnesses": witnesses})
    return found


def classify_smooth(r: int, ell_bound: int = 8) -> ClassificationResult:
    """Enumerate the families of smooth (all cone angles 1) rod structures
    with r kinks, by exhaustive search over the integer relation data."""
    if r < 1:
        raise ParameterConstraintViolated(f"kink count must be >= 1, got {r}")
    if r == 1:
        fam = Family(name="taub-nut", r=1, dimension=0, epsilon=(), ell=(),
                     zero_slope_edge=None,
                     constraints=("f(z) = A + |z - z_1| up to scale and translation",),
                     witness={"slopes": [-1.0, 1.0], "values": [2.0],
                              "positions": [0.0], "A": 2.0})
        return ClassificationResult(r=1, families=(fam,),
                                    notes=("no interior vertices: any single-kink "
                                           "rod function is smooth",),
                                    search_bound=ell_bound)
    raw = _search_smooth(r, ell_bound)
    families, notes = [], []
    for entry in raw:
        eps, ells, zero_edge = entry["eps"], entry["ells"], entry["zero_edge"]
        w0 = entry["witnesses"][0]
        if r == 2 and entry["kind"] == "family" and zero_edge is None and ells == (0,):
            families.append(Family(
                name="kerr", r=2, dimension=1, epsilon=eps, ell=ells,
                zero_slope_edge=None,
                constraints=("slopes (-1, -p, 1) with p in (-1, 1), p != 0",
                             "f_2^2 = f_1^2 (1 - p) / (1 + p)",
                             "p = 0 limit is the Schwarzschild rod"),
                witness=w0))
        elif r == 2 and zero_edge == 1 and ells == (1,):
            families.append(Family(
                name="taub-bolt", r=2, dimension=0, epsilon=eps, ell=ells,
                zero_slope_edge=1,
                constraints=("slopes (-1, 0, 1)", "flat edge length = f_1 / 2"),
                witness=w0))
        elif r == 2 and zero_edge == 1 and ells == (0,):
            notes.append("zero-slope ell=0 solution is the Schwarzschild rod, "
                         "contained in the closure of the kerr family")
        elif r == 2 and zero_edge == 1 and ells == (-1,):
            notes.append("zero-slope ell=-1 solution is the orientation-reversed "
                         "taub-bolt (z -> -z)")
        elif (r == 3 and entry["kind"] == "family" and zero_edge is None
              and eps == (1, 1) and ells == (1, 1)):
            families.append(Family(
                name="chen-teo", r=3, dimension=1, epsilon=eps, ell=ells,
                zero_slope_edge=None,
                constraints=("slopes (-1, -p, q, 1) with p + q = 1, p in (0, 1)",
                             "f_1 = f_2 / sqrt(q)", "f_3 = f_2 / sqrt(p)"),
                witness=w0))
        else:
            families.append(Family(
                name="unclassified", r=r, dimension=1 if entry["kind"] == "family" else 0,
                epsilon=eps, ell=ells, zero_slope_edge=zero_edge,
                constraints=(), witness=w0))
    if r >= 4 and not families:
        notes.append(f"no admissible integer relation data with |ell| <= {ell_bound}: "
                     "the slope and value constraints are jointly infeasible for r >= 4")
    return ClassificationResult(r=r, families=tuple(families), notes=tuple(notes),
                                search_bound=ell_bound)
