"""Balls attached to space-like vectors: caps, separations, packings, residuals.

A space-like direction cuts the projective light cone (a sphere in frame
coordinates) along a spherical cap; after stereographic projection that cap
becomes a Euclidean ball in dimension rank - 2.  Pairwise relations between
balls reduce to the bilinear form of the normalized vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .forms import DEFAULT_ZERO_TOL, NotLorentzianError, signature
from .orbits import VectorClass, WeightRecord, ProjectivePoint, bilinear, normalize_spacelike

_ALGEBRAIC_TOL = 1e-9
_ANGULAR_TOL = 1e-6


@dataclass(frozen=True)
class LorentzFrame:
    """Basis change M with M^T B M = diag(1, ..., 1, -1); time axis last."""

    basis_change: np.ndarray
    inverse: np.ndarray

    @property
    def dim(self) -> int:
        return self.basis_change.shape[0]

    def to_frame(self, x) -> np.ndarray:
        return self.inverse @ np.asarray(x, dtype=float)


@dataclass(frozen=True)
class SphericalCap:
    center: np.ndarray
    angular_radius: float

    def __post_init__(self):
        if abs(np.linalg.norm(self.center) - 1.0) > 1e-12:
            raise ValueError("cap center must be a unit vector")
        if not 0.0 < self.angular_radius < math.pi:
            raise ValueError(f"cap radius must lie in (0, pi), got {self.angular_radius}")


@dataclass(frozen=True)
class EuclideanBall:
    """Inversive coordinates: curvature kappa and the vector kappa * center.

    kappa > 0 is an ordinary ball, kappa < 0 the complement of an open ball,
    kappa = 0 a half-space {<y, n> >= offset} with the unit normal n stored
    in curvature_center and the offset kept separately.
    """

    curvature: float
    curvature_center: np.ndarray
    halfspace_offset: float | None = None

    @property
    def is_halfspace(self) -> bool:
        return self.curvature == 0.0

    @property
    def radius(self) -> float:
        if self.is_halfspace:
            return math.inf
        return abs(1.0 / self.curvature)

    @property
    def center(self) -> np.ndarray:
        if self.is_halfspace:
            raise ValueError("a half-space has no center")
        return self.curvature_center / self.curvature


class PairKind(Enum):
    DISJOINT = "disjoint"
    TANGENT = "tangent"
    TRANSVERSAL = "transversal"
    DEEP_INTERSECT = "deep_intersect"


@dataclass(frozen=True)
class PairRelation:
    kind: PairKind
    separation: float


@dataclass(frozen=True)
class ClusterReport:
    is_packing: bool
    min_separation: float
    violating_pairs: tuple[tuple[int, int, float], ...]
    deep_pairs: tuple[tuple[int, int, float], ...]


def lorentz_frame(b: np.ndarray, zero_tol: float = DEFAULT_ZERO_TOL) -> LorentzFrame:
    """Diagonalize a Lorentzian form to the standard (+, ..., +, -) frame.

    The time axis is oriented so the barycenter direction of the simple roots
    has positive last frame coordinate, making caps deterministic across runs.
    """
    b = np.asarray(b, dtype=float)
    sig = signature(b, zero_tol)
    n = b.shape[0]
    if not (sig.n_minus == 1 and sig.n_zero == 0):
        raise NotLorentzianError(
            f"signature ({sig.n_plus}, {sig.n_zero}, {sig.n_minus}) is not Lorentzian"
        )
    target = np.ones(n)
    target[-1] = -1.0
    if np.array_equal(b, np.diag(target)):
        ident = np.eye(n)
        ident.setflags(write=False)
        return LorentzFrame(ident, ident)
    lam, vec = np.linalg.eigh(b)
    order = list(range(1, n)) + [0]  # eigh sorts ascending; move the negative one last
    cols = vec[:, order]
    scale = 1.0 / np.sqrt(np.abs(lam[order]))
    m = cols * scale
    diag = np.ones(n)
    diag[-1] = -1.0
    inv = (diag[:, None] * m.T) @ b  # M^{-1} = D M^T B
    barycenter = np.full(n, 1.0 / n)
    if (inv @ barycenter)[-1] < 0:
        m = m.copy()
        m[:, -1] = -m[:, -1]
        inv = (diag[:, None] * m.T) @ b
    m.setflags(write=False)
    inv.setflags(write=False)
    return LorentzFrame(m, inv)


def cap_of(x, frame: LorentzFrame, b: np.ndarray) -> SphericalCap:
    """Spherical cap cut on the light sphere by the ball of a space-like vector.

    Writing the normalized vector in frame coordinates as (v, t), future light
    rays (u, 1) satisfy B(x, (u, 1)) <= 0 exactly on the cap of angular radius
    arccos(-t/|v|) around -v/|v|.
    """
    xhat = normalize_spacelike(x, b)
    y = frame.to_frame(xhat)
    v, t = y[:-1], float(y[-1])
    nv = float(np.linalg.norm(v))
    center = -v / nv
    center.setflags(write=False)
    radius = math.acos(max(-1.0, min(1.0, -t / nv)))
    return SphericalCap(center, radius)


def separation(x, y, b: np.ndarray) -> float:
    """Inversive separation of the two balls: -B of the normalized vectors."""
    return -bilinear(b, normalize_spacelike(x, b), normalize_spacelike(y, b))


def classify_pair(x, y, b: np.ndarray, tol: float = _ALGEBRAIC_TOL) -> PairRelation:
    s = separation(x, y, b)
    if s > 1.0 + tol:
        kind = PairKind.DISJOINT
    elif abs(s - 1.0) <= tol:
        kind = PairKind.TANGENT
    elif s < -tol:
        kind = PairKind.DEEP_INTERSECT
    else:
        kind = PairKind.TRANSVERSAL
    return PairRelation(kind, s)


def stereographic(cap: SphericalCap, pole_axis: int) -> EuclideanBall:
    """Euclidean image of a cap under stereographic projection from a pole axis.

    The projection goes from the unit vector along pole_axis onto the
    hyperplane of the remaining axes (kept in their original order).  A cap
    whose boundary passes through the pole maps to a half-space; a cap whose
    interior contains the pole maps to the complement of a ball.
    """
    d = cap.center.size
    if not 0 <= pole_axis < d:
        raise ValueError(f"pole_axis must index the sphere's ambient axes 0..{d - 1}")
    c_s = float(cap.center[pole_axis])
    c_w = np.delete(cap.center, pole_axis)
    cos_r = math.cos(cap.angular_radius)
    # angular gap between the pole and the cap boundary circle
    gap = abs(math.acos(max(-1.0, min(1.0, c_s))) - cap.angular_radius)
    if gap <= _ALGEBRAIC_TOL:
        w = float(np.linalg.norm(c_w))
        if w < 1e-12:
            raise ValueError("degenerate cap: boundary through the pole with axial center")
        normal = c_w / w
        normal.setflags(write=False)
        return EuclideanBall(0.0, normal, cos_r / w)
    sin_r = math.sin(cap.angular_radius)
    kappa = (cos_r - c_s) / sin_r
    kc = c_w / sin_r
    kc.setflags(write=False)
    return EuclideanBall(kappa, kc)


def _spacelike_unit_rows(weights) -> tuple[np.ndarray, list[int]]:
    rows = []
    ids = []
    for i, w in enumerate(weights):
        if isinstance(w, WeightRecord):
            if w.klass is not VectorClass.SPACE_LIKE:
                continue
            rows.append(w.vector / math.sqrt(w.norm))
            ids.append(i)
        else:
            raise TypeError(f"expected WeightRecord, got {type(w).__name__}")
    if rows:
        return np.array(rows), ids
    return np.empty((0, 0)), ids


def validate_cluster(weights, b: np.ndarray, tol: float = _ALGEBRAIC_TOL) -> ClusterReport:
    """Pairwise separation audit of the balls of the space-like weights.

    A packing requires every distinct pair to have separation >= 1; pairs
    below that are reported, and pairs with negative separation (deep
    intersections) are listed separately since no reflection orbit should
    produce them.
    """
    unit, ids = _spacelike_unit_rows(weights)
    if len(ids) < 2:
        return ClusterReport(True, math.inf, (), ())
    k = unit.shape[0]
    bu = unit @ b
    min_sep = math.inf
    violating: list[tuple[int, int, float]] = []
    deep: list[tuple[int, int, float]] = []
    chunk = max(1, int(4e6) // k)
    for lo in range(0, k, chunk):
        hi = min(k, lo + chunk)
        seps = -(bu[lo:hi] @ unit.T)
        for r in range(hi - lo):
            i = lo + r
            row = seps[r, i + 1 :]
            if row.size == 0:
                continue
            m = float(row.min())
            min_sep = min(min_sep, m)
            if m < 1.0 - tol:
                for off in np.nonzero(row < 1.0 - tol)[0]:
                    j = i + 1 + int(off)
                    s = float(row[off])
                    violating.append((ids[i], ids[j], s))
                    if s < -tol:
                        deep.append((ids[i], ids[j], s))
    return ClusterReport(
        is_packing=not violating,
        min_separation=min_sep,
        violating_pairs=tuple(sorted(violating)),
        deep_pairs=tuple(sorted(deep)),
    )


def residual_margin(p: ProjectivePoint, weights, b: np.ndarray) -> float:
    """min over ball normals of B(p, normal); negative inside some ball interior."""
    if p.at_infinity:
        raise ValueError("residual margin is defined for affine points only")
    unit, ids = _spacelike_unit_rows(weights)
    if not ids:
        return math.inf
    return float((unit @ (b @ p.coords)).min())


def residual_margins(points, weights, b: np.ndarray) -> np.ndarray:
    """Vectorized residual_margin over many affine points."""
    pts = [p.coords for p in points]
    if any(p.at_infinity for p in points):
        raise ValueError("residual margins are defined for affine points only")
    unit, ids = _spacelike_unit_rows(weights)
    if not pts:
        return np.empty(0)
    if not ids:
        return np.full(len(pts), math.inf)
    arr = np.array(pts) @ b
    out = np.empty(arr.shape[0])
    chunk = max(1, int(4e6) // max(1, len(ids)))
    for lo in range(0, arr.shape[0], chunk):
        hi = min(arr.shape[0], lo + chunk)
        out[lo:hi] = (arr[lo:hi] @ unit.T).min(axis=1)
    return out


def project_packing(
    caps: list[SphericalCap], retries: int = 3
) -> tuple[list[EuclideanBall], list[SphericalCap], np.ndarray]:
    """Project caps from the last sphere axis, nudging the frame off boundaries.

    When some cap boundary passes within the angular guard of the pole, a
    fixed small rotation of the sphere is applied (up to `retries` times) so
    every ball stays finite.  Returns the balls, the caps actually projected
    (rotated when a nudge occurred), and the applied rotation.
    """
    if not caps:
        return [], [], np.eye(0)
    d = caps[0].center.size
    pole = d - 1
    rot = np.eye(d)
    step = np.eye(d)
    if d >= 2:
        a = 1.0 / 64.0
        step[0, 0] = step[pole, pole] = math.cos(a)
        step[0, pole] = -math.sin(a)
        step[pole, 0] = math.sin(a)
    current = caps
    for attempt in range(retries + 1):
        risky = any(
            abs(math.acos(max(-1.0, min(1.0, float(c.center[pole])))) - c.angular_radius)
            < _ANGULAR_TOL
            for c in current
        )
        if not risky or attempt == retries or d < 2:
            return [stereographic(c, pole) for c in current], list(current), rot
        rot = step @ rot
        current = [
            SphericalCap(_readonly(rot @ c.center), c.angular_radius) for c in caps
        ]
    raise AssertionError("unreachable")


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    a.setflags(write=False)
    return a
