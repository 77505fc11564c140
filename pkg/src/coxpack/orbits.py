"""Root and weight orbits, projective normalization, limit-point samples."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .dedup import VectorStore, unique_rows
from .forms import (
    DEFAULT_ZERO_TOL,
    NotLorentzianError,
    TypeClass,
    classify_gram,
    fundamental_weights,
)
from .graphs import CoxeterGraph
from .groups import GroupBFS, OrbitCapError, simple_reflections

_ISO_TOL = 1e-12


class VectorClass(Enum):
    SPACE_LIKE = "space_like"
    TIME_LIKE = "time_like"
    LIGHT_LIKE = "light_like"


@dataclass(frozen=True)
class RootRecord:
    """A positive root with its minimal depth and coordinate-sum height."""

    vector: np.ndarray
    depth: int
    height: float


@dataclass(frozen=True)
class WeightRecord:
    vector: np.ndarray
    word_length: int
    norm: float
    klass: VectorClass
    color: int


@dataclass(frozen=True)
class ProjectivePoint:
    coords: np.ndarray | None
    at_infinity: bool = False


@dataclass(frozen=True)
class RootSource:
    depth: int


@dataclass(frozen=True)
class WeightSource:
    length: int


@dataclass(frozen=True)
class LimitSample:
    """Projectivized deepest orbit shell; residual measures closeness to the light cone."""

    points: tuple[ProjectivePoint, ...]
    source: RootSource | WeightSource
    quadratic_residual: float
    dropped_zero_height: int = 0


def bilinear(b: np.ndarray, x, y) -> float:
    return float(np.asarray(x) @ b @ np.asarray(y))


def reflect(x, alpha, b: np.ndarray) -> np.ndarray:
    """Image of x under the reflection fixing the hyperplane orthogonal to alpha."""
    x = np.asarray(x, dtype=float)
    alpha = np.asarray(alpha, dtype=float)
    q = bilinear(b, alpha, alpha)
    if abs(q) <= _ISO_TOL:
        raise ValueError("cannot reflect in an isotropic vector")
    return x - (2.0 * bilinear(b, x, alpha) / q) * alpha


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


def roots_up_to_depth(
    g: CoxeterGraph, depth: int, max_records: int | None = None
) -> list[RootRecord]:
    """All positive roots of depth <= depth, via layered reflection BFS.

    Layer 1 holds the simple roots; each later layer applies the simple
    reflections to the previous one and keeps the new positive vectors.
    The first layer containing a root is its depth.
    """
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    n = g.rank
    b = g.gram
    gens = simple_reflections(b)

    store = VectorStore(n)
    records: list[RootRecord] = []
    layer = np.eye(n)
    for i in range(n):
        store.add(layer[i])
        records.append(RootRecord(_frozen(layer[i]), 1, 1.0))

    for d in range(2, depth + 1):
        children = np.concatenate([layer @ gens[i].T for i in range(n)], axis=0)
        children = children[children.min(axis=1) >= -1e-9]
        children = unique_rows(children)
        fresh = []
        for row in children:
            _, is_new = store.add(row)
            if is_new:
                fresh.append(row)
                records.append(RootRecord(_frozen(row), d, float(row.sum())))
                if max_records is not None and len(records) > max_records:
                    raise OrbitCapError("root generation", max_records)
        if not fresh:
            break
        layer = np.array(fresh)
    return records


def classify_norm(norm: float, reference_norm: float) -> VectorClass:
    thr = 1e-9 * max(1.0, abs(reference_norm))
    if abs(norm) <= thr:
        return VectorClass.LIGHT_LIKE
    return VectorClass.SPACE_LIKE if norm > 0 else VectorClass.TIME_LIKE


def weights_up_to_length(
    g: CoxeterGraph, length: int, max_records: int | None = None
) -> list[WeightRecord]:
    """All distinct weights w(omega_s) over elements of word length <= length.

    The word length recorded for a weight is the smallest layer producing it;
    generators fixing a fundamental weight therefore never inflate it.
    """
    if length < 0:
        raise ValueError(f"length must be >= 0, got {length}")
    n = g.rank
    b = g.gram
    fund, fund_norms = fundamental_weights(b)

    bfs = GroupBFS(b, length, max_records=max_records)
    store = VectorStore(n)
    records: list[WeightRecord] = []
    colors: list[int] = []
    for eid in range(len(bfs)):
        ell = bfs.lengths[eid]
        moved = bfs.matrices[eid] @ fund  # column s is the image of weight s
        for s in range(n):
            vec = moved[:, s]
            wid, is_new = store.add(vec)
            if not is_new:
                if colors[wid] != s:
                    raise AssertionError("weight orbit merged two colors")
                continue
            colors.append(s)
            norm = bilinear(b, vec, vec)
            records.append(
                WeightRecord(
                    _frozen(vec), ell, norm, classify_norm(norm, fund_norms[s]), s
                )
            )
            if max_records is not None and len(records) > max_records:
                raise OrbitCapError("weight generation", max_records)
    return records


def projectivize(x) -> ProjectivePoint:
    """Affine chart of the direction of x: x / height, or the point at infinity."""
    x = np.asarray(x, dtype=float)
    if not x.any():
        raise ValueError("cannot projectivize the zero vector")
    h = float(x.sum())
    if abs(h) <= _ISO_TOL:
        return ProjectivePoint(None, at_infinity=True)
    return ProjectivePoint(_frozen(x / h))


def normalize_spacelike(x, b: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    q = bilinear(b, x, x)
    if not q > _ISO_TOL:
        raise ValueError(f"vector is not space-like (B(x,x) = {q:.3e})")
    return x / math.sqrt(q)


def limit_sample(
    g: CoxeterGraph,
    source: RootSource | WeightSource,
    max_records: int | None = None,
) -> LimitSample:
    """Projectivized deepest shell of the requested orbit, with its residual."""
    b = g.gram
    if classify_gram(b, DEFAULT_ZERO_TOL) is not TypeClass.LORENTZIAN:
        raise NotLorentzianError("limit samples are defined for Lorentzian systems")

    dropped = 0
    if isinstance(source, RootSource):
        shell = [
            r.vector
            for r in roots_up_to_depth(g, source.depth, max_records)
            if r.depth == source.depth
        ]
    elif isinstance(source, WeightSource):
        shell = []
        for w in weights_up_to_length(g, source.length, max_records):
            if w.word_length != source.length:
                continue
            if abs(float(w.vector.sum())) <= 1e-9:
                dropped += 1
                continue
            shell.append(w.vector)
    else:
        raise TypeError(f"source must be RootSource or WeightSource, got {source!r}")

    points = tuple(projectivize(v) for v in shell)
    residual = 0.0
    for p in points:
        residual = max(residual, abs(bilinear(b, p.coords, p.coords)))
    return LimitSample(points, source, residual, dropped)
