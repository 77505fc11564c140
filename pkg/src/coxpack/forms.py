"""Signature, type and level classification of Coxeter bilinear forms."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations

import numpy as np

from .graphs import CoxeterGraph

DEFAULT_ZERO_TOL = 1e-3
_SYMMETRY_TOL = 1e-12


class FormError(ValueError):
    """Invalid matrix input for a form-level operation."""


class SingularFormError(FormError):
    """The bilinear form is singular; fundamental weights are undefined."""


class NotLorentzianError(FormError):
    """An operation required signature (n-1, 0, 1)."""


class TypeClass(Enum):
    FINITE = "finite"
    AFFINE = "affine"
    LORENTZIAN = "lorentzian"
    OTHER_INDEFINITE = "other_indefinite"


@dataclass(frozen=True)
class Signature:
    n_plus: int
    n_zero: int
    n_minus: int
    min_eigenvalue: float

    @property
    def n(self) -> int:
        return self.n_plus + self.n_zero + self.n_minus


def _check_gram(b) -> np.ndarray:
    b = np.asarray(b, dtype=float)
    if b.ndim != 2 or b.shape[0] != b.shape[1]:
        raise FormError(f"expected a square matrix, got shape {b.shape}")
    if b.size and np.abs(b - b.T).max() > _SYMMETRY_TOL:
        raise FormError("matrix is not symmetric")
    return b


def signature(b, zero_tol: float = DEFAULT_ZERO_TOL) -> Signature:
    """Eigenvalue sign counts of a symmetric matrix, with |lambda| <= zero_tol as zero."""
    if not zero_tol > 0:
        raise ValueError(f"zero_tol must be positive, got {zero_tol}")
    b = _check_gram(b)
    w = np.linalg.eigvalsh(b)
    n_minus = int(np.sum(w < -zero_tol))
    n_plus = int(np.sum(w > zero_tol))
    n_zero = w.size - n_minus - n_plus
    return Signature(n_plus, n_zero, n_minus, float(w[0]))


def classify_gram(b, zero_tol: float = DEFAULT_ZERO_TOL) -> TypeClass:
    sig = signature(b, zero_tol)
    if sig.n_minus == 0:
        return TypeClass.FINITE if sig.n_zero == 0 else TypeClass.AFFINE
    if sig.n_minus == 1 and sig.n_zero == 0:
        return TypeClass.LORENTZIAN
    return TypeClass.OTHER_INDEFINITE


def classify_type(g: CoxeterGraph, zero_tol: float = DEFAULT_ZERO_TOL) -> TypeClass:
    return classify_gram(g.gram, zero_tol)


def _psd(b: np.ndarray, zero_tol: float) -> bool:
    return float(np.linalg.eigvalsh(b)[0]) >= -zero_tol


def is_level_at_most(g: CoxeterGraph, r: int, zero_tol: float = DEFAULT_ZERO_TOL) -> bool:
    """True when every induced subgraph on rank - r vertices is finite or affine."""
    n = g.rank
    if not 0 <= r < n:
        raise ValueError(f"level bound r must satisfy 0 <= r < {n}, got {r}")
    b = g.gram
    if r == 0:
        return _psd(b, zero_tol)
    for keep in combinations(range(n), n - r):
        idx = np.fromiter(keep, dtype=int)
        if not _psd(b[np.ix_(idx, idx)], zero_tol):
            return False
    return True


def level(g: CoxeterGraph, zero_tol: float = DEFAULT_ZERO_TOL) -> int:
    """Smallest r with is_level_at_most(g, r); rank-1 subgraphs make r = rank-1 suffice."""
    for r in range(g.rank):
        if is_level_at_most(g, r, zero_tol):
            return r
    raise AssertionError("unreachable: single vertices are positive definite")


def fundamental_weights(b, singular_rtol: float = 1e-9) -> tuple[np.ndarray, np.ndarray]:
    """Dual-basis vectors of a non-singular form, in simple-root coordinates.

    Returns (weights, norms) where weights[s] solves B(alpha_s, w) = delta_st:
    the rows (equivalently columns) of the inverse matrix.  norms[s] is the
    quadratic form value of weights[s], which equals inverse[s, s].
    """
    b = _check_gram(b)
    n = b.shape[0]
    det = float(np.linalg.det(b))
    scale = float(np.abs(b).max()) if b.size else 1.0
    if abs(det) < singular_rtol * max(scale, 1.0) ** n:
        raise SingularFormError(f"form is singular (|det| = {abs(det):.3e}); weights undefined")
    w = np.linalg.inv(b)
    w = (w + w.T) / 2.0
    w.setflags(write=False)
    norms = np.diag(w).copy()
    norms.setflags(write=False)
    return w, norms
