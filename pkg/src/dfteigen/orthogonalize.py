"""Orthonormal eigenbases of the DFT matrix, one eigenspace at a time.

Two constructions are provided. The Gramian-determinant one builds each
vector as a formal determinant whose scalar block is a leading block of the
projection matrix (which is the Gramian of its own columns). The baseline
runs Modified Gram-Schmidt on the same columns.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from ._kernels import mgs_rows
from .core import (DEFAULT_TOLERANCES, DftSpec, ProjectionSet, Tolerances,
                   build_projection_set, column_offset, select_columns)
from .determinant import det, mixed_determinant


class Method(enum.Enum):
    MATVEEV = "matveev"
    MGS = "mgs"


class DegenerateGram(ArithmeticError):
    """Raised when an eigenspace's column set looks rank deficient."""

    def __init__(self, message: str, k: int, index: int, value: float):
        super().__init__(message)
        self.k = k
        self.index = index
        self.value = value


@dataclass(frozen=True)
class GramReport:
    k: int
    gram_minors: tuple[float, ...]
    norm_errors: tuple[float, ...] = ()

    @property
    def min_minor(self) -> float:
        return min(abs(g) for g in self.gram_minors)


@dataclass(frozen=True)
class EigenBasis:
    """Unit eigenvectors (rows of ``vectors``) labelled by eigenspace index ``ks``."""

    spec: DftSpec
    ks: tuple[int, ...]
    vectors: np.ndarray = field(compare=False)
    method: Method = Method.MATVEEV
    reports: tuple[GramReport, ...] = field(default=(), compare=False)

    @property
    def entries(self) -> tuple[tuple[int, np.ndarray], ...]:
        return tuple(zip(self.ks, self.vectors))

    @property
    def matrix(self) -> np.ndarray:
        """Basis vectors as the columns of an ``n x n`` array."""
        return self.vectors.T

    @property
    def group_sizes(self) -> tuple[int, int, int, int]:
        return tuple(self.ks.count(k) for k in range(4))


def leading_gram_minor(p, offset: int, order: int, cofactor: bool = False) -> float:
    """Determinant of ``p[offset:offset+order, offset:offset+order]``; 1 for order 0."""
    p = np.asarray(p)
    if offset not in (0, 1):
        raise ValueError(f"offset must be 0 or 1, got {offset}")
    if order < 0 or offset + order > p.shape[0]:
        raise ValueError(f"order {order} out of range for offset {offset}, n={p.shape[0]}")
    if order == 0:
        return 1.0
    block = p[offset:offset + order, offset:offset + order]
    return det(block, cofactor)


def _projections(spec, projections, tol):
    if projections is None:
        return build_projection_set(spec, tol)
    if projections.spec is not spec and projections.spec != spec:
        raise ValueError("projection set was built for a different spec")
    return projections


def matveev_orthogonalize(spec: DftSpec, k: int,
                          projections: ProjectionSet | None = None,
                          tol: Tolerances = DEFAULT_TOLERANCES,
                          cofactor: bool = False) -> tuple[list[np.ndarray], GramReport]:
    """Orthonormal basis of the ``i**k`` eigenspace via Gram determinants.

    Vector ``j`` is the mixed determinant whose scalar block is rows
    ``b..b+j``, columns ``b..b+j-1`` of ``p_k`` and whose last column holds
    the columns ``b..b+j`` of ``p_k`` (``b`` is 1 for odd ``k``, else 0).
    Each vector is normalised by its Euclidean norm, and that norm must
    agree with ``sqrt(G_j * G_{j+1})``.

    Raises
    ------
    DegenerateGram
        If a needed Gram minor is below ``tol.gram_floor`` in magnitude, or
        the norm identity fails by more than ``tol.norm_identity``.
    """
    ps = _projections(spec, projections, tol)
    p = ps.p[k]
    m = ps.mult[k]
    base = column_offset(k)

    minors = []
    for order in range(m + 1):
        g = leading_gram_minor(p, base, order, cofactor)
        if abs(g) < tol.gram_floor:
            raise DegenerateGram(
                f"Gram minor G_{order} = {g:.3e} for k={k} is below {tol.gram_floor:.0e}",
                k, order, g)
        minors.append(g)

    vectors = []
    errors = []
    for j in range(m):
        rows = slice(base, base + j + 1)
        e = mixed_determinant(p[rows, base:base + j], p[:, rows].T, cofactor)
        norm = float(np.linalg.norm(e))
        predicted = math.sqrt(abs(minors[j] * minors[j + 1]))
        err = abs(predicted - norm) / norm if norm > 0 else math.inf
        if not err <= tol.norm_identity:
            raise DegenerateGram(
                f"norm identity failed for k={k}, j={j}: direct {norm:.6e} vs "
                f"sqrt(G_j G_j+1) {predicted:.6e}", k, j, minors[j + 1])
        vectors.append(e / norm)
        errors.append(err)
    return vectors, GramReport(k, tuple(minors), tuple(errors))


def _mgs(src, which, first, counts, tol: Tolerances) -> np.ndarray:
    q, bad, norm = mgs_rows(src, which, first, counts, tol.mgs_floor)
    if bad >= 0:
        # map the failing output row back to its block
        ends = np.cumsum(counts)
        block = int(np.searchsorted(ends, bad, side="right"))
        k = int(which[block]) if src.shape[0] == 4 else -1
        raise DegenerateGram(
            f"residual norm {norm:.3e} below {tol.mgs_floor:.0e} at vector {bad} (k={k})",
            k, int(bad), float(norm))
    return q


_K = np.arange(4, dtype=np.int64)
_FIRST = _K % 2


def mgs_orthogonalize(spec: DftSpec, k: int,
                      projections: ProjectionSet | None = None,
                      tol: Tolerances = DEFAULT_TOLERANCES) -> list[np.ndarray]:
    """Modified Gram-Schmidt over the selected columns of ``p_k``, in order."""
    ps = _projections(spec, projections, tol)
    cols = select_columns(spec, k, ps)
    if not cols:
        return []
    q = _mgs(ps.p, _K[k:k + 1], np.array([cols[0]]), np.array([len(cols)]), tol)
    return list(q)


def full_basis(spec: DftSpec, method: Method | str = Method.MATVEEV,
               projections: ProjectionSet | None = None,
               tol: Tolerances = DEFAULT_TOLERANCES,
               cofactor: bool = False) -> EigenBasis:
    """Complete orthonormal eigenbasis, grouped by eigenvalue 1, i, -1, -i."""
    method = Method(method)
    ps = _projections(spec, projections, tol)
    ks = ps.labels
    if method is Method.MGS:
        # one compiled call for all four eigenspaces
        q = _mgs(ps.p, _K, _FIRST, ps.counts, tol)
        return EigenBasis(spec, ks, q, method)
    rows = []
    reports = []
    for k in range(4):
        vectors, report = matveev_orthogonalize(spec, k, ps, tol, cofactor)
        rows.extend(vectors)
        reports.append(report)
    return EigenBasis(spec, ks, np.array(rows).reshape(spec.n, spec.n), method,
                      tuple(reports))


def full_matrix_basis(spec: DftSpec, projections: ProjectionSet | None = None,
                      tol: Tolerances = DEFAULT_TOLERANCES) -> EigenBasis:
    """Single MGS pass over all ``n`` selected columns at once.

    The baseline whose cost is ``2 n**3``; same span per eigenspace as
    :func:`full_basis` because columns from different eigenspaces are
    already orthogonal.
    """
    ps = _projections(spec, projections, tol)
    ks = ps.labels
    rows = np.concatenate([ps.p[k, k % 2:k % 2 + m] for k, m in enumerate(ps.mult)])
    q = _mgs(rows[None], _K[:1], _K[:1], np.array([spec.n]), tol)
    return EigenBasis(spec, ks, q, Method.MGS)
