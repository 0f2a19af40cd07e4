"""Determinants of scalar blocks and of blocks whose last column holds vectors."""
from __future__ import annotations

import numpy as np

MAX_COFACTOR_ORDER = 10


class CofactorTooLarge(ValueError):
    pass


def _cofactor(rows: list[list[float]]) -> float:
    size = len(rows)
    if size == 1:
        return rows[0][0]
    if size == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = 0.0
    sign = 1.0
    for c in range(size):
        if rows[0][c] != 0.0:
            minor = [row[:c] + row[c + 1:] for row in rows[1:]]
            total += sign * rows[0][c] * _cofactor(minor)
        sign = -sign
    return total


def cofactor_det(a) -> float:
    """Determinant by Laplace expansion along the first row.

    Factorial cost; only meant for diagnostics and cross-checks.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] > MAX_COFACTOR_ORDER:
        raise CofactorTooLarge(
            f"cofactor expansion refused for order {a.shape[0]} > {MAX_COFACTOR_ORDER}")
    if a.shape[0] == 0:
        return 1.0
    return float(_cofactor(a.tolist()))


def lu_det(a) -> float:
    """Determinant via LU factorization with partial pivoting."""
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] == 0:
        return 1.0
    return float(np.linalg.det(a))


def det(a, cofactor: bool = False) -> float:
    return cofactor_det(a) if cofactor else lu_det(a)


def mixed_determinant(scalars, vectors, cofactor: bool = False) -> np.ndarray:
    """Formal determinant of ``[scalars | vectors]`` expanded along the last column.

    Parameters
    ----------
    scalars : array_like
        ``(j+1, j)`` block of scalar entries (may have zero columns).
    vectors : array_like
        ``(j+1, n)``; row ``r`` is the vector sitting in the last column of
        row ``r``.
    cofactor : bool, optional
        Evaluate the scalar minors by naive Laplace expansion instead of LU.

    Returns
    -------
    ndarray
        ``sum_r (-1)**(r+j) * det(scalars without row r) * vectors[r]``.
    """
    vectors = np.asarray(vectors, dtype=float)
    if vectors.ndim != 2 or vectors.shape[0] == 0:
        raise ValueError("need at least one vector row")
    rows = vectors.shape[0]
    j = rows - 1
    scalars = np.asarray(scalars, dtype=float)
    if scalars.size == 0:
        scalars = scalars.reshape(rows, 0)
    if scalars.shape != (rows, j):
        raise ValueError(f"scalar block has shape {scalars.shape}, expected {(rows, j)}")
    if cofactor and rows > MAX_COFACTOR_ORDER:
        raise CofactorTooLarge(
            f"cofactor expansion refused for block order {rows} > {MAX_COFACTOR_ORDER}")
    out = np.zeros(vectors.shape[1])
    for r in range(rows):
        minor = np.delete(scalars, r, axis=0)
        out += (-1.0) ** (r + j) * det(minor, cofactor) * vectors[r]
    return out
