"""Compiled inner loops.

Written as explicit loops over contiguous rows so run time tracks the
operation count, which the benchmark relies on.
"""
import numpy as np
from numba import njit


@njit(cache=True)
def mgs_rows(src, which, first, counts, floor):
    """Modified Gram-Schmidt within blocks of rows gathered from ``src``.

    Block ``b`` takes ``counts[b]`` consecutive rows of ``src[which[b]]``
    starting at row ``first[b]`` and is orthonormalised independently of the
    other blocks. Returns ``(q, bad, norm)``; ``bad`` is the output row whose
    residual norm fell below ``floor`` (or -1) and ``norm`` that residual.
    """
    n = src.shape[2]
    total = 0
    for b in range(counts.shape[0]):
        total += counts[b]
    q = np.empty((total, n))
    row = 0
    for b in range(counts.shape[0]):
        for c in range(counts[b]):
            for r in range(n):
                q[row + c, r] = src[which[b], first[b] + c, r]
        for i in range(row, row + counts[b]):
            s = 0.0
            for r in range(n):
                s += q[i, r] * q[i, r]
            s = np.sqrt(s)
            if s < floor:
                return q, i, s
            for r in range(n):
                q[i, r] /= s
            for j in range(i + 1, row + counts[b]):
                d = 0.0
                for r in range(n):
                    d += q[i, r] * q[j, r]
                for r in range(n):
                    q[j, r] -= d * q[i, r]
        row += counts[b]
    return q, -1, 0.0
