"""Order-6 worked example: basis matrix, diagonalisation and Gram matrix."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import EIGENVALUES, DftSpec, build_dft
from .orthogonalize import Method, full_basis

# Published 4-decimal values of the order-6 basis, one column per eigenvector.
REFERENCE_O6 = np.array([
    [0.8391, 0.0, 0.0, 0.5439, 0.0, 0.0],
    [0.2433, 0.5412, 0.6533, -0.3753, 0.0843, 0.2706],
    [0.2433, -0.2979, 0.2706, -0.3753, -0.4596, -0.6533],
    [0.2433, -0.4865, 0.0, -0.3753, 0.7505, 0.0],
    [0.2433, -0.2979, -0.2706, -0.3753, -0.4596, 0.6533],
    [0.2433, 0.5412, -0.6533, -0.3753, 0.0843, -0.2706],
])
REFERENCE_DIAGONAL = np.array([1, 1, 1j, -1, -1, -1j])

TABLE_TOL = 1e-3
EXACT_TOL = 1e-10


def normalize_signs(o: np.ndarray, zero: float = 1e-12) -> tuple[np.ndarray, list[int]]:
    """Flip columns whose first non-negligible entry is negative."""
    o = o.copy()
    flipped = []
    for c in range(o.shape[1]):
        nz = np.flatnonzero(np.abs(o[:, c]) > zero)
        if nz.size and o[nz[0], c] < 0:
            o[:, c] = -o[:, c]
            flipped.append(c)
    return o, flipped


@dataclass
class DemoResult:
    o: np.ndarray
    flipped: list[int]
    table_error: float
    diagonalized: np.ndarray
    off_diagonal: float
    diagonal_error: float
    gram_error: float

    @property
    def passed(self) -> bool:
        return (self.table_error <= TABLE_TOL and self.off_diagonal <= EXACT_TOL
                and self.diagonal_error <= EXACT_TOL and self.gram_error <= EXACT_TOL)


def run_demo(method: Method | str = Method.MATVEEV) -> DemoResult:
    spec = DftSpec(6)
    basis = full_basis(spec, method)
    o = basis.matrix
    signed, flipped = normalize_signs(o)
    d = np.linalg.inv(o) @ build_dft(spec) @ o
    diag = np.diag(d)
    expected = np.array([EIGENVALUES[k] for k in basis.ks])
    if not np.allclose(expected, REFERENCE_DIAGONAL):
        raise AssertionError(f"eigenvalue order {basis.ks} differs from reference")
    return DemoResult(
        o=o,
        flipped=flipped,
        table_error=float(np.max(np.abs(signed - REFERENCE_O6))),
        diagonalized=d,
        off_diagonal=float(np.max(np.abs(d - np.diag(diag)))),
        diagonal_error=float(np.max(np.abs(diag - REFERENCE_DIAGONAL))),
        gram_error=float(np.max(np.abs(o.T @ o - np.eye(6)))),
    )


def _fmt_real(x: float) -> str:
    x = round(float(x), 4) + 0.0  # drop negative zero
    return f"{x:8.4f}"


def _fmt_eig(z: complex) -> str:
    z = complex(round(z.real / EXACT_TOL) * EXACT_TOL, round(z.imag / EXACT_TOL) * EXACT_TOL)
    if abs(z.imag) < EXACT_TOL:
        return f"{z.real + 0.0:g}"
    if abs(z.real) < EXACT_TOL:
        return {1.0: "i", -1.0: "-i"}.get(z.imag, f"{z.imag:g}i")
    return f"{z.real:g}{z.imag:+g}i"


def render(result: DemoResult) -> str:
    lines = ["O6 (columns are eigenvectors, rounded to 4 decimals):"]
    lines += [" ".join(_fmt_real(x) for x in row) for row in result.o]
    lines.append("")
    lines.append("diagonal of inv(O6) . Phi(6) . O6 (rounded at 1e-10):")
    lines.append("(" + ", ".join(_fmt_eig(z) for z in np.diag(result.diagonalized)) + ")")
    lines.append(f"max off-diagonal magnitude: {result.off_diagonal:.3e}")
    lines.append("")
    lines.append("Gram matrix O6^T O6:")
    gram = result.o.T @ result.o
    lines += [" ".join(f"{x + 0.0:5.1f}" for x in np.round(row, 10)) for row in gram]
    lines.append(f"max |O6^T O6 - I|: {result.gram_error:.3e}")
    lines.append("")
    flips = ", ".join(map(str, result.flipped)) if result.flipped else "none"
    lines.append(f"sign flips needed to match the reference table: {flips}")
    lines.append(f"max deviation from reference table: {result.table_error:.2e} "
                 f"(tolerance {TABLE_TOL:g})")
    if not result.passed:
        lines.append("MISMATCH against reference:")
        signed, _ = normalize_signs(result.o)
        for r, c in zip(*np.nonzero(np.abs(signed - REFERENCE_O6) > TABLE_TOL)):
            lines.append(f"  O6[{r},{c}] = {signed[r, c]:.4f}, reference {REFERENCE_O6[r, c]:.4f}")
    lines.append("PASS" if result.passed else "FAIL")
    return "\n".join(lines) + "\n"
