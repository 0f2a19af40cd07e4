"""DFT matrix, its spectral projections and eigenvalue multiplicities."""
from __future__ import annotations

import enum
import functools
from dataclasses import dataclass, field, fields

import numpy as np

# (-i)**k and i**k for k = 0..3, kept exact so the projections stay real.
_MINUS_I_POW = (1.0 + 0j, -1j, -1.0 + 0j, 1j)
_I_POW = (1.0 + 0j, 1j, -1.0 + 0j, -1j)

EIGENVALUES = _I_POW
EIGENVALUE_LABELS = ("1", "i", "-1", "-i")


class Convention(enum.Enum):
    """Sign of the exponent in the root of unity ``w = exp(+-2*pi*i/n)``."""

    PLUS = "plus"
    MINUS = "minus"


class InvalidOrder(ValueError):
    pass


class NumericalCorruption(ArithmeticError):
    """An analytically exact quantity came out wrong beyond tolerance."""


@dataclass(frozen=True)
class Tolerances:
    """Thresholds shared by construction and verification.

    The first three guard construction itself; the rest are verification
    thresholds and degeneracy floors.
    """

    entry: float = 1e-12
    algebra: float = 1e-10
    trace: float = 1e-6
    quartic: float = 1e-11
    multiplicity: float = 1e-9
    ortho: float = 1e-8
    eigen: float = 1e-8
    diagonal: float = 1e-8
    span: float = 1e-8
    norm_identity: float = 1e-6
    gram_floor: float = 1e-280
    mgs_floor: float = 1e-10

    def as_dict(self) -> dict[str, float]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


DEFAULT_TOLERANCES = Tolerances()


@dataclass(frozen=True)
class DftSpec:
    n: int
    convention: Convention = Convention.PLUS

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, (int, np.integer)):
            raise InvalidOrder(f"order must be an integer, got {self.n!r}")
        if self.n < 1:
            raise InvalidOrder(f"order must be >= 1, got {self.n}")
        if not isinstance(self.convention, Convention):
            object.__setattr__(self, "convention", Convention(self.convention))

    @property
    def sign(self) -> int:
        return 1 if self.convention is Convention.PLUS else -1


def _check_k(k: int) -> None:
    if k not in (0, 1, 2, 3):
        raise ValueError(f"eigenspace index must be in 0..3, got {k}")


def _roots(spec: DftSpec, exponents) -> np.ndarray:
    # reduce mod n before scaling so large products keep full accuracy
    e = np.mod(exponents, spec.n)
    return np.exp(spec.sign * 2j * np.pi * e / spec.n)


def build_dft(spec: DftSpec) -> np.ndarray:
    """Return the unitary DFT matrix with entries ``w**(j*k) / sqrt(n)``."""
    idx = np.arange(spec.n)
    return _roots(spec, np.outer(idx, idx)) / np.sqrt(spec.n)


def dft_power(phi: np.ndarray, q: int) -> np.ndarray:
    """Return ``phi**q`` for ``q`` in 0..3 by repeated multiplication."""
    phi = np.asarray(phi)
    if phi.ndim != 2 or phi.shape[0] != phi.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {phi.shape}")
    if q not in (0, 1, 2, 3):
        raise ValueError(f"power must be in 0..3, got {q}")
    out = np.eye(phi.shape[0], dtype=complex)
    for _ in range(q):
        out = out @ phi
    return out


def _bracket(spec: DftSpec, k: int, j, m):
    """Four-term numerator of a projection entry, before division by 4."""
    n = spec.n
    j = np.asarray(j)
    m = np.asarray(m)
    w = _roots(spec, j * m)
    delta = (j == m).astype(float)
    reversal = ((j + m) % n == 0).astype(float)
    return (delta
            + _MINUS_I_POW[k] * w / np.sqrt(n)
            + (-1.0) ** k * reversal
            + _I_POW[k] * np.conj(w) / np.sqrt(n))


def _real_part(z, tol: float) -> np.ndarray:
    imag = np.max(np.abs(np.imag(z))) if np.size(z) else 0.0
    if imag > tol:
        raise NumericalCorruption(
            f"projection entry has imaginary part {imag:.3e} > {tol:.1e}")
    return np.real(z)


def projection_entry(spec: DftSpec, k: int, j: int, m: int,
                     tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Entry ``(j, m)`` of the spectral projection onto eigenvalue ``i**k``.

    Uses the reversal delta ``(j + m) mod n == 0`` for the ``phi**2`` term,
    which places a one at ``(0, 0)``.
    """
    _check_k(k)
    if not (0 <= j < spec.n and 0 <= m < spec.n):
        raise IndexError(f"indices ({j}, {m}) out of range for n={spec.n}")
    return float(_real_part(_bracket(spec, k, j, m), tol.entry)) / 4.0


def build_projection(spec: DftSpec, k: int,
                     tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """Real symmetric ``n x n`` projection onto the ``i**k`` eigenspace."""
    _check_k(k)
    idx = np.arange(spec.n)
    z = _bracket(spec, k, idx[:, None], idx[None, :])
    return _real_part(z, tol.entry) / 4.0


def projection_brute_force(spec: DftSpec, k: int) -> np.ndarray:
    """``(1/4) sum_j (-i)**(j*k) phi**j`` by explicit matrix powers (complex)."""
    _check_k(k)
    phi = build_dft(spec)
    return sum(_MINUS_I_POW[(j * k) % 4] * dft_power(phi, j) for j in range(4)) / 4


def _round_trace(trace: float, tol: float) -> int:
    m = int(round(trace))
    if abs(trace - m) > tol:
        raise NumericalCorruption(f"trace {trace!r} is not integral within {tol:.1e}")
    return m


@dataclass(frozen=True)
class ProjectionSet:
    """The four projections stacked as a ``(4, n, n)`` array, with multiplicities."""

    spec: DftSpec
    p: np.ndarray = field(compare=False)
    mult: tuple[int, int, int, int]
    traces: tuple[float, ...] = field(default=(), compare=False)

    @functools.cached_property
    def labels(self) -> tuple[int, ...]:
        """Eigenspace index of each basis vector, grouped in order 0..3."""
        return sum(((k,) * m for k, m in enumerate(self.mult)), ())

    @functools.cached_property
    def counts(self) -> np.ndarray:
        return np.array(self.mult, dtype=np.int64)


def build_projection_set(spec: DftSpec,
                         tol: Tolerances = DEFAULT_TOLERANCES) -> ProjectionSet:
    p = np.stack([build_projection(spec, k, tol) for k in range(4)])
    traces = tuple(float(np.trace(pk)) for pk in p)
    mult = tuple(_round_trace(t, tol.trace) for t in traces)
    if sum(mult) != spec.n:
        raise NumericalCorruption(f"multiplicities {mult} do not sum to {spec.n}")
    return ProjectionSet(spec, p, mult, traces)


def multiplicities(spec: DftSpec,
                   tol: Tolerances = DEFAULT_TOLERANCES) -> tuple[int, int, int, int]:
    """Dimensions of the eigenspaces of 1, i, -1, -i, from ``trace(p_k)``."""
    return build_projection_set(spec, tol).mult


def matveev_multiplicities(n: int) -> tuple[int, int, int, int]:
    """Closed-form floor formulas for the multiplicities, in printed order.

    These are labelled 1, i, -1, -i in the literature, but at e.g. n=6 the
    trace gives (2, 1, 2, 1) where these give (1, 2, 1, 2). The two always
    agree as multisets; :func:`multiplicities` is the authoritative one.
    """
    if n < 1:
        raise InvalidOrder(f"order must be >= 1, got {n}")
    return ((n + 1) // 4, (n + 2) // 4, (n + 3) // 4 - 1, n // 4 + 1)


def get_v(spec: DftSpec, k: int, m: int,
          projections: ProjectionSet | None = None) -> np.ndarray:
    """Column ``m`` of ``p_k`` (equal to row ``m`` by symmetry)."""
    _check_k(k)
    if not 0 <= m < spec.n:
        raise IndexError(f"column {m} out of range for n={spec.n}")
    pk = projections.p[k] if projections is not None else build_projection(spec, k)
    return pk[:, m].copy()


def column_offset(k: int) -> int:
    """First usable column of ``p_k``; column 0 vanishes for odd ``k``."""
    _check_k(k)
    return k % 2


def select_columns(spec: DftSpec, k: int,
                   projections: ProjectionSet | None = None) -> tuple[int, ...]:
    ps = projections if projections is not None else build_projection_set(spec)
    start = column_offset(k)
    return tuple(range(start, start + ps.mult[k]))
