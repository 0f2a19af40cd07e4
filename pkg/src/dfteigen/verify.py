"""Residual-based checks of the DFT spectral structure and of computed bases."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .core import (DEFAULT_TOLERANCES, EIGENVALUES, DftSpec, ProjectionSet,
                   Tolerances, build_dft, build_projection_set, dft_power,
                   matveev_multiplicities)
from .orthogonalize import EigenBasis, Method, full_basis


@dataclass(frozen=True)
class Check:
    name: str
    max_residual: float
    tolerance: float
    components: dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        # NaN residuals must fail
        return bool(self.max_residual <= self.tolerance)

    def as_dict(self) -> dict:
        out = {"name": self.name, "max_residual": self.max_residual,
               "tolerance": self.tolerance, "passed": self.passed}
        if self.components:
            out["components"] = dict(self.components)
        return out


def _check(name, components: dict[str, float], tol: float) -> Check:
    worst = max(components.values()) if components else 0.0
    return Check(name, float(worst), tol, {k: float(v) for k, v in components.items()})


def _maxabs(a) -> float:
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0


def check_unitary(m, tol: float = DEFAULT_TOLERANCES.entry, name: str = "unitary") -> Check:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    resid = _maxabs(m.conj().T @ m - np.eye(m.shape[0]))
    return Check(name, resid, tol)


def check_quartic_identity(spec: DftSpec, tol: float = DEFAULT_TOLERANCES.quartic) -> Check:
    phi = build_dft(spec)
    phi4 = dft_power(phi, 2) @ dft_power(phi, 2)
    return Check("quartic_identity", _maxabs(phi4 - np.eye(spec.n)), tol)


def check_projector_algebra(ps: ProjectionSet,
                            tol: float = DEFAULT_TOLERANCES.algebra) -> Check:
    """Idempotence, mutual annihilation, completeness and ``phi p_k = i**k p_k``."""
    n = ps.spec.n
    phi = build_dft(ps.spec)
    p = ps.p
    comps = {
        "idempotence": max(_maxabs(pk @ pk - pk) for pk in p),
        "annihilation": max((_maxabs(p[k] @ p[l]) for k in range(4) for l in range(4)
                             if k != l), default=0.0),
        "completeness": _maxabs(sum(p) - np.eye(n)),
        "eigen_relation": max(_maxabs(phi @ p[k] - EIGENVALUES[k] * p[k])
                              for k in range(4)),
        "symmetry": max(_maxabs(pk - pk.T) for pk in p),
    }
    return _check("projector_algebra", comps, tol)


def check_gramian_identity(ps: ProjectionSet,
                           tol: float = DEFAULT_TOLERANCES.algebra) -> Check:
    """Each ``p_k`` equals the Gramian of its own columns."""
    comps = {}
    for k, pk in enumerate(ps.p):
        comps[f"k{k}"] = _maxabs(pk.T @ pk - pk)
    return _check("gramian_identity", comps, tol)


def check_multiplicities(ps: ProjectionSet,
                         tol: float = DEFAULT_TOLERANCES.multiplicity) -> Check:
    comps = {f"trace_k{k}": abs(t - m) for k, (t, m) in enumerate(zip(ps.traces, ps.mult))}
    comps["sum_minus_n"] = float(abs(sum(ps.mult) - ps.spec.n))
    return _check("trace_multiplicities", comps, tol)


def multiplicity_crosscheck(spec: DftSpec, ps: ProjectionSet | None = None) -> dict:
    """Compare trace multiplicities with the closed-form floor formulas."""
    ps = ps if ps is not None else build_projection_set(spec)
    formula = matveev_multiplicities(spec.n)
    return {
        "trace": list(ps.mult),
        "formula": list(formula),
        "same_multiset": Counter(ps.mult) == Counter(formula),
        "positional_match": tuple(ps.mult) == tuple(formula),
    }


def _expected_diagonal(basis: EigenBasis) -> np.ndarray:
    return np.array([EIGENVALUES[k] for k in basis.ks])


def check_basis(basis: EigenBasis, tol: Tolerances = DEFAULT_TOLERANCES) -> list[Check]:
    """Orthonormality, eigen-residuals and diagonalisation of ``phi``."""
    n = basis.spec.n
    if len(basis.entries) != n:
        raise ValueError(f"basis has {len(basis.entries)} vectors, expected {n}")
    o = basis.matrix
    phi = build_dft(basis.spec)
    ortho = Check("orthonormality", _maxabs(o.T @ o - np.eye(n)), tol.ortho)

    eig = {}
    for idx, (k, v) in enumerate(basis.entries):
        eig[f"v{idx}"] = float(np.linalg.norm(phi @ v - EIGENVALUES[k] * v))
    eigen = _check("eigen_residual", eig, tol.eigen)

    inverse = o.T if ortho.passed else np.linalg.inv(o)
    d = inverse @ phi @ o
    diag = np.diag(d)
    comps = {
        "off_diagonal": _maxabs(d - np.diag(diag)),
        "diagonal": _maxabs(diag - _expected_diagonal(basis)),
    }
    return [ortho, eigen, _check("diagonalization", comps, tol.diagonal)]


def diagonalize(basis: EigenBasis) -> np.ndarray:
    """``O^T phi O`` for the orthonormal basis matrix ``O``."""
    o = basis.matrix
    return o.T @ build_dft(basis.spec) @ o


def _group_projectors(basis: EigenBasis) -> list[np.ndarray]:
    n = basis.spec.n
    out = [np.zeros((n, n)) for _ in range(4)]
    for k, v in basis.entries:
        out[k] += np.outer(v, v)
    return out


def compare_spans(a: EigenBasis, b: EigenBasis,
                  tol: float = DEFAULT_TOLERANCES.span) -> Check:
    """Per eigenspace, the projectors spanned by ``a`` and ``b`` must coincide."""
    if a.spec != b.spec:
        raise ValueError(f"bases built for different specs: {a.spec} vs {b.spec}")
    if a.group_sizes != b.group_sizes:
        raise ValueError(f"group sizes differ: {a.group_sizes} vs {b.group_sizes}")
    pa, pb = _group_projectors(a), _group_projectors(b)
    comps = {f"k{k}": _maxabs(pa[k] - pb[k]) for k in range(4)}
    return _check(f"span_{a.method.value}_vs_{b.method.value}", comps, tol)


def check_span_projection(basis: EigenBasis, ps: ProjectionSet,
                          tol: float = DEFAULT_TOLERANCES.span) -> Check:
    """Projector built from the basis vectors of each eigenspace equals ``p_k``."""
    proj = _group_projectors(basis)
    comps = {f"k{k}": _maxabs(proj[k] - ps.p[k]) for k in range(4)}
    return _check("span_vs_projection", comps, tol)


def check_norm_identity(basis: EigenBasis,
                        tol: float = DEFAULT_TOLERANCES.norm_identity) -> Check:
    comps = {f"k{r.k}": max(r.norm_errors, default=0.0) for r in basis.reports}
    return _check("norm_identity", comps, tol)


@dataclass
class VerificationReport:
    spec: DftSpec
    method: Method
    checks: list[Check]
    crosscheck: dict

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]


def verify_all(spec: DftSpec, method: Method | str = Method.MATVEEV,
               tol: Tolerances = DEFAULT_TOLERANCES,
               cofactor: bool = False) -> VerificationReport:
    """Run every check for ``spec``, building both bases for the span comparison."""
    method = Method(method)
    ps = build_projection_set(spec, tol)
    basis = full_basis(spec, method, ps, tol, cofactor)
    other_method = Method.MGS if method is Method.MATVEEV else Method.MATVEEV
    other = full_basis(spec, other_method, ps, tol, cofactor)

    checks = [
        check_unitary(build_dft(spec), tol.entry),
        check_quartic_identity(spec, tol.quartic),
        check_projector_algebra(ps, tol.algebra),
        check_gramian_identity(ps, tol.algebra),
        check_multiplicities(ps, tol.multiplicity),
        *check_basis(basis, tol),
        check_span_projection(basis, ps, tol.span),
        compare_spans(basis, other, tol.span),
    ]
    if method is Method.MATVEEV:
        checks.append(check_norm_identity(basis, tol.norm_identity))

    cross = multiplicity_crosscheck(spec, ps)
    checks.append(Check("multiplicity_multiset",
                        0.0 if cross["same_multiset"] else 1.0, 0.0))
    return VerificationReport(spec, method, checks, cross)
