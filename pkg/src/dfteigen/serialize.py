"""JSON and CSV documents for bases, verification reports and benchmarks.

Floats are written with ``repr``, the shortest string that round-trips to
the same double, so JSON and CSV carry identical values.
"""
from __future__ import annotations

import csv
import io
import json

import numpy as np

from .bench import BenchReport
from .core import EIGENVALUE_LABELS, Convention, DftSpec, Tolerances
from .orthogonalize import EigenBasis, Method
from .verify import VerificationReport

SCHEMA_VERSION = "1.0"

_LABEL_TO_K = {label: k for k, label in enumerate(EIGENVALUE_LABELS)}


def _header(spec: DftSpec | None, method: str, tol: Tolerances) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "n": spec.n if spec is not None else None,
        "convention": (spec.convention if spec is not None else Convention.PLUS).value,
        "method": method,
        "tolerances": tol.as_dict(),
    }


def basis_document(basis: EigenBasis, tol: Tolerances) -> dict:
    doc = _header(basis.spec, basis.method.value, tol)
    doc["vectors"] = [
        {"k": k, "lambda": EIGENVALUE_LABELS[k], "components": [float(x) for x in v]}
        for k, v in basis.entries
    ]
    return doc


def basis_from_document(doc: dict) -> EigenBasis:
    """Rebuild an :class:`EigenBasis` from a parsed basis document."""
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema version {doc.get('schema_version')!r}")
    spec = DftSpec(int(doc["n"]), Convention(doc["convention"]))
    ks = []
    rows = []
    for entry in doc["vectors"]:
        k = int(entry["k"])
        if _LABEL_TO_K[entry["lambda"]] != k:
            raise ValueError(f"eigenvalue label {entry['lambda']!r} does not match k={k}")
        ks.append(k)
        rows.append(entry["components"])
    vectors = np.array(rows, dtype=float).reshape(len(rows), spec.n)
    return EigenBasis(spec, tuple(ks), vectors, Method(doc["method"]))


def basis_csv(basis: EigenBasis) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["k", "lambda"] + [f"c{i}" for i in range(basis.spec.n)])
    for k, v in basis.entries:
        writer.writerow([k, EIGENVALUE_LABELS[k]] + [repr(float(x)) for x in v])
    return buf.getvalue()


def verify_document(report: VerificationReport, tol: Tolerances) -> dict:
    doc = _header(report.spec, report.method.value, tol)
    doc["checks"] = [c.as_dict() for c in report.checks]
    doc["multiplicity_crosscheck"] = report.crosscheck
    doc["overall"] = report.overall
    return doc


def bench_document(report: BenchReport, repeats: int, tol: Tolerances) -> dict:
    methods = sorted({s.method.value for s in report.samples}
                     | {s["method"] for s in report.skipped})
    doc = _header(None, ",".join(methods), tol)
    doc["repeats"] = repeats
    doc["samples"] = [s.as_dict() for s in report.samples]
    doc["exponents"] = dict(report.exponents)
    doc["skipped"] = list(report.skipped)
    return doc


def bench_csv(report: BenchReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["n", "method", "wall_time", "flops_model"])
    for s in report.samples:
        writer.writerow([s.n, s.method.value, repr(s.wall_time), repr(float(s.flops_model))])
    return buf.getvalue()


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"
