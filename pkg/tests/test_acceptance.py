"""End-to-end acceptance criteria; each test prints one PASS/FAIL line."""
import json
import subprocess
import sys
import time

import numpy as np
import pytest

from dfteigen.bench import (BenchMethod, cofactor_timings, flop_model_mgs,
                            flop_model_projection_mgs, growth_ratios, run_benchmark)
from dfteigen.core import Convention, DftSpec, build_dft, build_projection_set
from dfteigen.demo import run_demo
from dfteigen.orthogonalize import Method, full_basis
from dfteigen.serialize import basis_from_document
from dfteigen.verify import (check_basis, check_gramian_identity, check_multiplicities,
                             check_norm_identity, check_projector_algebra,
                             check_quartic_identity, check_span_projection, check_unitary,
                             multiplicity_crosscheck)


@pytest.fixture
def report(capsys):
    def emit(label, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {label}: {detail}")
        return ok
    return emit


def test_ac1_golden_order_six(report):
    start = time.perf_counter()
    res = run_demo()
    elapsed = time.perf_counter() - start
    expected = np.array([1, 1, 1j, -1, -1, -1j])
    diag_err = float(np.max(np.abs(np.diag(res.diagonalized) - expected)))
    ok = (res.table_error <= 1e-3 and diag_err <= 1e-10 and res.off_diagonal <= 1e-10
          and res.gram_error <= 1e-10 and elapsed < 1.0)
    detail = (f"table {res.table_error:.2e}, diagonal {diag_err:.2e}, "
              f"off-diagonal {res.off_diagonal:.2e}, gram {res.gram_error:.2e}, "
              f"sign flips {res.flipped or 'none'}, {elapsed:.3f} s")
    assert report("AC1 golden 6x6 reproduction", ok, detail)


def test_ac2_invariants(report):
    start = time.perf_counter()
    worst = {}
    failures = []
    for conv in Convention:
        for n in range(1, 25):
            spec = DftSpec(n, conv)
            ps = build_projection_set(spec)
            checks = [check_unitary(build_dft(spec), 1e-12),
                      check_quartic_identity(spec, 1e-11),
                      check_projector_algebra(ps, 1e-10),
                      check_gramian_identity(ps, 1e-10),
                      check_multiplicities(ps, 1e-9)]
            for c in checks:
                worst[c.name] = max(worst.get(c.name, 0.0), c.max_residual)
                if not c.passed:
                    failures.append((n, conv.value, c.name))
            if sum(ps.mult) != n:
                failures.append((n, conv.value, "sum"))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 30
    detail = ", ".join(f"{k} {v:.1e}" for k, v in worst.items()) + f", {elapsed:.2f} s"
    assert report("AC2 invariants n=1..24", ok, detail), failures


def test_ac3_basis_quality(report):
    worst = dict.fromkeys(["orthonormality", "eigen_residual", "norm_identity", "span"], 0.0)
    for conv in Convention:
        for n in range(2, 17):
            spec = DftSpec(n, conv)
            ps = build_projection_set(spec)
            for method in Method:
                b = full_basis(spec, method, ps)
                o = b.matrix
                worst["orthonormality"] = max(worst["orthonormality"],
                                              float(np.max(np.abs(o.T @ o - np.eye(n)))))
                worst["eigen_residual"] = max(worst["eigen_residual"],
                                              check_basis(b)[1].max_residual)
                worst["span"] = max(worst["span"], check_span_projection(b, ps).max_residual)
                if method is Method.MATVEEV:
                    worst["norm_identity"] = max(worst["norm_identity"],
                                                 check_norm_identity(b).max_residual)
    limits = {"orthonormality": 1e-9, "eigen_residual": 1e-8,
              "norm_identity": 1e-6, "span": 1e-8}
    ok = all(worst[k] <= limits[k] for k in limits)
    detail = ", ".join(f"{k} {v:.1e}" for k, v in worst.items())
    assert report("AC3 basis quality n=2..16", ok, detail)


def test_ac4_multiplicity_crosscheck(report):
    bad = [n for n in range(1, 65) if not multiplicity_crosscheck(DftSpec(n))["same_multiset"]]
    six = multiplicity_crosscheck(DftSpec(6))
    ok = not bad and six["trace"] == [2, 1, 2, 1] and six["formula"] == [1, 2, 1, 2]
    detail = (f"multisets agree for n=1..64 ({len(bad)} mismatches); n=6 positional: "
              f"trace {tuple(six['trace'])} vs formula {tuple(six['formula'])}")
    assert report("AC4 multiplicity cross-check", ok, detail)


def test_ac5_complexity(report):
    start = time.perf_counter()
    bench = run_benchmark([32, 64, 128, 256], [BenchMethod.MGS_PROJECTION], repeats=5)
    exponent = bench.exponents["mgs"]
    factors = [flop_model_mgs(n, n) / flop_model_projection_mgs(
        n, build_projection_set(DftSpec(n)).mult) for n in (32, 64, 128, 256, 512)]
    ratios = growth_ratios(cofactor_timings(range(5, 11)))
    r = [ratios[n] for n in range(5, 10)]
    elapsed = time.perf_counter() - start
    ok = (2.5 <= exponent <= 3.5 and min(factors) >= 3
          and all(a < b for a, b in zip(r, r[1:])) and elapsed < 120)
    detail = (f"MGS exponent {exponent:.2f}, min model factor {min(factors):.2f}, "
              f"cofactor ratios {[round(x, 2) for x in r]}, {elapsed:.1f} s")
    assert report("AC5 complexity properties", ok, detail)


def test_ac6_determinism_round_trip(report):
    cmd = [sys.executable, "-m", "dfteigen", "basis", "-n", "12",
           "--method", "matveev", "--format", "json"]
    runs = [subprocess.run(cmd, capture_output=True, check=True).stdout for _ in range(2)]
    basis = basis_from_document(json.loads(runs[0]))
    checks = check_basis(basis)
    ok = runs[0] == runs[1] and all(c.passed for c in checks)
    detail = (f"byte-identical {runs[0] == runs[1]} ({len(runs[0])} bytes), "
              + ", ".join(f"{c.name} {c.max_residual:.1e}" for c in checks))
    assert report("AC6 determinism and round-trip", ok, detail)
