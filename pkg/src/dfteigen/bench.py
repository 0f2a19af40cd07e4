"""Cost models and wall-clock scaling of the orthogonalisation methods."""
from __future__ import annotations

import enum
import logging
import math
import statistics
import time
import timeit
from dataclasses import dataclass, field

import numpy as np

from .core import DftSpec, build_projection_set
from .determinant import CofactorTooLarge, cofactor_det
from .orthogonalize import DegenerateGram, Method, full_basis, full_matrix_basis

log = logging.getLogger(__name__)

MATVEEV_MAX_ORDER = 64


class BenchMethod(enum.Enum):
    MATVEEV = "matveev"
    MGS_PROJECTION = "mgs"
    MGS_FULL = "mgs-full"


class EmptyRange(ValueError):
    pass


class TooFewSamples(ValueError):
    pass


def flop_model_mgs(n: int, m: int) -> int:
    """Modified Gram-Schmidt on ``m`` vectors of length ``n``: ``2 n m**2``."""
    if not 0 <= m <= n:
        raise ValueError(f"vector count {m} must be in 0..{n}")
    return 2 * n * m * m


def flop_model_projection_mgs(n: int, mult) -> int:
    return sum(flop_model_mgs(n, m) for m in mult)


def flop_model_matveev(n: int, m: int) -> float:
    """Gram-determinant construction of ``m`` vectors of length ``n`` with LU minors.

    Vector ``j`` needs ``j+1`` determinants of order ``j`` and ``j+1``
    scaled vector additions; the leading minors add one determinant per order.
    """
    lu = lambda order: 2.0 * order ** 3 / 3.0
    cost = sum((j + 1) * (lu(j) + 2 * n) for j in range(m))
    return cost + sum(lu(j) for j in range(1, m + 1))


def fit_scaling_exponent(samples) -> float:
    """Least-squares slope of ``log(seconds)`` against ``log(n)``."""
    samples = list(samples)
    if len(samples) < 3:
        raise TooFewSamples(f"need at least 3 samples, got {len(samples)}")
    ns = [n for n, _ in samples]
    if len(set(ns)) != len(ns):
        raise ValueError(f"duplicate orders in {ns}")
    x = np.log(np.asarray(ns, dtype=float))
    y = np.log(np.asarray([t for _, t in samples], dtype=float))
    return float(np.polyfit(x, y, 1)[0])


def time_call(fn, repeats: int = 5) -> float:
    """Median seconds per call over ``repeats`` auto-ranged timing loops."""
    fn()  # warm-up; also triggers JIT compilation
    timer = timeit.Timer(fn)
    number, _ = timer.autorange()
    runs = timer.repeat(repeat=repeats, number=number)
    return statistics.median(runs) / number


@dataclass(frozen=True)
class BenchSample:
    n: int
    method: BenchMethod
    wall_time: float
    flops_model: float

    def as_dict(self) -> dict:
        return {"n": self.n, "method": self.method.value,
                "wall_time": self.wall_time, "flops_model": self.flops_model}


@dataclass
class BenchReport:
    samples: list[BenchSample]
    exponents: dict[str, float] = field(default_factory=dict)
    skipped: list[dict] = field(default_factory=list)

    def for_method(self, method: BenchMethod) -> list[BenchSample]:
        return [s for s in self.samples if s.method is method]


def _runner(spec, method, ps, cofactor):
    if method is BenchMethod.MGS_FULL:
        return lambda: full_matrix_basis(spec, ps)
    if method is BenchMethod.MATVEEV:
        return lambda: full_basis(spec, Method.MATVEEV, ps, cofactor=cofactor)
    return lambda: full_basis(spec, Method.MGS, ps)


def _flops(n, method, mult) -> float:
    if method is BenchMethod.MGS_FULL:
        return flop_model_mgs(n, n)
    if method is BenchMethod.MGS_PROJECTION:
        return flop_model_projection_mgs(n, mult)
    return sum(flop_model_matveev(n, m) for m in mult)


def run_benchmark(orders, methods=(BenchMethod.MGS_PROJECTION,), repeats: int = 5,
                  matveev_max_order: int = MATVEEV_MAX_ORDER,
                  cofactor: bool = False) -> BenchReport:
    """Time the orthogonalisation stage for each order and method.

    The projection set is built once per order outside the timed region,
    since it is common to every method.
    """
    orders = list(orders)
    if not orders:
        raise EmptyRange("no orders to benchmark")
    if repeats < 1:
        raise ValueError(f"repeats must be >= 1, got {repeats}")
    methods = [BenchMethod(m) for m in methods]

    report = BenchReport([])
    for n in orders:
        spec = DftSpec(n)
        ps = build_projection_set(spec)
        for method in methods:
            if method is BenchMethod.MATVEEV and n > matveev_max_order:
                report.skipped.append({"n": n, "method": method.value,
                                       "reason": f"order above Gram-determinant cap {matveev_max_order}"})
                continue
            fn = _runner(spec, method, ps, cofactor)
            try:
                seconds = time_call(fn, repeats)
            except (DegenerateGram, CofactorTooLarge) as exc:
                report.skipped.append({"n": n, "method": method.value, "reason": str(exc)})
                continue
            log.debug("n=%d %s: %.3e s", n, method.value, seconds)
            report.samples.append(BenchSample(n, method, seconds, _flops(n, method, ps.mult)))

    for method in methods:
        rows = [(s.n, s.wall_time) for s in report.for_method(method)]
        if len(rows) >= 3:
            report.exponents[method.value] = fit_scaling_exponent(rows)
    return report


def cofactor_timings(orders=range(5, 11), rounds: int = 7, seed: int = 0,
                     target: float = 0.2) -> dict[int, float]:
    """CPU seconds per naive cofactor determinant of a random matrix, by order.

    Orders are timed round-robin and the fastest round is kept: the work is
    deterministic, so slower rounds only measure interference, and
    interleaving keeps a burst of interference from hitting one order only.
    """
    rng = np.random.default_rng(seed)
    timers = {}
    numbers = {}
    for order in orders:
        a = rng.standard_normal((order, order))
        timers[order] = timeit.Timer(lambda a=a: cofactor_det(a), timer=time.process_time)
        once = timers[order].timeit(1)
        numbers[order] = max(1, int(target / max(once, 1e-9)))
    best = dict.fromkeys(timers, math.inf)
    for _ in range(rounds):
        for order, timer in timers.items():
            best[order] = min(best[order], timer.timeit(numbers[order]) / numbers[order])
    return best


def growth_ratios(timings: dict[int, float]) -> dict[int, float]:
    """``time(n+1) / time(n)`` keyed by ``n``."""
    return {n: timings[n + 1] / timings[n] for n in sorted(timings) if n + 1 in timings}
