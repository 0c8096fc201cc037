"""
Seeded verification suites run by `check`.

Every suite samples inputs from its own generator (seeded by the run seed and
the suite's position), compares a computed quantity against a proven bound
and counts violations. A suite that raises is reported as failed.
"""

import math
import time
from dataclasses import asdict, dataclass, replace
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np
from loguru import logger

from ..basis import (
    BasisConfig,
    SplitSchedule,
    hat_functional,
    incident_simplex_peak_oracle,
    kernel_peak,
    lipschitz_budget,
    minimality_witness,
    partition_tail,
    schauder_coefficients,
    support_counts,
)
from ..diagrams import SignedDiagram, wasserstein1, wasserstein1_bruteforce
from ..errors import BasisConfigError
from ..featurize import tail_bound, tightness_pair, vectorize
from ..geometry import PolyhedralPair, mixup_pair, persistence_plane, sample_points, signed_barcode_pair
from ..geometry.pair import SQRT2
from ..triangulation import LatticeVertex, enumerate_vertices, mesh_diameter, star_weights


@dataclass
class SuiteResult:
    name: str
    passed: bool
    trials: int
    violations: int
    max_excess: Optional[float]
    seconds: float = 0.0
    detail: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


class _Tally:
    """Counts checks of lhs <= rhs and keeps the largest lhs - rhs."""

    def __init__(self):
        self.checks = 0
        self.violations = 0
        self.max_excess = -math.inf

    def check(self, lhs: float, rhs: float) -> None:
        self.checks += 1
        excess = float(lhs) - float(rhs)
        if excess > 0 or math.isnan(excess):
            self.violations += 1
        self.max_excess = max(self.max_excess, excess)

    def result(self, name: str, trials: int, detail: str = "") -> SuiteResult:
        excess = None if self.checks == 0 else self.max_excess
        return SuiteResult(name, self.violations == 0, trials, self.violations, excess, 0.0, detail)


def _diagram(
    pair: PolyhedralPair,
    rng: np.random.Generator,
    count: int,
    low: float,
    high: float,
    signed: bool = True,
) -> SignedDiagram:
    points = sample_points(pair, rng, low, high, count)
    weights = rng.choice([-1.0, 1.0], size=count) if signed else np.ones(count)
    return SignedDiagram(pair, points, weights)


# ----------------------------------------------------------------------
# Suites
# ----------------------------------------------------------------------

def peak_suite(rng: np.random.Generator, trials: int) -> SuiteResult:
    """kernel_peak under z = 2, L_n = 2^-n is 1/(sqrt(2) 4^n) and matches the incident-simplex oracle."""
    config = BasisConfig.build(persistence_plane(), 2, None, max(trials - 1, 0), 1)
    oracle = incident_simplex_peak_oracle(config.dimension)
    tally = _Tally()
    for n in range(trials):
        peak = kernel_peak(config, n)
        tally.check(abs(peak - 1.0 / (SQRT2 * 4.0 ** n)), 1e-15)
        tally.check(abs(peak - oracle * config.schedule.value(n) / 2.0 ** n), 1e-12)
    return tally.result("peak", trials, f"oracle={oracle!r}")


def budget_suite(rng: np.random.Generator, trials: int) -> SuiteResult:
    """Per-layer kernel counts stay <= d + 1 and the Lipschitz budget <= (d + 1) * sum L_n."""
    config = BasisConfig.build(persistence_plane(), 2, None, 6, 8)
    d = config.dimension
    cap = (d + 1) * config.schedule.partial(config.max_layer)
    tally = _Tally()
    worst = 0.0
    for x in sample_points(config.pair, rng, -7.5, 7.5, trials):
        for c in support_counts(config, x):
            tally.check(c, d + 1)
        budget = lipschitz_budget(config, x)
        worst = max(worst, budget)
        tally.check(budget, cap + 1e-12)
    return tally.result("budget", trials, f"max budget {worst:.6g} vs cap {cap:.6g}")


def _subset_quotients(
    pair: PolyhedralPair, rng: np.random.Generator, subsets: int, pairs_per_subset: int, tally: _Tally
) -> float:
    config = BasisConfig.build(pair, 2, None, 2, 2)
    tri = config.triangulation
    d = config.dimension
    worst = 0.0
    for _ in range(subsets):
        n = int(rng.integers(0, 3))
        vertices = [v for m in range(n + 1) for v in enumerate_vertices(tri, m, 2)]
        chosen = {v for v in vertices if rng.random() < 0.5}
        peak = kernel_peak(config, n)
        bound = math.sqrt(d / 2.0) * config.schedule.value(n)

        def g(point: np.ndarray) -> float:
            return peak * sum(lam for w, lam in star_weights(tri, n, point) if w in chosen)

        done = 0
        while done < pairs_per_subset:
            x = sample_points(pair, rng, -1.5, 1.5, 1)[0]
            step = rng.normal(size=d)
            step *= rng.uniform(0.05, 0.5) / (float(np.linalg.norm(step)) * 2.0 ** n)
            y = x + step
            if not pair.contains(y):
                continue
            quotient = abs(g(x) - g(y)) / float(np.linalg.norm(x - y))
            worst = max(worst, quotient / bound)
            tally.check(quotient, bound + 1e-9)
            done += 1
    return worst


def subset_suite(rng: np.random.Generator, trials: int) -> SuiteResult:
    """Sums of single-layer kernels over any vertex subset are sqrt(d/2) L_n Lipschitz (d = 2 and 3)."""
    tally = _Tally()
    ratios = []
    for pair in (persistence_plane(), mixup_pair()):
        ratios.append(_subset_quotients(pair, rng, trials, 100, tally))
    return tally.result("subset", trials, "max quotient / bound: " + ", ".join(f"{r:.6f}" for r in ratios))


def tightness_suite(rng: np.random.Generator, trials: int) -> SuiteResult:
    """The N_odd pair reaches the layer-0 ratio sqrt(2d) L_0 with L_0 = L - 1e-3."""
    schedule = SplitSchedule(1.999, 1e-3, 0.5)
    config = BasisConfig.build(persistence_plane(), 2, schedule, 6, 8)
    pair = config.pair
    limit = 1.0 / (2 * (config.dimension + 1))
    tally = _Tally()
    for k in range(trials):
        t = limit * (k + 1) / (trials + 1)
        tp = tightness_pair(config, t)
        fx = vectorize(config, SignedDiagram.dirac(pair, tp.x)).restrict([0])
        fy = vectorize(config, SignedDiagram.dirac(pair, tp.y)).restrict([0])
        achieved = fx.l1_distance(fy)
        tally.check(tp.predicted_ratio * tp.distance - 1e-9, achieved)
    expected = math.sqrt(2 * config.dimension) * schedule.value(0)
    return tally.result("tightness", trials, f"predicted ratio {expected:.6g}, total L {schedule.total:.6g}")


def _stacked_config() -> BasisConfig:
    return BasisConfig.build(persistence_plane(), 2, None, 8, 8, "stacked")


def partition_suite(rng: np.random.Generator, trials: int) -> SuiteResult:
    """Sum of all stacked functionals at interior x equals d(x, A) up to twice the truncation defect."""
    config = _stacked_config()
    pair = config.pair
    inner = config.rafter_radius - SQRT2
    tally = _Tally()
    for x in sample_points(pair, rng, -inner, inner, trials):
        total = sum(vectorize(config, SignedDiagram.dirac(pair, x)).values.values())
        tally.check(abs(total - pair.distance_to_A(x)), 2.0 * partition_tail(config, x) + 1e-12)
    return tally.result("partition", trials)


def norm_suite(rng: np.random.Generator, trials: int) -> SuiteResult:
    """For unsigned diagrams the stacked l1 norm equals W1(alpha, 0) up to the truncation defect."""
    config = _stacked_config()
    pair = config.pair
    inner = config.rafter_radius - SQRT2
    empty = SignedDiagram.empty(pair)
    tally = _Tally()
    for _ in range(trials):
        alpha = _diagram(pair, rng, int(rng.integers(0, 6)), -inner, inner, signed=False)
        l1 = vectorize(config, alpha).l1_norm
        w1 = wasserstein1(pair, alpha, empty)
        tally.check(abs(l1 - w1), 2.0 * tail_bound(config, alpha) + 1e-9)
    return tally.result("norm", trials)


def reconstruction_suite(rng: np.random.Generator, trials: int, grid: int = 100) -> SuiteResult:
    """Layer-N partial sums of hat functionals stay within Lip(f) * M_N of f on a grid."""
    config = BasisConfig.build(persistence_plane(), 2, None, 5, 8)
    pair = config.pair
    tri = config.triangulation
    tally = _Tally()
    for k in range(trials):
        radius = float(rng.uniform(0.4, 1.0))
        center = sample_points(pair, rng, -5.0, 5.0, 1, min_distance_to_A=radius + 0.5)[0]
        height = float(rng.uniform(0.5, 2.0) * rng.choice([-1.0, 1.0]))
        f = hat_functional(center, radius, height, name=f"hat{k}")
        coeffs = schauder_coefficients(config, f)
        bounds = [f.lipschitz * mesh_diameter(tri, n) + 1e-9 for n in range(config.max_layer + 1)]
        axes = [np.linspace(c - radius - 0.25, c + radius + 0.25, grid) for c in center]
        for x0 in axes[0]:
            for x1 in axes[1]:
                x = np.array([x0, x1])
                if not pair.contains(x):
                    continue
                sums = coeffs.partial_sums(x)
                value = f(x)
                for n, bound in enumerate(bounds):
                    tally.check(abs(value - sums[n]), bound)
    return tally.result("reconstruction", trials)


def oracle_suite(rng: np.random.Generator, trials: int) -> SuiteResult:
    """The assignment W1 agrees with exhaustive matching on small signed instances."""
    pairs = (persistence_plane(), mixup_pair(), signed_barcode_pair(2))
    tally = _Tally()
    for k in range(trials):
        pair = pairs[k % len(pairs)]
        parts = []
        for _ in range(2):
            pos = _diagram(pair, rng, int(rng.integers(0, 4)), 0.0, 4.0, signed=False)
            neg = _diagram(pair, rng, int(rng.integers(0, 2)), 0.0, 4.0, signed=False)
            parts.append(pos - neg)
        alpha, beta = parts
        tally.check(abs(wasserstein1(pair, alpha, beta) - wasserstein1_bruteforce(pair, alpha, beta)), 1e-9)
    return tally.result("oracle", trials)


def witness_suite(rng: np.random.Generator, trials: int) -> SuiteResult:
    """Witnesses agree with delta_v on every window index except v and differ at v."""
    config = BasisConfig.build(persistence_plane(), 2, None, 2, 4)
    pair = config.pair
    z = config.z
    pools: List[List[LatticeVertex]] = [enumerate_vertices(config.triangulation, m, 3) for m in range(3)]
    tally = _Tally()
    for k in range(trials):
        pool = pools[k % len(pools)]
        v = pool[int(rng.integers(0, len(pool)))]
        beta = minimality_witness(config, v)
        fv = vectorize(config, SignedDiagram.dirac(pair, v.point(z))).values
        fb = vectorize(config, beta).values
        for u in set(fv) | set(fb):
            gap = abs(fv.get(u, 0.0) - fb.get(u, 0.0))
            if u == v:
                tally.check(1e-6, gap)
            else:
                tally.check(gap, 1e-12)
    return tally.result("witness", trials)


def stability_suite(rng: np.random.Generator, trials: int) -> SuiteResult:
    """|F(a) - F(b)|_1 <= sqrt(2d) L W1(a, b) plus both truncation tails."""
    config = BasisConfig.build(persistence_plane(), 2, None, 6, 8)
    pair = config.pair
    tally = _Tally()
    worst = 0.0
    for _ in range(trials):
        alpha = _diagram(pair, rng, int(rng.integers(0, 7)), 0.0, 6.0)
        beta = _diagram(pair, rng, int(rng.integers(0, 7)), 0.0, 6.0)
        gap = vectorize(config, alpha).l1_distance(vectorize(config, beta))
        w1 = wasserstein1(pair, alpha, beta)
        bound = config.cfk_constant * w1 + tail_bound(config, alpha) + tail_bound(config, beta)
        if w1 > 0:
            worst = max(worst, gap / (config.cfk_constant * w1))
        tally.check(gap, bound + 1e-9)
    return tally.result("stability", trials, f"max |dF| / (sqrt(2d) L W1) = {worst:.6f}")


# ----------------------------------------------------------------------
# Registry + runner
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Suite:
    name: str
    run: Callable[[np.random.Generator, int], SuiteResult]
    trials: int


SUITES: Dict[str, Suite] = {
    s.name: s
    for s in (
        Suite("peak", peak_suite, 7),
        Suite("budget", budget_suite, 1000),
        Suite("subset", subset_suite, 100),
        Suite("tightness", tightness_suite, 5),
        Suite("partition", partition_suite, 200),
        Suite("norm", norm_suite, 100),
        Suite("reconstruction", reconstruction_suite, 5),
        Suite("oracle", oracle_suite, 500),
        Suite("witness", witness_suite, 20),
        Suite("stability", stability_suite, 1000),
    )
}


class SuiteRunner:
    """Runs named suites with a shared seed and collects a JSON-ready report."""

    def __init__(self, seed: int = 42, trials: Optional[int] = None):
        self.seed = int(seed)
        self.trials = trials
        self.logger = logger.bind(module="SuiteRunner")

    def select(self, names: Optional[Sequence[str]] = None) -> List[Suite]:
        if not names:
            return list(SUITES.values())
        unknown = [n for n in names if n not in SUITES]
        if unknown:
            raise BasisConfigError(f"unknown suite(s) {', '.join(unknown)}; choose from {', '.join(SUITES)}")
        return [SUITES[n] for n in dict.fromkeys(names)]

    def run_suite(self, suite: Suite) -> SuiteResult:
        position = list(SUITES).index(suite.name)
        rng = np.random.default_rng([self.seed, position])
        trials = suite.trials if self.trials is None else int(self.trials)
        started = time.perf_counter()
        try:
            result = suite.run(rng, trials)
        except Exception as exc:
            self.logger.error(f"suite {suite.name} raised {type(exc).__name__}: {exc}")
            result = SuiteResult(suite.name, False, trials, 0, None, 0.0, f"error: {exc}")
        result = replace(result, seconds=round(time.perf_counter() - started, 3))
        status = "passed" if result.passed else "FAILED"
        self.logger.info(f"suite {suite.name} {status}: {result.violations} violation(s) in {result.seconds}s")
        return result

    def run(self, names: Optional[Sequence[str]] = None) -> Dict[str, Any]:
        suites = self.select(names)
        results = [self.run_suite(s) for s in suites]
        return {
            "seed": self.seed,
            "suites": [r.to_dict() for r in results],
            "passed": all(r.passed for r in results),
        }
