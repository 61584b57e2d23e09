"""Verification campaigns, coverage evaluation, and report types.

Each campaign checks one structural claim exhaustively at desk scale and
returns a report listing any counterexamples. Coverage is the probability
that the bound does not exceed the true mean; a bound is valid at level
1 - alpha when that probability is at least 1 - alpha for every
distribution (bound <= mean counts as covered).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .closedform import lexi_low_homogeneous
from .dist import (
    Distribution,
    SupportSet,
    full_support,
    mean,
    mean_lipschitz_check,
    prob_upper_set,
    sample_prob,
    transfer_to_augmented,
)
from .oracle import OracleConfig, pessimal_bound_oracle, refined_support
from .orders import (
    LexiLow,
    LexiHigh,
    Preorder,
    Quantile,
    EQUIVALENT,
    LESS,
    enumerate_omega,
    is_monotone,
    monotone_linear_extensions,
    upper_set,
)
from .support import Sample, SupportGrid, homogeneous_sample

SCHEMA_VERSION = 1
COVERED_SLACK = 1e-12


def make_rng(seed: int) -> np.random.Generator:
    """Counter-based Philox generator keyed by the seed.

    Trial t of a Monte Carlo run consumes row t of one stream, so chunked
    or parallel evaluation that preserves row indices reproduces serial
    results exactly.
    """
    return np.random.Generator(np.random.Philox(key=seed))


def random_distribution(grid: SupportGrid, rng: np.random.Generator) -> Distribution:
    return Distribution(grid, rng.dirichlet(np.ones(grid.m)))


@dataclass(frozen=True, eq=False)
class CoverageReport:
    method: str
    alpha: float
    n: int
    distribution: Distribution
    coverage: float
    mode: str
    trials: int | None = None
    seed: int | None = None

    def to_dict(self) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "method": self.method,
            "alpha": self.alpha,
            "n": self.n,
            "distribution": [float(v) for v in self.distribution.mass],
            "coverage": self.coverage,
            "mode": self.mode,
        }
        if self.mode == "MONTE_CARLO":
            out["trials"] = self.trials
            out["seed"] = self.seed
        return out


@dataclass
class VerifyReport:
    theorem: str
    instances_checked: int
    failures: list[str] = field(default_factory=list)
    tolerance: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "theorem": self.theorem,
            "instances_checked": self.instances_checked,
            "failures": list(self.failures),
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


class OracleCache:
    """Memoizes oracle values by everything they depend on: grid, n,
    alpha, search support, and the upper set itself. Distinct samples
    sharing an upper set (e.g. under a quantile preorder) hit one entry."""

    def __init__(self, cfg: OracleConfig | None = None):
        self.cfg = cfg or OracleConfig()
        self._omega: dict[tuple, list[Sample]] = {}
        self._values: dict[tuple, float] = {}

    def omega(self, grid: SupportGrid, n: int) -> list[Sample]:
        key = (grid, n)
        if key not in self._omega:
            self._omega[key] = enumerate_omega(grid, n)
        return self._omega[key]

    def value(self, x: Sample, order: Preorder, alpha: float,
              support: SupportSet | None = None) -> float:
        sup = support or self.cfg.support_override or refined_support(x, order)
        members = upper_set(x, order, self.omega(x.grid, x.n)).member_set()
        key = (x.grid, x.n, alpha, sup.indices, members, self.cfg.resolution)
        if key not in self._values:
            cfg = replace(self.cfg, support_override=sup)
            self._values[key] = pessimal_bound_oracle(x, order, alpha, cfg).value
        return self._values[key]


def value_tolerance(grid: SupportGrid, cfg: OracleConfig) -> float:
    """Default slack for oracle-value comparisons: twice the grid step
    the search was asked for, scaled by the support range."""
    return 2.0 * cfg.resolution * (grid.s_max - grid.s_min)


def exact_coverage(F: Distribution, bound_fn, n: int, alpha: float,
                   method: str = "custom") -> CoverageReport:
    """Coverage by full enumeration of the sample space."""
    omega = enumerate_omega(F.grid, n)
    mu = mean(F)
    cov = sum(
        sample_prob(F, x) for x in omega if bound_fn(x) <= mu + COVERED_SLACK
    )
    return CoverageReport(method, alpha, n, F, float(cov), "EXACT")


def mc_coverage(F: Distribution, bound_fn, n: int, trials: int, seed: int,
                alpha: float, method: str = "custom") -> CoverageReport:
    """Coverage by seeded simulation; deterministic given the seed."""
    if trials < 1:
        raise ValueError("need at least one trial")
    rng = make_rng(seed)
    u = rng.random((trials, n))
    cum = np.cumsum(F.mass)
    idx = np.searchsorted(cum, u, side="right")
    idx = np.minimum(idx, F.grid.m - 1)
    idx.sort(axis=1)
    mu = mean(F)
    uniq, counts = np.unique(idx, axis=0, return_counts=True)
    covered = 0
    for row, c in zip(uniq, counts):
        x = Sample(F.grid, tuple(int(i) for i in row))
        if bound_fn(x) <= mu + COVERED_SLACK:
            covered += int(c)
    return CoverageReport(method, alpha, n, F, covered / trials, "MONTE_CARLO",
                          trials=trials, seed=seed)


def make_oracle_bound(order: Preorder, alpha: float,
                      cache: OracleCache | None = None):
    """Bound function backed by the search oracle, memoized per upper set."""
    cache = cache or OracleCache()

    def bound(x: Sample) -> float:
        return cache.value(x, order, alpha)

    return bound


def verify_sandwich(grid: SupportGrid, n: int, alpha: float,
                    cfg: OracleConfig | None = None,
                    orders: list[Preorder] | None = None) -> VerifyReport:
    """Extremality of the lexicographic orders among monotone orders.

    For every monotone total order T and homogeneous sample: the
    low-lexicographic upper set is contained in T's, which is contained
    in the high-lexicographic one (checked as exact set inclusions), and
    for every x sitting between consecutive homogeneous samples under T
    the bound values form the matching chain (checked with slack twice
    the value tolerance). Non-monotone orders passed in are filtered out,
    not asserted on.
    """
    cfg = cfg or OracleConfig()
    cache = OracleCache(cfg)
    omega = cache.omega(grid, n)
    if orders is None:
        orders = monotone_linear_extensions(omega)
    orders = [T for T in orders if is_monotone(T, omega)]
    tol = value_tolerance(grid, cfg)
    lexi_low, lexi_high = LexiLow(), LexiHigh()
    report = VerifyReport("sandwich", 0, tolerance=tol)

    homs = [homogeneous_sample(grid, i, n) for i in range(grid.m)]
    for T in orders:
        for i, si in enumerate(homs):
            u_low = upper_set(si, lexi_low, omega).member_set()
            u_t = upper_set(si, T, omega).member_set()
            u_high = upper_set(si, lexi_high, omega).member_set()
            report.instances_checked += 1
            if not (u_low <= u_t <= u_high):
                report.failures.append(f"upper-set inclusion broken at S_{i}")
        for i in range(grid.m - 1):
            lo = cache.value(homs[i], lexi_high, alpha)
            hi = cache.value(homs[i + 1], lexi_low, alpha)
            for x in omega:
                if T.leq(homs[i], x) and T.leq(x, homs[i + 1]):
                    v = cache.value(x, T, alpha)
                    report.instances_checked += 1
                    if not (lo - 2 * tol <= v <= hi + 2 * tol):
                        report.failures.append(
                            f"value chain broken at x={x.idx}, i={i}: "
                            f"{lo:.6f} <= {v:.6f} <= {hi:.6f} fails at 2*tol={2 * tol:.2e}"
                        )
        for i, si in enumerate(homs):
            v = cache.value(si, T, alpha)
            lo = cache.value(si, lexi_high, alpha)
            hi = lexi_low_homogeneous(grid, i, n, alpha)
            report.instances_checked += 1
            if not (lo - tol <= v <= hi + tol):
                report.failures.append(
                    f"extremality broken at S_{i}: {lo:.6f} <= {v:.6f} <= {hi:.6f}"
                )
    return report


def verify_consistency(order: Preorder, bound_values: dict[Sample, float],
                       tolerance: float = 0.0) -> VerifyReport:
    """A bound is consistent with a preorder iff it is monotone across
    strict comparisons and constant across equivalences."""
    samples = list(bound_values)
    if not samples:
        raise ValueError("empty bound table")
    omega = enumerate_omega(samples[0].grid, samples[0].n)
    missing = [x.idx for x in omega if x not in bound_values]
    if missing:
        raise ValueError(f"bound table missing samples: {missing}")
    report = VerifyReport(f"consistency[{order.name}]", 0, tolerance=tolerance)
    for x in omega:
        for y in omega:
            rel = order.compare(x, y)
            report.instances_checked += 1
            bx, by = bound_values[x], bound_values[y]
            if rel == LESS and bx > by + tolerance:
                report.failures.append(f"{x.idx} < {y.idx} but B rises {bx:.6f} -> {by:.6f}")
            if rel == EQUIVALENT and abs(bx - by) > tolerance:
                report.failures.append(f"{x.idx} ~ {y.idx} but B differs {bx:.6f} vs {by:.6f}")
    return report


def consistency_campaign(grid: SupportGrid, n: int, alpha: float,
                         cfg: OracleConfig | None = None) -> list[VerifyReport]:
    """Oracle-value consistency for the built-in preorders."""
    cfg = cfg or OracleConfig()
    cache = OracleCache(cfg)
    omega = cache.omega(grid, n)
    tol = value_tolerance(grid, cfg)
    orders: list[Preorder] = [LexiLow(), LexiHigh()] + [Quantile(i) for i in range(1, n + 1)]
    reports = []
    for order in orders:
        table = {x: cache.value(x, order, alpha) for x in omega}
        reports.append(verify_consistency(order, table, tolerance=tol))
    return reports


def _agreement_set(x: Sample, order: Preorder) -> SupportSet:
    if isinstance(order, Quantile):
        return SupportSet.of([x.order_stat(order.i)])
    if isinstance(order, LexiLow):
        return SupportSet.of(x.distinct_indices)
    raise ValueError(f"no agreement construction for order {order.name}")


def verify_agreement(x: Sample, order: Preorder, trials: int, seed: int) -> VerifyReport:
    """Upper-set probabilities are blind to mass arrangements off the
    relevant support values.

    For random G, move sub-threshold mass to the grid minimum and
    inter-gap mass to successor points; the transfer agrees with G
    pointwise and cumulatively on those values, and the upper-set
    probability must be unchanged to within 1e-12.
    """
    grid = x.grid
    omega = enumerate_omega(grid, x.n)
    U = upper_set(x, order, omega)
    C = _agreement_set(x, order)
    rng = make_rng(seed)
    report = VerifyReport(f"agreement[{order.name}]", 0, tolerance=1e-12)
    for _ in range(trials):
        G = random_distribution(grid, rng)
        H = transfer_to_augmented(G, C, grid)
        delta = abs(prob_upper_set(G, U) - prob_upper_set(H, U))
        report.instances_checked += 1
        if delta > 1e-12:
            report.failures.append(
                f"x={x.idx}, order={order.name}: probability moved by {delta:.3e}"
            )
    return report


def verify_refinement(grid: SupportGrid, n: int, alpha: float,
                      cfg: OracleConfig | None = None) -> VerifyReport:
    """Support restriction does not change oracle values for quantile and
    low-lexicographic preorders (within twice the value tolerance)."""
    cfg = cfg or OracleConfig()
    cache = OracleCache(cfg)
    omega = cache.omega(grid, n)
    tol = value_tolerance(grid, cfg)
    report = VerifyReport("refinement", 0, tolerance=2 * tol)
    orders: list[Preorder] = [LexiLow()] + [Quantile(i) for i in range(1, n + 1)]
    for order in orders:
        for x in omega:
            refined = cache.value(x, order, alpha)
            full = cache.value(x, order, alpha, support=full_support(grid))
            report.instances_checked += 1
            if abs(refined - full) > 2 * tol:
                report.failures.append(
                    f"x={x.idx}, order={order.name}: refined {refined:.6f} vs full {full:.6f}"
                )
    return report


def verify_lipschitz(ms: tuple[int, ...] = (2, 5, 10), pairs: int = 1000,
                     seed: int = 20260810) -> VerifyReport:
    """Mean differences are Lipschitz in the l2 mass distance."""
    report = VerifyReport("mean-lipschitz", 0, tolerance=1e-12)
    for m in ms:
        grid = SupportGrid(0.0, 1.0, m)
        rng = make_rng(seed + m)
        for _ in range(pairs):
            u = random_distribution(grid, rng)
            v = random_distribution(grid, rng)
            report.instances_checked += 1
            if not mean_lipschitz_check(u, v):
                report.failures.append(f"violated at m={m}")
    return report


def run_all(grid: SupportGrid | None = None, n: int = 2, alpha: float = 0.25,
            cfg: OracleConfig | None = None, trials: int = 200,
            seed: int = 20260810) -> list[VerifyReport]:
    """The shipped default campaign: sandwich, consistency, agreement,
    refinement, and the mean-Lipschitz sweep."""
    grid = grid or SupportGrid(0.0, 1.0, 3)
    cfg = cfg or OracleConfig()
    reports = [verify_sandwich(grid, n, alpha, cfg)]
    reports.extend(consistency_campaign(grid, n, alpha, cfg))
    agree_grid = SupportGrid(grid.s_min, grid.s_max, 5)
    agree_x = Sample(agree_grid, (1, 1, 3))
    reports.append(verify_agreement(agree_x, LexiLow(), trials, seed))
    reports.append(verify_agreement(agree_x, Quantile(2), trials, seed + 1))
    reports.append(verify_refinement(grid, n, alpha, cfg))
    reports.append(verify_lipschitz(seed=seed))
    return reports
