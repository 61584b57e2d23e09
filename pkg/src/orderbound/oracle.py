"""Ground-truth bounds by exhaustive search over a quantized simplex.

The bound for sample x under a preorder is the smallest mean among
distributions that give the upper set of x probability at least alpha.
This module minimizes the mean over mass vectors with entries on a grid
of step ``resolution``, restricted to a support subset that provably
suffices for the preorder at hand, and then sharpens the incumbent with
local refinement rounds at halved steps.

When the quantized simplex is small enough it is enumerated outright;
otherwise the scan starts from the finest affordable grid and walks a
beam of the best candidates through successive step halvings until the
requested resolution is reached. Every stage is deterministic, and ties
between equal means are broken toward the lexicographically smallest
mass vector, so results do not depend on evaluation order.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from . import kernels
from .dist import Distribution, SupportSet, augment, full_support, prob_upper_set
from .orders import LexiLow, Pointwise, Preorder, Quantile, UpperSet, enumerate_omega, upper_set
from .support import Sample


class InfeasibleError(RuntimeError):
    """No distribution on the search support satisfies the constraint."""


@dataclass(frozen=True)
class OracleConfig:
    """Search knobs.

    resolution is the simplex grid step; refine_passes the number of
    step-halving polish rounds around the incumbent. cell_budget caps the
    number of cells enumerated in one pass (above it the coarse-to-fine
    schedule engages), and beam_width is how many candidates survive each
    coarse-to-fine stage.
    """

    resolution: float = 1e-3
    refine_passes: int = 3
    constraint: str = "geq-alpha"
    support_override: SupportSet | None = None
    cell_budget: int = 600_000
    beam_width: int = 24

    def __post_init__(self):
        if not self.resolution > 0:
            raise ValueError("resolution must be positive")
        if self.refine_passes < 0:
            raise ValueError("refine_passes must be >= 0")
        if self.constraint != "geq-alpha":
            raise ValueError(f"unsupported constraint {self.constraint!r}")
        if self.cell_budget < 100:
            raise ValueError("cell_budget unreasonably small")
        if self.beam_width < 1:
            raise ValueError("beam_width must be >= 1")


@dataclass(frozen=True, eq=False)
class OracleResult:
    value: float
    witness: Distribution
    constraint_prob: float
    support_used: SupportSet
    final_step: float
    mode: str


def refined_support(x: Sample, order: Preorder) -> SupportSet:
    """Support subset that suffices for the oracle under this preorder.

    The upper-set probability under a quantile preorder depends on a
    distribution only through its pmf and cdf at the relevant order
    statistic, and under the low-lexicographic order only through pmf and
    cdf at x's values; in both cases mass can be shifted onto the
    augmented set without changing the constraint or raising the mean.
    The same holds for the singleton upper set of the pointwise preorder.
    No such reduction is claimed for other orders, which keep the full grid.
    """
    if isinstance(order, Quantile):
        return augment(SupportSet.of([x.order_stat(order.i)]), x.grid)
    if isinstance(order, (LexiLow, Pointwise)):
        return augment(SupportSet.of(x.distinct_indices), x.grid)
    return full_support(x.grid)


def _member_terms(U: UpperSet, atoms: tuple[int, ...], n: int):
    """Multinomial coefficients and exponent rows for upper-set members
    expressible on the given atoms; everything else has probability zero."""
    pos = {a: j for j, a in enumerate(atoms)}
    coefs: list[float] = []
    rows: list[list[int]] = []
    for y in U.members:
        if any(i not in pos for i in y.idx):
            continue
        row = [0] * len(atoms)
        coef = math.factorial(n)
        for i, c in Counter(y.idx).items():
            row[pos[i]] = c
            coef //= math.factorial(c)
        coefs.append(float(coef))
        rows.append(row)
    if not coefs:
        return np.zeros(0), np.zeros((0, len(atoms)), dtype=np.int64)
    return np.asarray(coefs), np.asarray(rows, dtype=np.int64)


_OFFSETS_CACHE: dict[tuple[int, int], np.ndarray] = {}


def _zero_sum_offsets(k: int, radius: int) -> np.ndarray:
    key = (k, radius)
    if key not in _OFFSETS_CACHE:
        grid = itertools.product(range(-radius, radius + 1), repeat=k)
        offs = np.array([o for o in grid if sum(o) == 0], dtype=np.int64)
        _OFFSETS_CACHE[key] = offs
    return _OFFSETS_CACHE[key]


def _neighbor_radius(k: int) -> int:
    if k <= 5:
        return 3
    if k <= 6:
        return 2
    return 1


class _Reducer:
    """Deterministic reduction over candidate blocks processed in
    lexicographic order: tracks the feasible minimum (first-wins on exact
    ties, which is the lex-smallest), a beam of runners-up, and the
    highest-probability point for infeasibility rescue."""

    def __init__(self, alpha: float, beam_width: int):
        self.alpha = alpha
        self.beam_width = beam_width
        self.best_row: np.ndarray | None = None
        self.best_score = math.inf
        self.top_row: np.ndarray | None = None
        self.top_prob = -math.inf
        self._pool_rows: list[np.ndarray] = []
        self._pool_scores: list[np.ndarray] = []

    def consume(self, rows: np.ndarray, scores: np.ndarray, probs: np.ndarray) -> None:
        i = int(np.argmax(probs))
        if probs[i] > self.top_prob:
            self.top_prob = float(probs[i])
            self.top_row = rows[i].copy()
        feas = probs >= self.alpha
        if not feas.any():
            return
        rows_f = rows[feas]
        scores_f = scores[feas]
        j = int(np.argmin(scores_f))
        if scores_f[j] < self.best_score:
            self.best_score = float(scores_f[j])
            self.best_row = rows_f[j].copy()
        take = min(self.beam_width, rows_f.shape[0])
        order = np.lexsort(tuple(rows_f[:, c] for c in range(rows_f.shape[1] - 1, -1, -1)) + (scores_f,))
        self._pool_rows.append(rows_f[order[:take]])
        self._pool_scores.append(scores_f[order[:take]])

    def beam(self) -> np.ndarray:
        if not self._pool_rows:
            return np.zeros((0, 0), dtype=np.int64)
        rows = np.concatenate(self._pool_rows, axis=0)
        scores = np.concatenate(self._pool_scores)
        order = np.lexsort(tuple(rows[:, c] for c in range(rows.shape[1] - 1, -1, -1)) + (scores,))
        return rows[order[: self.beam_width]]


def _scan_blocks(blocks, table, coefs, expts, values, alpha, beam_width) -> _Reducer:
    red = _Reducer(alpha, beam_width)
    for rows in blocks:
        probs = kernels.eval_probs(rows, table, coefs, expts)
        scores = kernels.scaled_scores(rows, values)
        red.consume(rows, scores, probs)
    return red


def _neighborhood(centers: np.ndarray, k: int) -> np.ndarray:
    offs = _zero_sum_offsets(k, _neighbor_radius(k))
    cands = (centers[:, None, :] + offs[None, :, :]).reshape(-1, k)
    cands = cands[(cands >= 0).all(axis=1)]
    return np.unique(cands, axis=0)


def _max_affordable_n(k: int, budget: int) -> int:
    n = 1
    while math.comb(2 * n + k - 1, k - 1) <= budget:
        n *= 2
    while math.comb(n + 1 + k - 1, k - 1) <= budget:
        n += 1
    return n


def _minimize(values: np.ndarray, coefs: np.ndarray, expts: np.ndarray,
              alpha: float, cfg: OracleConfig):
    """Minimize the mean over the quantized simplex subject to the
    constraint probability being >= alpha. Returns (counts, N, mode)."""
    k = values.shape[0]
    max_exp = int(expts.max()) if expts.size else 0
    n_target = max(1, math.ceil(1.0 / cfg.resolution))
    dense = math.comb(n_target + k - 1, k - 1) <= cfg.cell_budget
    n0 = n_target if dense else _max_affordable_n(k, cfg.cell_budget)
    mode = "dense" if dense else "coarse-to-fine"

    table = kernels.pow_table(n0, max_exp)
    red = _scan_blocks(
        kernels.iter_composition_blocks(n0, k), table, coefs, expts, values, alpha, cfg.beam_width
    )

    stages = 0 if dense else max(0, math.ceil(math.log2(n_target / n0)))
    stages += cfg.refine_passes
    n_cur = n0
    for _ in range(stages):
        centers = red.beam()
        extra = [c for c in (red.best_row, red.top_row) if c is not None]
        if centers.size == 0 and not extra:
            break
        if extra:
            stack = [centers] if centers.size else []
            stack.append(np.asarray(extra, dtype=np.int64))
            centers = np.concatenate(stack, axis=0)
        n_cur *= 2
        cands = _neighborhood(centers * 2, k)
        table = kernels.pow_table(n_cur, max_exp)
        red = _scan_blocks([cands], table, coefs, expts, values, alpha, cfg.beam_width)

    if red.best_row is None:
        raise InfeasibleError(
            f"no mass vector at step 1/{n_cur} reaches constraint probability {alpha}"
            f" (closest achieved {red.top_prob:.6g})"
        )
    return red.best_row, n_cur, mode


def pessimal_bound_oracle(x: Sample, order: Preorder, alpha: float,
                          cfg: OracleConfig | None = None) -> OracleResult:
    """Smallest mean among distributions giving x's upper set probability
    at least alpha.

    The search runs on ``refined_support(x, order)`` unless the config
    overrides it. The returned value sits within ``2 * final_step *
    (s_max - s_min)`` of the true minimum (checked against the closed
    forms in the test suite); the witness is the minimizing mass vector.

    Raises InfeasibleError when no distribution on the support meets the
    constraint, which is reported rather than silently clamped.
    """
    if not 0.0 <= alpha < 1.0:
        raise ValueError(f"alpha must be in [0, 1), got {alpha}")
    cfg = cfg or OracleConfig()
    grid = x.grid
    support = cfg.support_override or refined_support(x, order)
    if any(i > grid.m - 1 for i in support.indices):
        raise ValueError("support override contains indices outside the grid")

    omega = enumerate_omega(grid, x.n)
    U = upper_set(x, order, omega)
    atoms = support.indices
    values = np.array([grid.point(a) for a in atoms])
    coefs, expts = _member_terms(U, atoms, x.n)

    try:
        counts, n_final, mode = _minimize(values, coefs, expts, alpha, cfg)
    except InfeasibleError as exc:
        raise InfeasibleError(f"sample {x.idx}, order {order.name}: {exc}") from None

    mass = np.zeros(grid.m)
    mass[list(atoms)] = counts / n_final
    witness = Distribution(grid, mass)
    return OracleResult(
        value=float(np.dot(counts, values) / n_final),
        witness=witness,
        constraint_prob=prob_upper_set(witness, U),
        support_used=support,
        final_step=1.0 / n_final,
        mode=mode,
    )


def pointwise_bound_oracle(x: Sample, alpha: float,
                           cfg: OracleConfig | None = None) -> OracleResult:
    """Oracle for the largest valid bound value at x (singleton upper set)."""
    return pessimal_bound_oracle(x, Pointwise(x), alpha, cfg)
