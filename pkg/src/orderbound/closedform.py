"""Closed-form bound values at homogeneous samples.

All three families are exact consequences of the two-atom structure of
the minimizing distributions: mass q at an upper atom, the rest at the
grid minimum.
"""

from __future__ import annotations

from dataclasses import dataclass

from .support import GridError, SupportGrid


def _check_args(grid: SupportGrid, i: int, n: int, alpha: float) -> None:
    if not 0 <= i <= grid.m - 1:
        raise GridError(f"index {i} outside [0, {grid.m - 1}]")
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if not 0.0 <= alpha < 1.0:
        raise ValueError(f"alpha must be in [0, 1), got {alpha}")


def optimal_pointwise_homogeneous(grid: SupportGrid, i: int, n: int, alpha: float) -> float:
    """Largest valid bound value at the homogeneous sample of index i.

    Equals ``s_min * (1 - alpha**(1/n)) + S_i * alpha**(1/n)``: the
    minimizing distribution puts mass alpha**(1/n) on S_i and the rest on
    the grid minimum.
    """
    _check_args(grid, i, n, alpha)
    r = alpha ** (1.0 / n)
    return grid.s_min * (1.0 - r) + grid.point(i) * r


def lexi_low_homogeneous(grid: SupportGrid, i: int, n: int, alpha: float) -> float:
    """Low-lexicographic bound at a homogeneous sample.

    Coincides with the pointwise-optimal value: under the low
    lexicographic order the upper set of a homogeneous sample is exactly
    the componentwise upper set, and the same two-atom minimizer applies.
    """
    return optimal_pointwise_homogeneous(grid, i, n, alpha)


@dataclass(frozen=True)
class Bracket:
    """Interval [lo, hi] enclosing a bound value.

    ``top_degenerate`` flags the top support index, where the upper set
    collapses to a single sample and hi is the exact (pointwise) value
    rather than the generic one-grid-step relaxation.
    """

    lo: float
    hi: float
    top_degenerate: bool = False

    def __post_init__(self):
        if self.lo > self.hi + 1e-15:
            raise ValueError(f"bracket inverted: [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, value: float, slack: float = 0.0) -> bool:
        return self.lo - slack <= value <= self.hi + slack


def lexi_high_homogeneous_bracket(grid: SupportGrid, i: int, n: int, alpha: float) -> Bracket:
    """Two-sided enclosure of the high-lexicographic bound at index i >= 1.

    lo substitutes S_i and hi substitutes S_{i+1} into
    ``s_min * (1-alpha)**(1/n) + S * (1 - (1-alpha)**(1/n))``. At the top
    index there is no S_{i+1}; the upper set is then the singleton
    homogeneous sample, so hi is the exact pointwise value
    ``s_min * (1 - alpha**(1/n)) + s_max * alpha**(1/n)`` and the bracket
    is flagged as degenerate.
    """
    _check_args(grid, i, n, alpha)
    if i == 0:
        raise GridError("the high-lexicographic bracket is defined for i >= 1")
    r = (1.0 - alpha) ** (1.0 / n)
    lo = grid.s_min * r + grid.point(i) * (1.0 - r)
    if i == grid.m - 1:
        hi = optimal_pointwise_homogeneous(grid, i, n, alpha)
        # mathematically lo <= hi, with equality at n = 1; the two float
        # routes can cross by an ulp there
        return Bracket(min(lo, hi), hi, top_degenerate=True)
    hi = grid.s_min * r + grid.point(i + 1) * (1.0 - r)
    return Bracket(lo, hi)
