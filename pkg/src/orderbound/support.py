"""Evenly spaced support grids and canonical multiset samples.

Samples store grid *indices*, never raw reals, so equality of support
values is exact integer equality. A sample of size n is kept in
non-decreasing index order, which makes it a canonical representative of
the multiset of draws: the i-th order statistic is literally ``idx[i - 1]``.
"""

from __future__ import annotations

import json
import math
import operator
import warnings
from dataclasses import dataclass

#: Number of distinct samples above which exhaustive verification is hopeless.
DESK_SCALE_LIMIT = 10**6


class GridError(ValueError):
    """Invalid grid parameters or a value that does not sit on the grid."""


class DeskScaleWarning(UserWarning):
    """The implied sample space is too large for exhaustive enumeration."""


@dataclass(frozen=True)
class SupportGrid:
    """``m`` evenly spaced support points between ``s_min`` and ``s_max``.

    Point ``i`` is the convex combination ``s_min * (1 - t) + s_max * t``
    with ``t = i / (m - 1)``, which makes both endpoints exact in floating
    point and keeps the sequence strictly increasing.
    """

    s_min: float
    s_max: float
    m: int

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 2:
            raise GridError(f"need at least 2 support points, got m={self.m}")
        if not (math.isfinite(self.s_min) and math.isfinite(self.s_max)):
            raise GridError("grid endpoints must be finite")
        if not self.s_min < self.s_max:
            raise GridError(f"need s_min < s_max, got [{self.s_min}, {self.s_max}]")

    @property
    def spacing(self) -> float:
        return (self.s_max - self.s_min) / (self.m - 1)

    def point(self, i: int) -> float:
        if not 0 <= i <= self.m - 1:
            raise GridError(f"index {i} outside [0, {self.m - 1}]")
        t = i / (self.m - 1)
        return self.s_min * (1.0 - t) + self.s_max * t

    @property
    def points(self) -> tuple[float, ...]:
        return tuple(self.point(i) for i in range(self.m))


def grid_point(grid: SupportGrid, i: int) -> float:
    """Value of the i-th support point."""
    return grid.point(i)


@dataclass(frozen=True)
class Sample:
    """A size-n multiset of grid indices in non-decreasing order."""

    grid: SupportGrid
    idx: tuple[int, ...]

    def __post_init__(self):
        if len(self.idx) < 1:
            raise GridError("a sample needs at least one component")
        try:
            object.__setattr__(self, "idx", tuple(operator.index(i) for i in self.idx))
        except TypeError:
            raise GridError("sample indices must be integers") from None
        if any(i < 0 or i > self.grid.m - 1 for i in self.idx):
            raise GridError(f"sample indices {self.idx} outside grid range")
        if any(a > b for a, b in zip(self.idx, self.idx[1:])):
            raise GridError("sample indices must be non-decreasing")

    @property
    def n(self) -> int:
        return len(self.idx)

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(self.grid.point(i) for i in self.idx)

    def order_stat(self, i: int) -> int:
        """Grid index of the i-th smallest component (1-based)."""
        if not 1 <= i <= self.n:
            raise GridError(f"order statistic index {i} outside [1, {self.n}]")
        return self.idx[i - 1]

    @property
    def distinct_indices(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.idx)))

    def is_homogeneous(self) -> bool:
        return self.idx[0] == self.idx[-1]


def _warn_desk_scale(grid: SupportGrid, n: int) -> None:
    if math.comb(grid.m + n - 1, n) > DESK_SCALE_LIMIT:
        warnings.warn(
            f"sample space for m={grid.m}, n={n} has more than "
            f"{DESK_SCALE_LIMIT} multisets; exhaustive checks will not run",
            DeskScaleWarning,
            stacklevel=3,
        )


def make_sample(grid: SupportGrid, values: list[float]) -> Sample:
    """Resolve real values to grid indices and return the canonical sample.

    Each value must match a support point up to relative tolerance 1e-9
    (plus an absolute slack of 1e-9 grid spacings near zero); anything
    further off the grid is rejected rather than snapped.
    """
    if len(values) == 0:
        raise GridError("cannot build a sample from an empty list")
    abs_tol = 1e-9 * grid.spacing
    idx = []
    for v in values:
        i = int(round((v - grid.s_min) / grid.spacing))
        i = min(max(i, 0), grid.m - 1)
        if not math.isclose(v, grid.point(i), rel_tol=1e-9, abs_tol=abs_tol):
            raise GridError(f"value {v} is not on the grid {grid}")
        idx.append(i)
    _warn_desk_scale(grid, len(idx))
    return Sample(grid, tuple(sorted(idx)))


def homogeneous_sample(grid: SupportGrid, i: int, n: int) -> Sample:
    """The sample whose n components all sit at support point i."""
    if not 0 <= i <= grid.m - 1:
        raise GridError(f"index {i} outside [0, {grid.m - 1}]")
    if n < 1:
        raise GridError(f"need n >= 1, got {n}")
    _warn_desk_scale(grid, n)
    return Sample(grid, (i,) * n)


def check_compatible(x: Sample, y: Sample) -> None:
    """Raise unless two samples share a grid and a sample size."""
    if x.grid != y.grid:
        raise GridError("samples live on different grids")
    if x.n != y.n:
        raise GridError(f"samples have different sizes ({x.n} vs {y.n})")


def leq_componentwise(x: Sample, y: Sample) -> bool:
    """True iff every order statistic of x is at most the one of y."""
    check_compatible(x, y)
    return all(a <= b for a, b in zip(x.idx, y.idx))


def lt_componentwise(x: Sample, y: Sample) -> bool:
    """Strict variant: x != y and x <= y componentwise."""
    return x.idx != y.idx and leq_componentwise(x, y)


def parse_sample_values(text: str) -> list[float]:
    """Parse 'a,b,c' or a JSON array of numbers into a list of floats."""
    text = text.strip()
    if text.startswith("["):
        data = json.loads(text)
        if not isinstance(data, list):
            raise GridError("expected a JSON array of numbers")
        return [float(v) for v in data]
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise GridError("empty sample text")
    return [float(p) for p in parts]
