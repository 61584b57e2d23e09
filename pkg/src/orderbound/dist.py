"""Distributions on a support grid and their sample probabilities.

A distribution is a dense probability vector over the full grid even when
it is known to live on a subset; restriction to a subset is a predicate,
not a type change, which keeps interop with the search oracle simple.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .orders import UpperSet
from .support import Sample, SupportGrid

MASS_SUM_TOL = 1e-12
PMF_CDF_TOL = 1e-12
ZERO_MASS_TOL = 1e-15


@dataclass(frozen=True, eq=False)
class Distribution:
    """Probability mass vector over the grid points."""

    grid: SupportGrid
    mass: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.mass, dtype=float)
        if arr.shape != (self.grid.m,):
            raise ValueError(f"mass vector must have length m={self.grid.m}")
        if np.any(arr < 0):
            raise ValueError("mass vector has negative entries")
        if abs(float(arr.sum()) - 1.0) > MASS_SUM_TOL:
            raise ValueError(f"mass must sum to 1 within {MASS_SUM_TOL}, got {arr.sum()!r}")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "mass", arr)

    @property
    def mean(self) -> float:
        return mean(self)

    def to_json(self) -> str:
        return json.dumps([float(v) for v in self.mass])


def point_mass(grid: SupportGrid, i: int) -> Distribution:
    mass = np.zeros(grid.m)
    mass[i] = 1.0
    return Distribution(grid, mass)


def uniform(grid: SupportGrid) -> Distribution:
    return Distribution(grid, np.full(grid.m, 1.0 / grid.m))


def distribution_from_json(grid: SupportGrid, text: str) -> Distribution:
    data = json.loads(text)
    if not isinstance(data, list):
        raise ValueError("expected a JSON array of masses")
    return Distribution(grid, np.asarray(data, dtype=float))


@dataclass(frozen=True)
class SupportSet:
    """A subset of grid indices, sorted and without duplicates."""

    indices: tuple[int, ...]

    def __post_init__(self):
        if list(self.indices) != sorted(set(self.indices)):
            object.__setattr__(self, "indices", tuple(sorted(set(self.indices))))
        if any(i < 0 for i in self.indices):
            raise ValueError("support indices must be non-negative")

    @classmethod
    def of(cls, indices) -> "SupportSet":
        return cls(tuple(sorted(set(int(i) for i in indices))))

    def __contains__(self, i: int) -> bool:
        return i in set(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __len__(self):
        return len(self.indices)


def full_support(grid: SupportGrid) -> SupportSet:
    return SupportSet(tuple(range(grid.m)))


def mean(F: Distribution) -> float:
    """Expected value: dot product of masses and support points."""
    return float(np.dot(F.mass, np.asarray(F.grid.points)))


def sample_prob(F: Distribution, x: Sample) -> float:
    """Probability that n i.i.d. draws from F form the multiset x.

    Multinomial form: n! / prod(c_j!) * prod(F(S_j)^c_j), where c_j counts
    occurrences of grid index j in x.
    """
    if x.grid != F.grid:
        raise ValueError("sample and distribution live on different grids")
    counts = Counter(x.idx)
    coef = math.factorial(x.n)
    prob = 1.0
    for j, c in counts.items():
        coef //= math.factorial(c)
        prob *= float(F.mass[j]) ** c
    return coef * prob


def prob_upper_set(F: Distribution, U: UpperSet) -> float:
    """Total probability of drawing a sample in the upper set."""
    return sum(sample_prob(F, y) for y in U.members)


def augment(C: SupportSet, grid: SupportGrid) -> SupportSet:
    """C plus the grid minimum plus the successor of each non-maximal element."""
    out = set(C.indices)
    out.add(0)
    for i in C.indices:
        if i > grid.m - 1:
            raise ValueError(f"support index {i} outside grid")
        if i != grid.m - 1:
            out.add(i + 1)
    return SupportSet.of(out)


def restrict_to(F: Distribution, C: SupportSet) -> bool:
    """True iff F puts (numerically) zero mass outside C."""
    outside = [j for j in range(F.grid.m) if j not in set(C.indices)]
    return all(float(F.mass[j]) <= ZERO_MASS_TOL for j in outside)


def agree_on(G: Distribution, H: Distribution, C: SupportSet) -> bool:
    """Pointwise and cumulative agreement of two distributions on C.

    For every index in C the pmf values must match and the cdf values up
    to and including that index must match, both within 1e-12 absolute.
    """
    if G.grid != H.grid:
        raise ValueError("distributions live on different grids")
    cg = np.cumsum(G.mass)
    ch = np.cumsum(H.mass)
    for j in C.indices:
        if abs(float(G.mass[j]) - float(H.mass[j])) > PMF_CDF_TOL:
            return False
        if abs(float(cg[j]) - float(ch[j])) > PMF_CDF_TOL:
            return False
    return True


def transfer_to_augmented(F: Distribution, C: SupportSet, grid: SupportGrid) -> Distribution:
    """Push F's off-C mass down onto the augmented set of C.

    Mass below the smallest element of C moves to the grid minimum; mass
    strictly between consecutive elements moves to the successor of the
    lower one; mass above the largest element moves to its successor. The
    result agrees with F pointwise and cumulatively on C, is supported on
    the augmentation of C, and its mean never exceeds F's.
    """
    if not C.indices:
        out = np.zeros(grid.m)
        out[0] = 1.0
        return Distribution(grid, out)
    src = np.asarray(F.mass, dtype=float)
    out = np.zeros(grid.m)
    s = list(C.indices)
    for j in s:
        out[j] = src[j]
    out[0] += float(src[: s[0]].sum())
    for a, b in zip(s, s[1:]):
        gap = float(src[a + 1 : b].sum())
        if gap:
            out[a + 1] += gap
    if s[-1] < grid.m - 1:
        out[s[-1] + 1] += float(src[s[-1] + 1 :].sum())
    return Distribution(grid, out)


def mean_lipschitz_check(u: Distribution, v: Distribution) -> bool:
    """Mean difference bounded by sqrt(m) * max|S_i| * l2 mass distance.

    The constant uses max|S_i| rather than S_max so the inequality also
    holds on grids with negative support values.
    """
    if u.grid != v.grid:
        raise ValueError("distributions live on different grids")
    pts = np.asarray(u.grid.points)
    lhs = abs(mean(u) - mean(v))
    rhs = math.sqrt(u.grid.m) * float(np.max(np.abs(pts))) * float(
        np.linalg.norm(u.mass - v.mass)
    )
    return lhs <= rhs + 1e-12
