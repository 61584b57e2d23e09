import math

import pytest

from orderbound import SupportGrid


@pytest.fixture
def unit2():
    return SupportGrid(0.0, 1.0, 2)


@pytest.fixture
def unit3():
    return SupportGrid(0.0, 1.0, 3)


@pytest.fixture
def unit5():
    return SupportGrid(0.0, 1.0, 5)


def binom_cdf_by_summation(k: int, n: int, p: float) -> float:
    """Independent reference: direct term-by-term summation."""
    if k < 0:
        return 0.0
    return sum(math.comb(n, j) * p**j * (1.0 - p) ** (n - j) for j in range(min(k, n) + 1))


def count_linear_extensions(n_elems: int, strict_pairs: set[tuple[int, int]]) -> int:
    """Independent reference: count linear extensions by recursive removal
    of minimal elements (different algorithm from the permutation filter)."""
    remaining = frozenset(range(n_elems))

    def rec(left: frozenset) -> int:
        if not left:
            return 1
        total = 0
        for e in left:
            if not any(a in left and (a, e) in strict_pairs for a in left):
                total += rec(left - {e})
        return total

    return rec(remaining)
