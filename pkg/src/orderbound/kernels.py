"""Hot-kernel dispatch plus shared scan plumbing.

The constraint-probability evaluation over candidate mass vectors is the
inner loop of the search oracle. A compiled implementation is used when
the extension built; setting ORDERBOUND_PURE=1 in the environment forces
the pure-Python backend. Everything around the kernel (power tables,
composition enumeration, scores) is shared, so the backends only differ
in who runs the innermost loop.
"""

from __future__ import annotations

import os
from collections.abc import Iterator

import numpy as np

from . import _scan_py

_COMPILED = None
if not os.environ.get("ORDERBOUND_PURE"):
    try:
        from . import _scan as _COMPILED  # type: ignore[no-redef]
    except ImportError:
        _COMPILED = None

_IMPL = _COMPILED if _COMPILED is not None else _scan_py
BACKEND = "cython" if _COMPILED is not None else "python"


def backend_name() -> str:
    return BACKEND


def eval_probs(counts: np.ndarray, table: np.ndarray, coefs: np.ndarray,
               expts: np.ndarray, impl=None) -> np.ndarray:
    """Constraint probability for each row of ``counts``; see _scan_py."""
    if counts.size == 0:
        return np.zeros(0)
    impl = impl or _IMPL
    return impl.eval_probs(
        np.ascontiguousarray(counts, dtype=np.int64),
        np.ascontiguousarray(table, dtype=np.float64),
        np.ascontiguousarray(coefs, dtype=np.float64),
        np.ascontiguousarray(expts, dtype=np.int64),
    )


def pow_table(N: int, max_exp: int) -> np.ndarray:
    """table[c, e] = (c / N) ** e built by repeated multiplication."""
    base = np.arange(N + 1, dtype=np.float64) / N
    table = np.empty((N + 1, max_exp + 1))
    table[:, 0] = 1.0
    for e in range(1, max_exp + 1):
        table[:, e] = table[:, e - 1] * base
    return table


def scaled_scores(counts: np.ndarray, values: np.ndarray) -> np.ndarray:
    """N-scaled means: sum_j counts[:, j] * values[j], accumulated left to right."""
    acc = np.zeros(counts.shape[0])
    for j in range(counts.shape[1]):
        acc = acc + counts[:, j] * values[j]
    return acc


def iter_composition_blocks(N: int, k: int, chunk: int = 1 << 16) -> Iterator[np.ndarray]:
    """Yield all compositions of N into k parts as int64 blocks, in
    lexicographic order of the count vectors.

    The final two coordinates of each prefix are vectorized; blocks are
    buffered up to roughly ``chunk`` rows before being yielded.
    """
    if k == 1:
        yield np.array([[N]], dtype=np.int64)
        return

    pending: list[np.ndarray] = []
    size = 0
    prefix = np.zeros(k - 2, dtype=np.int64)

    def _tail_block(rem: int) -> np.ndarray:
        block = np.empty((rem + 1, k), dtype=np.int64)
        block[:, : k - 2] = prefix
        t = np.arange(rem + 1, dtype=np.int64)
        block[:, k - 2] = t
        block[:, k - 1] = rem - t
        return block

    def _walk(level: int, rem: int):
        nonlocal size
        if level == k - 2:
            pending.append(_tail_block(rem))
            size += rem + 1
            if size >= chunk:
                out = np.concatenate(pending, axis=0)
                pending.clear()
                size = 0
                yield out
            return
        for c in range(rem + 1):
            prefix[level] = c
            yield from _walk(level + 1, rem - c)
        prefix[level] = 0

    yield from _walk(0, N)
    if pending:
        yield np.concatenate(pending, axis=0)
