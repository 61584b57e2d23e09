"""Pure-Python (numpy) backend for the simplex scan kernel.

Kept operation-for-operation identical to the compiled backend: the same
multiplication order and the same accumulation order, so both backends
return bitwise-equal results.
"""

from __future__ import annotations

import numpy as np


def eval_probs(counts, table, coefs, expts):
    """Constraint probability for each candidate count vector.

    counts : int64 (B, k) occupation numbers summing to N
    table  : float64 (N+1, E+1) with table[c, e] = (c / N) ** e
    coefs  : float64 (T,) multinomial coefficients per upper-set member
    expts  : int64 (T, k) per-atom occurrence counts per member
    """
    B = counts.shape[0]
    T = coefs.shape[0]
    k = counts.shape[1]
    acc = np.zeros(B)
    for t in range(T):
        term = np.full(B, coefs[t])
        for j in range(k):
            term = term * table[counts[:, j], expts[t, j]]
        acc = acc + term
    return acc
