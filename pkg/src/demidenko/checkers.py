"""Exact checks of the Demidenko and Anti-Robinson conditions.

Three equivalent formulations of the Demidenko conditions are provided:

* quadruple form, O(n^4):  c[j,i] + c[k,l] <= c[j,l] + c[k,i]  for i<j<k<l
* adjacent form,  O(n^3):  the same with k = j+1
* row-pair form,  O(n^2):  max_{i<j} (c[j,i]-c[j+1,i]) <= min_{l>j+1} (c[j,l]-c[j+1,l])

Only the O(n^2) form is used by the recognition pipeline; the other two
exist to cross-check it.  No check reads the diagonal.
"""
from __future__ import annotations

from itertools import combinations

import numpy as np

from .core import SymmetricMatrix, Verdict

HOLDS = Verdict(True)


def _array(C) -> np.ndarray:
    return C.values if isinstance(C, SymmetricMatrix) else np.asarray(C)


def check_demidenko_quadruple(C) -> Verdict:
    c = _array(C)
    n = c.shape[0]
    for i, j, k, l in combinations(range(n), 4):
        if c[j, i] + c[k, l] > c[j, l] + c[k, i]:
            return Verdict(False, (i + 1, j + 1, k + 1, l + 1))
    return HOLDS


def check_demidenko_adjacent(C) -> Verdict:
    c = _array(C)
    n = c.shape[0]
    for i in range(n):
        for j in range(i + 1, n - 2):
            for l in range(j + 2, n):
                if c[j, i] + c[j + 1, l] > c[j, l] + c[j + 1, i]:
                    return Verdict(False, (i + 1, j + 1, j + 2, l + 1))
    return HOLDS


def check_demidenko(C) -> Verdict:
    """Row-pair form.  The witness for the first failing row pair (j, j+1)
    is (first argmax i, j, j+1, first argmin l), 1-based."""
    c = _array(C)
    n = c.shape[0]
    # 0-based j runs over 1..n-3 (1-based 2..n-2)
    for j in range(1, n - 2):
        diff = c[j] - c[j + 1]
        left = diff[:j]
        right = diff[j + 2:]
        lo, hi = left.max(), right.min()
        if lo > hi:
            i = int(np.argmax(left))
            l = j + 2 + int(np.argmin(right))
            return Verdict(False, (i + 1, j + 1, j + 2, l + 1))
    return HOLDS


def is_anti_robinson(a: np.ndarray) -> bool:
    """Boolean Anti-Robinson test on a raw array, O(n^2).

    Equivalent to each row being non-decreasing to the right of the
    diagonal and each column being non-increasing going down towards it.
    """
    n = a.shape[0]
    if n < 3:
        return True
    rows = (a[:, 1:] < a[:, :-1]) & _above(n, 1)       # a[i,j+1] < a[i,j], i < j
    cols = (a[1:, :] > a[:-1, :]) & _above(n, 2)       # a[j+1,k] > a[j,k], j+1 < k
    return not (rows.any() or cols.any())


def _above(n: int, offset: int) -> np.ndarray:
    # mask of shape (n, n-1) or (n-1, n) with column - row >= offset
    shape = (n, n - 1) if offset == 1 else (n - 1, n)
    return np.triu(np.ones(shape, dtype=bool), k=offset)


def check_anti_robinson(C) -> Verdict:
    """``a[i,k] >= max(a[i,j], a[j,k])`` for all i<j<k; the witness is the
    lexicographically first violating triple."""
    a = _array(C)
    if is_anti_robinson(a):
        return HOLDS
    n = a.shape[0]
    later = np.triu(np.ones((n, n), dtype=bool), k=1)   # [j, k] with k > j
    for i in range(n - 2):
        row = a[i]
        bad = (row[None, :] < row[:, None]) | (row[None, :] < a)
        bad &= later
        bad[: i + 1] = False
        hits = np.argwhere(bad)
        if len(hits):
            j, k = (int(x) for x in hits[0])
            return Verdict(False, (i + 1, j + 1, k + 1))
    raise AssertionError("adjacent test flagged a violation the triple scan did not find")
