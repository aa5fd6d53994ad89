"""Recognition of permuted Anti-Robinson matrices.

The recognizer is the Similarity-First-Search (SFS) multisweep: an Anti-
Robinson dissimilarity ``A`` is turned into the similarity ``S = -A`` and
swept repeatedly.  Each sweep visits next the unvisited vertex that is most
similar to the vertices already visited, keeping the unvisited vertices in an
ordered partition that is refined, class by class, by decreasing similarity
to every newly visited vertex.  The first sweep breaks ties by input order;
every later sweep (SFS+) breaks ties by taking the candidate that came *last*
in the previous sweep.  For a Robinsonian similarity at most ``n - 1`` SFS+
sweeps are needed to reach a Robinson ordering, so the decision is complete;
every ordering is checked before it is returned, so it is also sound.

Sweeps are deterministic functions of the previous ordering, so a repeated
ordering means the sequence has entered a cycle and the search stops early.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Optional, Sequence

import numpy as np

from .checkers import is_anti_robinson
from .core import Permutation, SymmetricMatrix, canonical

BRUTE_FORCE_MAX_N = 8


@dataclass(frozen=True)
class ArOutcome:
    recognized: bool
    permutation: Optional[Permutation] = None

    def __bool__(self) -> bool:
        return self.recognized


def _values(A) -> np.ndarray:
    return A.values if isinstance(A, SymmetricMatrix) else np.asarray(A)


def sfs_sweep(S: np.ndarray, previous: Optional[Sequence[int]] = None) -> list[int]:
    """One Similarity-First-Search sweep over the similarity matrix ``S``.

    Returns a 0-based visiting order.  With ``previous`` given this is the
    SFS+ variant: ties in the leading class go to the vertex appearing last
    in ``previous``.
    """
    n = S.shape[0]
    if previous is None:
        rank = list(range(n, 0, -1))     # earliest input index wins ties
    else:
        rank = [0] * n
        for pos, v in enumerate(previous):
            rank[v] = pos
    rows = S.tolist()
    classes: list[list[int]] = [list(range(n))]
    order: list[int] = []
    while classes:
        head = classes[0]
        p = max(head, key=rank.__getitem__)
        order.append(p)
        head.remove(p)
        if not head:
            classes.pop(0)
        sim = rows[p]
        refined: list[list[int]] = []
        for block in classes:
            if len(block) == 1:
                refined.append(block)
                continue
            groups: dict = {}
            for v in block:
                groups.setdefault(sim[v], []).append(v)
            if len(groups) == 1:
                refined.append(block)
            else:
                refined.extend(groups[k] for k in sorted(groups, reverse=True))
        classes = refined
    return order


def sfs_multisweep(A: np.ndarray, max_sweeps: Optional[int] = None) -> Optional[list[int]]:
    """0-based Anti-Robinson order of ``A`` or None if the sweeps find none."""
    n = A.shape[0]
    if n <= 2:
        return list(range(n))
    S = -A
    if max_sweeps is None:
        max_sweeps = n
    order = sfs_sweep(S)
    seen = {tuple(order)}
    for _ in range(max_sweeps):
        if is_anti_robinson(A[np.ix_(order, order)]):
            return order
        order = sfs_sweep(S, order)
        key = tuple(order)
        if key in seen:
            return None
        seen.add(key)
    return order if is_anti_robinson(A[np.ix_(order, order)]) else None


def _brute_force_order(A: np.ndarray) -> Optional[list[int]]:
    # depth-first over orders in lexicographic order; a partial order is
    # extended only if every triple ending at the new vertex is satisfied
    n = A.shape[0]
    a = A.tolist()
    order: list[int] = []
    used = [False] * n

    def ok(v: int) -> bool:
        t = len(order)
        for x in range(t):
            u = order[x]
            auv = a[u][v]
            for y in range(x + 1, t):
                w = order[y]
                if auv < a[u][w] or auv < a[w][v]:
                    return False
        return True

    def dfs() -> bool:
        if len(order) == n:
            return order[0] <= order[-1]
        for v in range(n):
            if not used[v] and ok(v):
                used[v] = True
                order.append(v)
                if dfs():
                    return True
                order.pop()
                used[v] = False
        return False

    return list(order) if dfs() else None


def _outcome(A: np.ndarray, order: Optional[list[int]]) -> ArOutcome:
    if order is None:
        return ArOutcome(False)
    if not is_anti_robinson(A[np.ix_(order, order)]):
        raise AssertionError("recognizer produced an order that is not Anti-Robinson")
    return ArOutcome(True, canonical(Permutation.from_zero_based(order)))


def recognize_anti_robinson(A, *, exhaustive_max_n: int = 0) -> ArOutcome:
    """Find a permutation making ``A`` Anti-Robinson, or report none exists.

    ``exhaustive_max_n`` switches to the exhaustive search for matrices of at
    most that order (default 0: always use the multisweep).
    """
    a = _values(A)
    n = a.shape[0]
    order = _brute_force_order(a) if n <= exhaustive_max_n else sfs_multisweep(a)
    return _outcome(a, order)


def brute_force_ar(A, *, max_n: int = BRUTE_FORCE_MAX_N) -> ArOutcome:
    """Exhaustive reference recognizer; returns the lexicographically first
    Anti-Robinson permutation whose first image is below its last."""
    a = _values(A)
    n = a.shape[0]
    if n > max_n:
        raise ValueError(f"brute force refused: n={n} exceeds bound {max_n}")
    return _outcome(a, _brute_force_order(a))


def all_anti_robinson_orders(A, *, max_n: int = 7) -> list[Permutation]:
    """Every Anti-Robinson permutation of a small matrix (test helper)."""
    a = _values(A)
    n = a.shape[0]
    if n > max_n:
        raise ValueError(f"enumeration refused: n={n} exceeds bound {max_n}")
    found = []
    for p in permutations(range(n)):
        idx = list(p)
        if is_anti_robinson(a[np.ix_(idx, idx)]):
            found.append(Permutation.from_zero_based(p))
    return found
