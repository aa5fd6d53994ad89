"""Recognition of permuted Demidenko matrices.

For every ordered anchor pair (p, q) the matrix is normalized so that row p
is constant, position 1 is fixed to p and position n to q, and the remaining
positions are filled greedily.  At each stage the free indices with the
smallest anchored sum

    sum_{x <= r} c'[i, pi(x)] - r * c'[i, q]

must come next (the set K).  A single minimizer is placed directly.  When K is
all of the free indices, any Anti-Robinson order of c'[K] completes the
permutation.  Otherwise c'[K] is bordered by one extra vertex whose entries
encode the sums towards the remaining indices L; an Anti-Robinson order of
that bordered matrix, with the border vertex at the end, fixes the order of K
before the stage repeats.  Every candidate is verified against the Demidenko
conditions before it is reported, so positives are always sound.
"""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .ar_recognition import sfs_multisweep
from .checkers import check_demidenko
from .core import PartialPermutation, Permutation, SymmetricMatrix, apply


class InternalLogicError(AssertionError):
    """A precondition that the recognition driver guarantees was violated."""


@dataclass(frozen=True)
class MinSet:
    """Minimum anchored sum ``m``, its minimizers ``K`` and the other free
    indices ``L``; both sorted, 1-based."""

    m: object
    K: tuple[int, ...]
    L: tuple[int, ...]


@dataclass(frozen=True)
class RecognitionReport:
    recognized: bool
    permutation: Optional[Permutation] = None
    anchor: Optional[tuple[int, int]] = None
    pairs_tried: int = 0
    elapsed: float = 0.0

    def __bool__(self) -> bool:
        return self.recognized


@dataclass
class AnchoredSums:
    """Per-index accumulator of ``sum_x c'[i, pi(x)] - r * c'[i, q]``.

    ``r`` counts how many prefix entries have been folded in; ``update``
    adds only the entries fixed since the previous call, so the whole
    search for one anchor pair costs O(n^2).
    """

    values: np.ndarray
    q: int          # 0-based
    r: int = 0

    @classmethod
    def start(cls, Cp: np.ndarray, q: int) -> "AnchoredSums":
        return cls(np.zeros(Cp.shape[0], dtype=Cp.dtype), q - 1)

    def update(self, Cp: np.ndarray, pi: PartialPermutation) -> None:
        new = pi.images[self.r: pi.r]
        if not new:
            return
        cols = [v - 1 for v in new]
        self.values = self.values + Cp[:, cols].sum(axis=1) - len(cols) * Cp[:, self.q]
        self.r = pi.r


@dataclass
class Stage:
    prefix: tuple[int, ...]
    minset: MinSet
    sums: dict          # free index -> accumulator value when the stage began
    case: str = ""      # "single", "all" or "border"
    ok: bool = True


@dataclass
class StageTrace:
    """Per-stage instrumentation of one ``check_candidate`` run."""

    stages: list = field(default_factory=list)


def _mat(C) -> np.ndarray:
    return C.values if isinstance(C, SymmetricMatrix) else np.asarray(C)


def normalize(C, p: int) -> SymmetricMatrix:
    """``c'[i,j] = c[i,j] - c[i,p] - c[p,j]`` (p is 1-based).

    Row and column p become constant ``-c[p,p]`` off the diagonal; the
    Demidenko verdict of every ordering is unchanged.
    """
    a = _mat(C)
    col = a[:, p - 1]
    scale = C.scale if isinstance(C, SymmetricMatrix) else 1
    return SymmetricMatrix._wrap(a - col[:, None] - col[None, :], scale)


def free_indices(pi: PartialPermutation) -> list[int]:
    placed = set(pi.images[: pi.r])
    placed.add(pi.last)
    return [i for i in range(1, pi.n + 1) if i not in placed]


def compute_min_set(Cp, pi: PartialPermutation, sums: AnchoredSums) -> Optional[MinSet]:
    """Bring ``sums`` up to date with ``pi`` and split the free indices.

    Returns None when no index is free (the caller's base case).
    """
    a = _mat(Cp)
    sums.update(a, pi)
    free = free_indices(pi)
    if not free:
        return None
    vals = sums.values[np.asarray(free) - 1]
    m = vals.min()
    hit = vals == m
    K = tuple(i for i, h in zip(free, hit) if h)
    L = tuple(i for i, h in zip(free, hit) if not h)
    return MinSet(m, K, L)


def build_border_matrix(Cp, K: Sequence[int], L: Sequence[int]) -> SymmetricMatrix:
    """``c'[K]`` bordered by one vertex with entries ``S_i + B``.

    ``S_i`` is the row sum of ``c'[s_i, L]`` and the shift
    ``B = 1 + max|inner off-diagonal| + max|S_i|`` makes every border entry
    exceed every inner entry while keeping the order of the sums.
    """
    if len(K) < 2 or not L:
        raise InternalLogicError(f"border matrix needs |K| >= 2 and L nonempty (|K|={len(K)}, |L|={len(L)})")
    a = _mat(Cp)
    k = np.asarray(K) - 1
    inner = a[np.ix_(k, k)]
    S = a[np.ix_(k, np.asarray(L) - 1)].sum(axis=1)
    off = np.abs(inner[~np.eye(len(K), dtype=bool)])
    B = 1 + off.max() + np.abs(S).max()
    size = len(K) + 1
    D = np.zeros((size, size), dtype=a.dtype)
    D[:-1, :-1] = inner
    D[:-1, -1] = S + B
    D[-1, :-1] = S + B
    scale = Cp.scale if isinstance(Cp, SymmetricMatrix) else 1
    return SymmetricMatrix._wrap(D, scale)


ArSolver = Callable[[np.ndarray], Optional[list]]


def check_candidate(Cp, pi: PartialPermutation, sums: Optional[AnchoredSums] = None, *,
                    ar: ArSolver = sfs_multisweep,
                    trace: Optional[StageTrace] = None) -> tuple[bool, PartialPermutation]:
    """Complete ``pi`` stage by stage; True means a candidate was built.

    ``ar`` maps a raw array to a 0-based Anti-Robinson order or None.  A
    True result still has to be verified by the caller.
    """
    a = _mat(Cp)
    if pi.r < 1 or not pi.last_fixed:
        raise InternalLogicError("check_candidate needs a fixed first and last slot")
    if sums is None:
        sums = AnchoredSums.start(a, pi.last)
    while True:
        ms = compute_min_set(a, pi, sums)
        if ms is None:
            return True, pi
        stage = None
        if trace is not None:
            stage = Stage(tuple(pi.prefix()), ms, {i: sums.values[i - 1] for i in ms.K + ms.L})
            trace.stages.append(stage)
        K = ms.K
        if len(K) == 1:
            case, ok = "single", True
            pi.extend(K)
        elif not ms.L:
            case = "all"
            k = np.asarray(K) - 1
            order = ar(a[np.ix_(k, k)])
            ok = order is not None
            if ok:
                pi.extend([K[x] for x in order])
        else:
            case = "border"
            D = build_border_matrix(a, K, ms.L).values
            order = ar(D)
            border = len(K)
            if order is not None and order[0] == border:
                order = order[::-1]
            # a dominant border can only sit at an end of an Anti-Robinson order
            ok = order is not None and order[-1] == border
            if ok:
                pi.extend([K[x] for x in order[:-1]])
        if stage is not None:
            stage.case, stage.ok = case, ok
        if not ok:
            return False, pi
        if case == "all":
            return True, pi


def try_anchor(C, p: int, q: int, *, ar: ArSolver = sfs_multisweep,
               trace: Optional[StageTrace] = None) -> Optional[Permutation]:
    """Verified Demidenko permutation with first image p and last image q,
    or None if the search for this anchor pair fails."""
    a = _mat(C)
    n = a.shape[0]
    Cp = normalize(a, p).values
    pi = PartialPermutation.anchored(n, p, q)
    ok, pi = check_candidate(Cp, pi, ar=ar, trace=trace)
    if not ok:
        return None
    if not pi.is_complete():
        raise InternalLogicError("candidate returned with unset slots")
    idx = [v - 1 for v in pi.images]
    if check_demidenko(a[np.ix_(idx, idx)]).holds:
        return Permutation(tuple(pi.images))
    return None


def anchor_pairs(n: int, halve: bool = False) -> list[tuple[int, int]]:
    """Ordered anchor pairs in lexicographic order (p < q only if halved)."""
    return [(p, q) for p in range(1, n + 1) for q in range(1, n + 1)
            if p != q and (q > p or not halve)]


def _scan_first(args):
    a, p, qs, ar = args
    for q in qs:
        perm = try_anchor(a, p, q, ar=ar)
        if perm is not None:
            return q, perm
    return None


def recognize_demidenko(C: SymmetricMatrix, *, jobs: int = 1, halve_pairs: bool = False,
                        ar: ArSolver = sfs_multisweep) -> RecognitionReport:
    """Decide whether ``C`` is a permuted Demidenko matrix.

    The reported anchor is always the lexicographically smallest pair whose
    candidate verifies, and ``pairs_tried`` counts the pairs up to and
    including it in that order, whatever ``jobs`` is.
    """
    t0 = time.perf_counter()
    if not isinstance(C, SymmetricMatrix):
        C = SymmetricMatrix(C)
    a = C.values
    n = C.n
    if n <= 3:
        anchor = (1, n) if n >= 2 else None
        return RecognitionReport(True, Permutation.identity(n), anchor, 0, time.perf_counter() - t0)

    pairs = anchor_pairs(n, halve_pairs)
    if jobs <= 1:
        for count, (p, q) in enumerate(pairs, start=1):
            perm = try_anchor(a, p, q, ar=ar)
            if perm is not None:
                return RecognitionReport(True, perm, (p, q), count, time.perf_counter() - t0)
        return RecognitionReport(False, None, None, len(pairs), time.perf_counter() - t0)

    by_p: dict[int, list[int]] = {}
    for p, q in pairs:
        by_p.setdefault(p, []).append(q)
    rows = sorted(by_p)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(_scan_first, (a, p, by_p[p], ar)) for p in rows]
        for p, fut in zip(rows, futures):
            hit = fut.result()
            if hit is not None:
                for f in futures:
                    f.cancel()
                q, perm = hit
                count = pairs.index((p, q)) + 1
                return RecognitionReport(True, perm, (p, q), count, time.perf_counter() - t0)
    return RecognitionReport(False, None, None, len(pairs), time.perf_counter() - t0)


def is_verified(C: SymmetricMatrix, report: RecognitionReport) -> bool:
    """Re-check a positive report independently of the search."""
    if not report.recognized:
        return True
    return check_demidenko(apply(C, report.permutation)).holds
