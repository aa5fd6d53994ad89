"""Seeded instance generators and brute-force oracles.

Randomness comes from numpy's PCG64 bit generator, which produces the same
stream on every platform.  A generator seed is split with ``SeedSequence``
into independent child streams, one per purpose, in this fixed order:

    0 gaps, 1 bumps, 2 symmetric-sum offsets, 3 diagonal, 4 scramble

so toggling one feature never shifts the random numbers used by another.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Optional

import numpy as np

from .checkers import check_anti_robinson, check_demidenko
from .core import Permutation, SymmetricMatrix, apply

ORACLE_MAX_N = 8
TSP_ORACLE_MAX_N = 10

_GAPS, _BUMPS, _SUM, _DIAG, _SCRAMBLE = range(5)


class GeneratorError(AssertionError):
    """A generated instance failed its own class check."""


@dataclass(frozen=True)
class GenConfig:
    n: int
    seed: int = 0
    value_range: tuple[int, int] = (0, 9)
    bumps: int = 0
    symmetric_sum: bool = False
    scramble: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        lo, hi = self.value_range
        if lo > hi:
            raise ValueError(f"empty value range {self.value_range}")

    def streams(self) -> list[np.random.Generator]:
        children = np.random.SeedSequence(self.seed & (2**64 - 1)).spawn(5)
        return [np.random.Generator(np.random.PCG64(s)) for s in children]


def line_metric(gaps) -> np.ndarray:
    """Distance matrix of points on a line with consecutive gaps ``gaps``."""
    x = np.concatenate([[0], np.cumsum(np.asarray(gaps, dtype=np.int64))]).astype(np.int64)
    return np.abs(x[:, None] - x[None, :])


def add_bump(a: np.ndarray, p: int, q: int, delta: int) -> np.ndarray:
    """Add ``delta`` to every entry (k, l) and (l, k) with k <= p < q <= l
    (1-based).  The bump indicator is itself Anti-Robinson."""
    if not 1 <= p < q <= a.shape[0]:
        raise ValueError(f"bump needs 1 <= p < q <= n, got p={p}, q={q}")
    out = a.copy()
    out[:p, q - 1:] += delta
    out[q - 1:, :p] += delta
    return out


def _gap_range(cfg: GenConfig) -> tuple[int, int]:
    lo, hi = cfg.value_range
    if hi < 0:
        raise ValueError("line-metric gaps need a value range reaching 0 or above")
    return max(lo, 0), hi


def _line(cfg: GenConfig, streams) -> np.ndarray:
    lo, hi = _gap_range(cfg)
    gaps = streams[_GAPS].integers(lo, hi, size=cfg.n - 1, endpoint=True)
    return line_metric(gaps)


def _bumped(cfg: GenConfig, streams) -> np.ndarray:
    a = _line(cfg, streams)
    rng = streams[_BUMPS]
    hi = max(_gap_range(cfg)[1], 1)
    if cfg.n >= 2:
        for _ in range(cfg.bumps):
            p, q = sorted(rng.choice(np.arange(1, cfg.n + 1), size=2, replace=False))
            a = add_bump(a, int(p), int(q), int(rng.integers(1, hi, endpoint=True)))
    return a


def _finish(a: np.ndarray, cfg: GenConfig, streams) -> SymmetricMatrix:
    C = SymmetricMatrix._wrap(a)
    if cfg.scramble:
        C = apply(C, _random_permutation(cfg.n, streams[_SCRAMBLE]))
    return C


def gen_line_metric(cfg: GenConfig) -> SymmetricMatrix:
    streams = cfg.streams()
    a = _line(cfg, streams)
    if not check_anti_robinson(a):
        raise GeneratorError("line metric is not Anti-Robinson")
    return _finish(a, cfg, streams)


def gen_anti_robinson(cfg: GenConfig) -> SymmetricMatrix:
    """Line metric plus ``cfg.bumps`` random rectangle bumps."""
    streams = cfg.streams()
    a = _bumped(cfg, streams)
    v = check_anti_robinson(a)
    if not v:
        raise GeneratorError(f"generated matrix violates Anti-Robinson at {v.witness}")
    return _finish(a, cfg, streams)


def gen_demidenko(cfg: GenConfig) -> SymmetricMatrix:
    """Anti-Robinson core, optionally plus ``u_i + u_j`` off the diagonal,
    with a random diagonal.  Neither addition touches the Demidenko
    conditions, but the offsets usually destroy the Anti-Robinson shape."""
    streams = cfg.streams()
    a = _bumped(cfg, streams)
    n = cfg.n
    lo, hi = cfg.value_range
    if cfg.symmetric_sum:
        span = max(hi - lo, 1) * max(n // 2, 1)
        u = streams[_SUM].integers(-span, span, size=n, endpoint=True)
        a = a + u[:, None] + u[None, :]
    np.fill_diagonal(a, streams[_DIAG].integers(lo, hi, size=n, endpoint=True))
    v = check_demidenko(a)
    if not v:
        raise GeneratorError(f"generated matrix violates Demidenko at {v.witness}")
    return _finish(a, cfg, streams)


def _random_permutation(n: int, rng: np.random.Generator) -> Permutation:
    return Permutation.from_zero_based(rng.permutation(n))


def scramble(C: SymmetricMatrix, seed: Optional[int]) -> tuple[SymmetricMatrix, Permutation]:
    """``(apply(C, phi), phi)`` for a seeded uniform ``phi``; identity if seed is None."""
    if seed is None:
        return C, Permutation.identity(C.n)
    phi = _random_permutation(C.n, np.random.Generator(np.random.PCG64(seed)))
    return apply(C, phi), phi


def random_symmetric(n: int, rng: np.random.Generator, low: int = 0, high: int = 1) -> SymmetricMatrix:
    """Uniform integer entries in [low, high] above the diagonal, zero diagonal."""
    a = np.triu(rng.integers(low, high, size=(n, n), endpoint=True), 1)
    return SymmetricMatrix._wrap(a + a.T)


# ------------------------------------------------------------------ oracles

def _demidenko_dfs(a, prune_reversals: bool) -> Optional[list[int]]:
    # Lexicographic depth-first search.  Appending v as the new last position
    # checks every adjacent-form inequality whose largest index is v; these
    # are all the conditions of the longer prefix not already checked.
    n = len(a)
    order: list[int] = []
    used = [False] * n

    def ok(v: int) -> bool:
        t = len(order)
        for j in range(1, t - 1):
            x, y = order[j], order[j + 1]
            rhs = a[x][v] - a[y][v]
            for i in range(j):
                w = order[i]
                if a[x][w] - a[y][w] > rhs:
                    return False
        return True

    def dfs() -> bool:
        if len(order) == n:
            return not prune_reversals or order[0] <= order[-1]
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


def oracle_permuted_demidenko(C: SymmetricMatrix, *, max_n: int = ORACLE_MAX_N,
                              prune_reversals: bool = True) -> Optional[Permutation]:
    """Lexicographically first Demidenko permutation of ``C``, or None.

    Exhaustive over all orders (prefixes that already violate a condition
    are abandoned, which cannot lose a solution since the conditions restrict
    to prefixes).  The result is re-verified with ``check_demidenko``.
    """
    n = C.n
    if n > max_n:
        raise ValueError(f"oracle refused: n={n} exceeds bound {max_n}")
    order = _demidenko_dfs(C.values.tolist(), prune_reversals)
    if order is None:
        return None
    perm = Permutation.from_zero_based(order)
    if not check_demidenko(apply(C, perm)):
        raise AssertionError("oracle produced an invalid permutation")
    return perm


@lru_cache(maxsize=16)
def _tour_tails(n: int) -> np.ndarray:
    # all orders of cities 1..n-1 (0-based) after city 0, one per reversal pair
    tails = np.array(list(permutations(range(1, n))), dtype=np.intp).reshape(-1, n - 1)
    if n >= 3:
        tails = tails[tails[:, 0] < tails[:, -1]]
    return tails


def oracle_tsp(C: SymmetricMatrix, *, max_n: int = TSP_ORACLE_MAX_N):
    """Exhaustive minimum over the (n-1)!/2 distinct tours.

    Returns ``(Tour, cost)`` for the first optimal tour in lexicographic
    order starting at city 1.
    """
    from .tsp import Tour

    n = C.n
    if n > max_n:
        raise ValueError(f"TSP oracle refused: n={n} exceeds bound {max_n}")
    if n < 3:
        raise ValueError("a tour needs at least 3 cities")
    tails = _tour_tails(n)
    tours = np.hstack([np.zeros((len(tails), 1), dtype=np.intp), tails])
    a = C.values
    costs = a[tours, np.roll(tours, -1, axis=1)].sum(axis=1)
    best = int(np.argmin(costs))
    order = Permutation.from_zero_based(tours[best])
    return Tour(order, costs[best].item()), costs[best].item()
