"""Travelling salesman tours, the pyramidal dynamic program, and the
recognize-then-solve pipeline for permuted Demidenko distance matrices."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .checkers import check_demidenko
from .core import Permutation, SymmetricMatrix, apply, compose
from .recognition import recognize_demidenko


def tour_cost(C: SymmetricMatrix, pi: Permutation):
    """Cyclic cost ``sum_i c[pi(i), pi(i+1)] + c[pi(n), pi(1)]``."""
    if C.n != pi.n:
        raise ValueError(f"size mismatch in tour_cost: {C.n} != {pi.n}")
    idx = pi.zero_based()
    return C.values[idx, np.roll(idx, -1)].sum().item()


@dataclass(frozen=True)
class Tour:
    order: Permutation
    cost: object

    @classmethod
    def of(cls, C: SymmetricMatrix, order: Permutation) -> "Tour":
        return cls(order, tour_cost(C, order))


def solve_pyramidal(C: SymmetricMatrix) -> Tour:
    """Cheapest pyramidal tour (1 -> ... -> n increasing, then back down).

    State F[i][j] (i < j, 0-based) is the cheapest pair of disjoint
    increasing paths out of city 0 that end in i and j and together cover
    cities 0..j.  Ties go to the smallest predecessor.  Optimal over all
    tours whenever ``C`` satisfies the Demidenko conditions.
    """
    n = C.n
    if n < 3:
        raise ValueError("solve_pyramidal needs n >= 3")
    c = C.values.tolist()
    INF = None
    F = [[INF] * n for _ in range(n)]
    pred = [[-1] * n for _ in range(n)]
    F[0][1] = c[0][1]
    for j in range(1, n - 1):
        # extend the path ending in j by the edge (j, j+1)
        for i in range(j):
            F[i][j + 1] = F[i][j] + c[j][j + 1]
            pred[i][j + 1] = i
        # the path ending in i jumps to j+1, leaving j as the other end
        best, arg = None, -1
        for i in range(j):
            v = F[i][j] + c[i][j + 1]
            if best is None or v < best:
                best, arg = v, i
        F[j][j + 1] = best
        pred[j][j + 1] = arg

    best, last = None, -1
    for i in range(n - 1):
        v = F[i][n - 1] + c[i][n - 1]
        if best is None or v < best:
            best, last = v, i

    edges = [(last, n - 1)]
    i, j = last, n - 1
    while j > 1:
        if i < j - 1:
            edges.append((j - 1, j))
            j -= 1
        else:
            k = pred[i][j]
            edges.append((k, j))
            i, j = k, j - 1
    edges.append((0, 1))

    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    order = [0, min(adj[0])]
    while len(order) < n:
        a, b = adj[order[-1]]
        order.append(a if a != order[-2] else b)
    tour = Tour.of(C, Permutation.from_zero_based(order))
    if tour.cost != best:
        raise AssertionError("pyramidal reconstruction does not match the DP value")
    return tour


@dataclass(frozen=True)
class Solved:
    tour: Tour
    certified: bool


@dataclass(frozen=True)
class NotRecognized:
    pass


def solve_permuted_demidenko_tsp(C: SymmetricMatrix, **recognize_opts) -> Union[Solved, NotRecognized]:
    """Recognize a Demidenko permutation phi, solve the permuted instance
    pyramidally and map the tour back through phi.  No fallback when the
    recognition fails."""
    report = recognize_demidenko(C, **recognize_opts)
    if not report.recognized:
        return NotRecognized()
    phi = report.permutation
    if C.n < 3:
        return Solved(Tour.of(C, phi), True)
    inner = solve_pyramidal(apply(C, phi))
    return Solved(Tour.of(C, compose(phi, inner.order)), True)


def solve_assuming_demidenko(C: SymmetricMatrix) -> Solved:
    """Pyramidal tour on ``C`` as given; certified only if ``C`` itself
    satisfies the Demidenko conditions."""
    return Solved(solve_pyramidal(C), check_demidenko(C).holds)
