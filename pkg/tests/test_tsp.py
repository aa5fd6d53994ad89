from itertools import permutations

import pytest
from hypothesis import given

from demidenko.checkers import check_demidenko
from demidenko.core import Permutation, SymmetricMatrix, apply, compose
from demidenko.instances import GenConfig, gen_demidenko, line_metric, oracle_tsp, scramble
from demidenko.tsp import (NotRecognized, Solved, Tour, solve_assuming_demidenko,
                           solve_permuted_demidenko_tsp, solve_pyramidal, tour_cost)

from conftest import random_sym, sym_matrices

LINE4 = SymmetricMatrix(line_metric([1, 2, 3]))

# no ordering of this matrix satisfies the Demidenko conditions (oracle-checked)
NEGATIVE_6 = [
    [0, 3, 2, 2, 3, 1],
    [3, 0, 1, 2, 2, 0],
    [2, 1, 0, 2, 3, 3],
    [2, 2, 2, 0, 2, 2],
    [3, 2, 3, 2, 0, 0],
    [1, 0, 3, 2, 0, 0],
]


def is_pyramidal(order: Permutation) -> bool:
    seq = list(order.images)
    seq = seq[seq.index(1):] + seq[: seq.index(1)]
    top = seq.index(len(seq))
    up, down = seq[: top + 1], seq[top:] + [1]
    return up == sorted(up) and down == sorted(down, reverse=True)


def test_tour_cost_line_metric():
    assert tour_cost(LINE4, Permutation((1, 2, 3, 4))) == 12
    assert tour_cost(LINE4, Permutation((1, 3, 2, 4))) == 3 + 2 + 5 + 6


def test_tour_cost_size_mismatch():
    with pytest.raises(ValueError, match="size mismatch"):
        tour_cost(LINE4, Permutation((1, 2, 3)))


def test_composition_identity_exhaustive_n4(rng):
    C = random_sym(rng, 4, -9, 9, diag=True)
    for phi in permutations(range(1, 5)):
        for pi in permutations(range(1, 5)):
            phi_, pi_ = Permutation(phi), Permutation(pi)
            assert tour_cost(apply(C, phi_), pi_) == tour_cost(C, compose(phi_, pi_))


@given(sym_matrices(3, 3, -20, 20))
def test_triangle_unique_tour(C):
    t = solve_pyramidal(C)
    assert t.cost == C.entry(1, 2) + C.entry(2, 3) + C.entry(3, 1)


def test_too_small_rejected():
    with pytest.raises(ValueError):
        solve_pyramidal(SymmetricMatrix([[0, 1], [1, 0]]))


def test_line_metric_optimum():
    t = solve_pyramidal(LINE4)
    assert t.cost == 12 == oracle_tsp(LINE4)[1]


@given(sym_matrices(3, 9, -30, 30))
def test_pyramidal_tour_is_valid_and_bounded(C):
    t = solve_pyramidal(C)
    assert sorted(t.order.images) == list(range(1, C.n + 1))
    assert is_pyramidal(t.order)
    assert t.cost == tour_cost(C, t.order)
    assert t.cost >= oracle_tsp(C)[1]


def test_pyramidal_is_cheapest_pyramidal(rng):
    for _ in range(40):
        n = int(rng.integers(3, 8))
        C = random_sym(rng, n, 0, 20)
        best = min(tour_cost(C, Permutation(p)) for p in permutations(range(1, n + 1))
                   if p[0] == 1 and is_pyramidal(Permutation(p)))
        assert solve_pyramidal(C).cost == best


def test_pyramidal_optimal_on_demidenko():
    for seed in range(60):
        n = 3 + seed % 8
        C = gen_demidenko(GenConfig(n=n, seed=seed, bumps=seed % 3, symmetric_sum=seed % 2 == 1))
        assert check_demidenko(C)
        assert solve_pyramidal(C).cost == oracle_tsp(C)[1]


def test_scrambled_line_metric_solved():
    S, _ = scramble(SymmetricMatrix(line_metric([2, 1, 4, 1, 3])), 5)
    res = solve_permuted_demidenko_tsp(S)
    assert isinstance(res, Solved) and res.certified
    assert res.tour.cost == oracle_tsp(S)[1] == tour_cost(S, res.tour.order)


def test_already_demidenko_same_cost():
    C = gen_demidenko(GenConfig(n=8, seed=2, bumps=2))
    assert solve_permuted_demidenko_tsp(C).tour.cost == solve_pyramidal(C).cost


def test_negative_not_recognized():
    assert isinstance(solve_permuted_demidenko_tsp(SymmetricMatrix(NEGATIVE_6)), NotRecognized)


def test_assume_demidenko_certification():
    assert solve_assuming_demidenko(LINE4).certified
    S, _ = scramble(gen_demidenko(GenConfig(n=8, seed=1, bumps=2, symmetric_sum=True)), 3)
    res = solve_assuming_demidenko(S)
    assert res.certified == check_demidenko(S).holds
    assert res.tour.cost == solve_pyramidal(S).cost


def test_tour_of_recomputes_cost():
    t = Tour.of(LINE4, Permutation((2, 1, 3, 4)))
    assert t.cost == 1 + 3 + 3 + 5
