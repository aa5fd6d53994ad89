
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from demidenko.ar_recognition import (all_anti_robinson_orders, brute_force_ar,
                                      recognize_anti_robinson, sfs_multisweep, sfs_sweep)
from demidenko.checkers import check_anti_robinson
from demidenko.core import Permutation, SymmetricMatrix, apply, inverse, reverse
from demidenko.instances import GenConfig, gen_anti_robinson, line_metric, scramble
from demidenko.recognition import normalize

from conftest import random_sym, sym_matrices


def test_normalized_example_block(example_matrix):
    Cp = normalize(example_matrix, 1)
    block = Cp.submatrix([1, 2, 3])
    off = {(i, j): int(block.values[i, j]) for i in range(3) for j in range(i + 1, 3)}
    assert off == {(0, 1): -1, (0, 2): 0, (1, 2): 0}
    assert check_anti_robinson(block).holds
    out = recognize_anti_robinson(block)
    assert out.recognized and check_anti_robinson(apply(block, out.permutation)).holds


@pytest.mark.parametrize("seed", range(10))
def test_scrambled_line_metric_recovers_sorted_order(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, 7))
    gaps = rng.integers(1, 6, n - 1)
    C0 = SymmetricMatrix(line_metric(gaps))
    C, phi = scramble(C0, seed)
    # with distinct points the only Anti-Robinson orders are sorted and reverse-sorted
    sorted_order = inverse(phi)
    expected = {sorted_order.images, reverse(sorted_order).images}
    assert {p.images for p in all_anti_robinson_orders(C)} == expected
    out = recognize_anti_robinson(C)
    assert out.recognized and out.permutation.images in expected


def test_constant_off_diagonal_gives_identity():
    a = np.full((7, 7), 3)
    np.fill_diagonal(a, 0)
    out = recognize_anti_robinson(SymmetricMatrix(a))
    assert out.recognized and out.permutation == Permutation.identity(7)


def test_brute_force_small_cases(example_matrix):
    assert brute_force_ar(SymmetricMatrix([[0, 5], [5, 0]])).permutation == Permutation.identity(2)
    # ground truth from the exhaustive scan: the matrix is a permuted Anti-Robinson matrix
    out = brute_force_ar(example_matrix)
    assert out.recognized and out.permutation == Permutation((1, 4, 5, 3, 2))
    assert not check_anti_robinson(example_matrix).holds


def test_brute_force_is_lexicographically_first(rng):
    for _ in range(100):
        C = random_sym(rng, 5, 0, 2)
        orders = [p for p in all_anti_robinson_orders(C) if p.images[0] < p.images[-1]]
        out = brute_force_ar(C)
        assert out.recognized == bool(orders)
        if orders:
            assert out.permutation == min(orders, key=lambda p: p.images)


def test_brute_force_refuses_large_input():
    with pytest.raises(ValueError, match="exceeds bound"):
        brute_force_ar(SymmetricMatrix(np.zeros((9, 9), dtype=int)))
    assert brute_force_ar(SymmetricMatrix(np.zeros((9, 9), dtype=int)), max_n=9).recognized


def test_oracle_equivalence_random_suite():
    rng = np.random.default_rng(7)
    positives = 0
    for trial in range(1000):
        n = int(rng.integers(2, 8))
        C = random_sym(rng, n, 0, 2)
        if trial % 3 == 0:
            cfg = GenConfig(n=n, seed=trial, value_range=(0, 2), bumps=2, scramble=True)
            C = gen_anti_robinson(cfg)
        fast, slow = recognize_anti_robinson(C), brute_force_ar(C)
        assert fast.recognized == slow.recognized
        positives += fast.recognized
        if fast.recognized:
            assert check_anti_robinson(apply(C, fast.permutation)).holds
    assert 200 < positives < 1000


@given(sym_matrices(1, 8, 0, 3))
def test_sound_and_canonical(C):
    out = recognize_anti_robinson(C)
    assert out.recognized == brute_force_ar(C).recognized
    if out.recognized:
        psi = out.permutation
        assert check_anti_robinson(apply(C, psi)).holds
        assert check_anti_robinson(apply(C, reverse(psi))).holds
        assert psi.images <= psi.images[::-1]


@given(sym_matrices(2, 8, 0, 4), st.sampled_from(["cube", "exp", "shift"]))
def test_monotone_relabel_keeps_decision(C, kind):
    a = C.values
    f = {"cube": lambda x: x**3 + 7, "exp": lambda x: 2**x, "shift": lambda x: 5 * x - 11}[kind]
    b = f(a)
    np.fill_diagonal(b, 0)
    assert recognize_anti_robinson(SymmetricMatrix(b)).recognized == recognize_anti_robinson(C).recognized


@pytest.mark.parametrize("n", [20, 40, 80])
def test_scrambled_generated_positives_large(n):
    for seed in range(5):
        C = gen_anti_robinson(GenConfig(n=n, seed=seed, value_range=(0, 3), bumps=n // 2, scramble=True))
        out = recognize_anti_robinson(C)
        assert out.recognized and check_anti_robinson(apply(C, out.permutation)).holds


def test_exhaustive_threshold_gives_same_decision(rng):
    for _ in range(100):
        C = random_sym(rng, 6, 0, 2)
        assert (recognize_anti_robinson(C, exhaustive_max_n=8).recognized
                == recognize_anti_robinson(C).recognized)


def test_first_sweep_breaks_ties_by_input_order():
    S = np.zeros((5, 5), dtype=int)
    assert sfs_sweep(S) == [0, 1, 2, 3, 4]
    # SFS+ starts from the vertex visited last before
    assert sfs_sweep(S, [0, 1, 2, 3, 4])[0] == 4


def test_multisweep_rejects_non_robinsonian():
    # a 4-cycle of near/far relations admits no Anti-Robinson order
    a = np.array([[0, 1, 2, 1], [1, 0, 1, 2], [2, 1, 0, 1], [1, 2, 1, 0]])
    assert all_anti_robinson_orders(a) == []
    assert sfs_multisweep(a) is None
