"""Recognition of permuted Demidenko matrices, with checkers, generators,
brute-force oracles and a pyramidal TSP solver."""
from .ar_recognition import ArOutcome, brute_force_ar, recognize_anti_robinson
from .checkers import (check_anti_robinson, check_demidenko, check_demidenko_adjacent,
                       check_demidenko_quadruple)
from .core import (UNSET, MatrixFormatError, PartialPermutation, Permutation, SymmetricMatrix,
                   Verdict, apply, compose, inverse, parse_matrix, reverse, serialize_matrix)
from .instances import (GenConfig, gen_anti_robinson, gen_demidenko, gen_line_metric,
                        oracle_permuted_demidenko, oracle_tsp, scramble)
from .recognition import (MinSet, RecognitionReport, build_border_matrix, check_candidate,
                          compute_min_set, normalize, recognize_demidenko)
from .tsp import NotRecognized, Solved, Tour, solve_permuted_demidenko_tsp, solve_pyramidal, tour_cost

__all__ = [name for name in dir() if not name.startswith("_")]
