#!/usr/bin/env python3
"""Compare recognize_demidenko with the brute-force oracle on random
matrices and tabulate agreement per (n, entry range).

    python3 scripts/agreement_sweep.py --n 5 6 7 8 --trials 300
"""
import argparse
import sys

import numpy as np

from demidenko.instances import oracle_permuted_demidenko, random_symmetric
from demidenko.recognition import recognize_demidenko


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[5, 6, 7, 8])
    ap.add_argument("--high", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    bad = 0
    print(f"{'n':>3} {'range':>7} {'trials':>7} {'oracle +':>9} {'disagree':>9}")
    for n in args.n:
        for high in args.high:
            pos = dis = 0
            for _ in range(args.trials):
                C = random_symmetric(n, rng, 0, high)
                truth = oracle_permuted_demidenko(C) is not None
                pos += truth
                if recognize_demidenko(C).recognized != truth:
                    dis += 1
                    print("disagreement:", C.tolist(), file=sys.stderr)
            bad += dis
            print(f"{n:>3} {f'0..{high}':>7} {args.trials:>7} {pos:>9} {dis:>9}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
