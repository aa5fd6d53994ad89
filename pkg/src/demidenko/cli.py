"""Command-line front end.

Exit codes: 0 positive / condition holds, 1 negative / condition fails,
2 usage, I/O, format or internal error.
"""
from __future__ import annotations

import argparse
import csv
import math
import statistics
import sys
import time
from dataclasses import astuple, dataclass
from typing import Optional, Sequence

from .ar_recognition import brute_force_ar, recognize_anti_robinson
from .checkers import check_anti_robinson, check_demidenko
from .core import MatrixFormatError, format_permutation, format_value, read_matrix, write_matrix
from .instances import (GenConfig, gen_anti_robinson, gen_demidenko, oracle_permuted_demidenko,
                        oracle_tsp)
from .recognition import recognize_demidenko
from .tsp import NotRecognized, solve_assuming_demidenko, solve_permuted_demidenko_tsp

EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2

CSV_COLUMNS = ("n", "seed", "case", "recognized", "pairs_tried", "wall_millis")
BENCH_CASE = "scrambled-demidenko"


class UsageError(Exception):
    pass


@dataclass
class BenchRecord:
    n: int
    seed: int
    case_label: str
    recognized: bool
    pairs_tried: int
    wall_millis: float


def bench_config(n: int, seed: int) -> GenConfig:
    return GenConfig(n=n, seed=seed, value_range=(0, 9), bumps=max(n // 4, 1),
                     symmetric_sum=True, scramble=True)


def bench(sizes: Sequence[int], seeds: Sequence[int], out, jobs: int = 1) -> list[BenchRecord]:
    """Recognize one scrambled generated positive per (n, seed) and write
    the records as CSV to the open text stream ``out``."""
    if not sizes:
        raise UsageError("bench needs at least one size")
    records = []
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for n in sizes:
        for seed in seeds:
            C = gen_demidenko(bench_config(n, seed))
            t0 = time.perf_counter()
            report = recognize_demidenko(C, jobs=jobs)
            ms = (time.perf_counter() - t0) * 1000.0
            rec = BenchRecord(n, seed, BENCH_CASE, report.recognized, report.pairs_tried, ms)
            records.append(rec)
            row = list(astuple(rec))
            row[3] = int(rec.recognized)
            row[5] = f"{ms:.3f}"
            writer.writerow(row)
    return records


def loglog_slope(records: Sequence[BenchRecord]) -> Optional[float]:
    """Least-squares slope of log(mean wall time) against log(n)."""
    by_n: dict[int, list[float]] = {}
    for r in records:
        by_n.setdefault(r.n, []).append(r.wall_millis)
    if len(by_n) < 2:
        return None
    xs = [math.log(n) for n in sorted(by_n)]
    ys = [math.log(max(statistics.fmean(by_n[n]), 1e-9)) for n in sorted(by_n)]
    mx, my = statistics.fmean(xs), statistics.fmean(ys)
    return sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sum((x - mx) ** 2 for x in xs)


# ------------------------------------------------------------ subcommands

def _cmd_check(args) -> int:
    C = read_matrix(args.file)
    verdict = check_demidenko(C) if args.cls == "demidenko" else check_anti_robinson(C)
    if verdict.holds:
        print("HOLDS")
        return EXIT_YES
    print("FAILS")
    print("witness: " + " ".join(map(str, verdict.witness)))
    return EXIT_NO


def _cmd_recognize(args) -> int:
    C = read_matrix(args.file)
    if args.cls == "anti-robinson":
        out = recognize_anti_robinson(C)
        if not out.recognized:
            print("NONE")
            return EXIT_NO
        print(format_permutation(out.permutation))
        return EXIT_YES
    report = recognize_demidenko(C, jobs=args.jobs, halve_pairs=args.halve_pairs)
    if not report.recognized:
        print("NONE")
        print(f"pairs tried: {report.pairs_tried}")
        return EXIT_NO
    print(format_permutation(report.permutation))
    if report.anchor is not None:
        print("anchor: %d %d" % report.anchor)
    print(f"pairs tried: {report.pairs_tried}")
    return EXIT_YES


def _cmd_generate(args) -> int:
    cfg = GenConfig(n=args.n, seed=args.seed, value_range=(args.low, args.high), bumps=args.bumps,
                    symmetric_sum=args.symmetric_sum, scramble=args.scramble)
    gen = gen_demidenko if args.cls == "demidenko" else gen_anti_robinson
    write_matrix(gen(cfg), args.output)
    return EXIT_YES


def _cmd_solve_tsp(args) -> int:
    C = read_matrix(args.file)
    if C.n < 3:
        raise UsageError("a tour needs at least 3 cities")
    result = solve_assuming_demidenko(C) if args.assume_demidenko else solve_permuted_demidenko_tsp(C)
    if isinstance(result, NotRecognized):
        print("NOT RECOGNIZED")
        return EXIT_NO
    print("tour: " + format_permutation(result.tour.order))
    print(f"cost: {format_value(result.tour.cost, C.scale)}")
    print(f"certified: {'yes' if result.certified else 'no'}")
    return EXIT_YES if result.certified else EXIT_NO


def _cmd_bench(args) -> int:
    if not args.sizes:
        raise UsageError("bench needs at least one size")
    try:
        out = open(args.output, "w", encoding="utf-8", newline="") if args.output != "-" else sys.stdout
    except OSError as exc:
        print(f"error: cannot write {args.output}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    try:
        records = bench(args.sizes, args.seeds, out, jobs=args.jobs)
    finally:
        if out is not sys.stdout:
            out.close()
    slope = loglog_slope(records)
    if slope is not None:
        print(f"log-log slope of mean wall time: {slope:.3f}", file=sys.stderr)
    return EXIT_YES if all(r.recognized for r in records) else EXIT_NO


def _cmd_oracle(args) -> int:
    C = read_matrix(args.file)
    if args.cls == "tsp":
        tour, cost = oracle_tsp(C)
        print("tour: " + format_permutation(tour.order))
        print(f"cost: {format_value(cost, C.scale)}")
        return EXIT_YES
    if args.cls == "anti-robinson":
        out = brute_force_ar(C)
        perm = out.permutation
    else:
        perm = oracle_permuted_demidenko(C)
    if perm is None:
        print("NONE")
        return EXIT_NO
    print(format_permutation(perm))
    return EXIT_YES


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="demidenko",
                                     description="Recognize permuted Demidenko matrices.")
    sub = parser.add_subparsers(dest="command", required=True)
    classes = ("demidenko", "anti-robinson")

    p = sub.add_parser("check", help="check a matrix against a condition system")
    p.add_argument("--class", dest="cls", choices=classes, required=True)
    p.add_argument("file")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("recognize", help="search for a permutation into a class")
    p.add_argument("--class", dest="cls", choices=classes, required=True)
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--halve-pairs", action="store_true")
    p.add_argument("file")
    p.set_defaults(func=_cmd_recognize)

    p = sub.add_parser("generate", help="write a seeded instance")
    p.add_argument("--class", dest="cls", choices=classes, required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--scramble", action="store_true")
    p.add_argument("--bumps", type=int, default=0)
    p.add_argument("--symmetric-sum", action="store_true")
    p.add_argument("--low", type=int, default=0)
    p.add_argument("--high", type=int, default=9)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("solve-tsp", help="exact TSP on a (permuted) Demidenko matrix")
    p.add_argument("--assume-demidenko", action="store_true")
    p.add_argument("file")
    p.set_defaults(func=_cmd_solve_tsp)

    p = sub.add_parser("bench", help="time recognition on scrambled generated positives")
    p.add_argument("--sizes", type=_positive, nargs="*", default=[16, 32])
    p.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2])
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("oracle", help="brute-force ground truth for small matrices")
    p.add_argument("--class", dest="cls", choices=classes + ("tsp",), default="demidenko")
    p.add_argument("file")
    p.set_defaults(func=_cmd_oracle)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_YES
    try:
        return args.func(args)
    except (OSError, MatrixFormatError, UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except Exception as exc:  # noqa: BLE001 - any internal failure maps to exit 2
        print(f"internal error: {exc!r}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
