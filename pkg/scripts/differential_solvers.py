#!/usr/bin/env python3
"""Stress the search engine against the enumeration oracle on random programs.

Generates random ground hybrid programs (Boolean atoms mixed with linear and
difference constraint atoms), solves each with both engines in casp mode, and
reports any disagreement.  Exits nonzero on the first mismatch, printing the
offending program so it can be pasted into a regression test.

Usage:
    python3 scripts/differential_solvers.py --count 500 --seed 7 --domain 0..3
"""

import argparse
import random
import re
import sys
import time
from collections import Counter

from htsolve import solve
from htsolve.randprog import random_hybrid_program


def domain(text: str) -> tuple:
    m = re.fullmatch(r"(-?\d+)\.\.(-?\d+)", text)
    if not m or int(m.group(1)) > int(m.group(2)):
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}")
    return (int(m.group(1)), int(m.group(2)))


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=500)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--atoms", type=int, default=6)
    ap.add_argument("--variables", type=int, default=3)
    ap.add_argument("--rules", type=int, default=6)
    ap.add_argument("--domain", type=domain, default=(0, 3), metavar="LO..HI")
    args = ap.parse_args(argv)

    rng = random.Random(args.seed)
    answer_histogram = Counter()
    oracle_time = search_time = 0.0
    for n in range(1, args.count + 1):
        g = random_hybrid_program(
            rng, n_atoms=args.atoms, n_vars=args.variables, max_rules=args.rules
        )
        t0 = time.perf_counter()
        by_oracle = solve(g, "casp", args.domain, engine="oracle")
        t1 = time.perf_counter()
        by_search = solve(g, "casp", args.domain, engine="search")
        t2 = time.perf_counter()
        oracle_time += t1 - t0
        search_time += t2 - t1
        if by_oracle != by_search:
            print(f"MISMATCH on program {n}:")
            print(g)
            print(f"oracle found {len(by_oracle)}, search found {len(by_search)}")
            return 1
        answer_histogram[len(by_oracle)] += 1

    print(f"{args.count} programs agree "
          f"(atoms<={args.atoms}, variables<={args.variables}, "
          f"rules<={args.rules}, domain {args.domain[0]}..{args.domain[1]})")
    print(f"oracle {oracle_time:.2f}s, search {search_time:.2f}s")
    print("answer-set counts:",
          ", ".join(f"{k}x{v}" for k, v in sorted(answer_histogram.items())))
    return 0


if __name__ == "__main__":
    sys.exit(main())
