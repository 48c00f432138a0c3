#!/usr/bin/env python3
"""Survey minimum summand counts over whole small algebras and compare the
constructive decomposers against the brute-force ground truth.

For each (q, n, k) the oracle computes the exact minimum number of k-th
powers per matrix; the survey then reports the histogram, how often the
two-power algorithm succeeds, and confirms it never succeeds where the
oracle proves the minimum exceeds two."""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from triwaring.decomposer import decompose_three, decompose_two
from triwaring.errors import InsufficientClassesError
from triwaring.fields import make_field
from triwaring.oracle import iter_matrices, waring_report


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, nargs="+", default=[3, 5, 7, 13])
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--k", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--cap", type=int, default=4)
    args = ap.parse_args()

    for q in args.q:
        F = make_field(q)
        for k in args.k:
            rep = waring_report(F, args.n, k, args.cap)
            two_ok = three_ok = 0
            disagreements = 0
            for C in iter_matrices(F, args.n):
                try:
                    decompose_two(C, k)
                    two_ok += 1
                    if rep.per_matrix_min[C] is not None \
                            and rep.per_matrix_min[C] > 2:
                        disagreements += 1
                except InsufficientClassesError:
                    pass
                try:
                    decompose_three(C, k)
                    three_ok += 1
                except InsufficientClassesError:
                    pass
            total = q ** (args.n * (args.n + 1) // 2)
            print(f"q={q:<3} n={args.n} k={k}: histogram {rep.histogram()}  "
                  f"two-power algorithm {two_ok}/{total}, "
                  f"three-power {three_ok}/{total}, "
                  f"oracle disagreements {disagreements}")
            if disagreements:
                return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
