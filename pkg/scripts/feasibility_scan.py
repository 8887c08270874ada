"""Map out where a two-node prescription stops being completable.

Fixes the first prescribed node and sweeps the second across an interval,
solving the three-node feasibility problem at each step and printing one
line per position: the verdict plus how each candidate completion died.
With the defaults (first node at 2, second sweeping the right tail of the
normal measure) a feasibility window opens near 3 and closes again before
5, with every completion outside it dying on a negative weight:

    python scripts/feasibility_scan.py
    python scripts/feasibility_scan.py --first 0.0 --lo 0.5 --hi 4.5
"""

import argparse
import sys
import warnings
from collections import Counter

sys.path.insert(0, "src")

from momquad import MultiNodeProblem, moments_normal, multinode_solve


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--first", type=float, default=2.0, help="fixed first node")
    ap.add_argument("--lo", type=float, default=2.2)
    ap.add_argument("--hi", type=float, default=5.4)
    ap.add_argument("--steps", type=int, default=17)
    ap.add_argument("--l", type=int, default=3, help="extra nodes beyond the prescription")
    args = ap.parse_args()

    seq = moments_normal(3 + 2 * args.l)
    print(f"prefix ({args.first}, b) for the normal moments, n=3, l={args.l}")
    print(f"{'b':>10}  {'verdict':<12} outcome counts")
    for i in range(args.steps):
        b = args.lo + (args.hi - args.lo) * i / (args.steps - 1)
        try:
            prob = MultiNodeProblem(3, args.l, (args.first, b), seq)
        except ValueError as exc:
            print(f"{b:>10.4f}  {'skipped':<12} {exc}")
            continue
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            report = multinode_solve(prob)
        counts = Counter(o.outcome for o in report.candidates)
        summary = ", ".join(f"{k} x{v}" for k, v in sorted(counts.items()))
        print(f"{b:>10.4f}  {report.verdict:<12} {summary}")


if __name__ == "__main__":
    main()
