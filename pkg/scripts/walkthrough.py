"""Build every kind of rule for one measure and print them side by side.

Usage:
    python scripts/walkthrough.py --preset normal --d 3 --y 1.0
    python scripts/walkthrough.py --preset exponential --d 5 --y 0.3

For the chosen degree the script prints the odd-degree rule one degree up,
the even-degree rule through the prescribed node, and the even-degree rule
with a node at infinity, each with its verification residual.  Useful as a
first sanity pass on a new moment sequence before scripting anything.
"""

import argparse
import sys

sys.path.insert(0, "src")

from momquad import (
    even_rule_through,
    gaussian_odd,
    infinity_rule,
    moments_exponential,
    moments_normal,
    moments_uniform,
    rule_to_text,
    verify_rule,
)

PRESETS = {
    "normal": moments_normal,
    "exponential": moments_exponential,
    "uniform": lambda deg: moments_uniform(0.0, 1.0, deg),
}


def show(title, seq, rule):
    report = verify_rule(seq, rule)
    print(f"--- {title} (degree {rule.degree}, {rule.node_count} nodes) ---")
    print(rule_to_text(rule), end="")
    print(f"verification: {report}")
    print()


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--preset", choices=sorted(PRESETS), default="normal")
    ap.add_argument("--d", type=int, default=3)
    ap.add_argument("--y", type=float, default=1.0, help="prescribed node for the even rule")
    args = ap.parse_args()

    seq = PRESETS[args.preset](2 * args.d + 1)
    print(f"measure: {args.preset}, moments through degree {seq.max_degree}")
    print(f"m_0..m_6 = {[round(v, 6) for v in seq.values[:7]]}")
    print()

    show("odd-degree rule", seq, gaussian_odd(seq, args.d))
    show(f"even rule through y={args.y}", seq, even_rule_through(seq, args.d, args.y))
    show("even rule through infinity", seq, infinity_rule(seq, args.d))


if __name__ == "__main__":
    main()
