"""Solve every enumerated small formula and compare with the truth table.

    python scripts/exhaustive.py --vars 3 --leaves 7 --depth 4
    python scripts/exhaustive.py --subset-rule --guard paper
"""

import argparse
import time
from collections import Counter

from nvld import SolverConfig, Verdict, enumerate_small, print_formula, solve, truth_table_valid


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--vars", type=int, default=3)
    ap.add_argument("--leaves", type=int, default=7)
    ap.add_argument("--depth", type=int, default=4)
    ap.add_argument("--all", action="store_true", help="skip the symmetry reduction")
    ap.add_argument("--subset-rule", action="store_true")
    ap.add_argument("--guard", choices=("sibling", "paper"), default="sibling")
    ap.add_argument("--show", type=int, default=5, help="mismatches to print")
    args = ap.parse_args()

    cfg = SolverConfig(subset_rule=args.subset_rule, intersection_guard=args.guard, checked=True)
    t0 = time.perf_counter()
    n = mismatches = violations = 0
    rules: Counter = Counter()
    for ast in enumerate_small(args.vars, args.leaves, args.depth, up_to_symmetry=not args.all):
        n += 1
        result = solve(ast, cfg)
        rules.update(result.rule_counts())
        violations += len(result.violations)
        if (result.verdict is Verdict.VALID) != truth_table_valid(ast):
            mismatches += 1
            if mismatches <= args.show:
                print(f"mismatch: {print_formula(ast)} -> {result.verdict}")
    print(f"{n} formulas, {mismatches} mismatches, {violations} violations, "
          f"{time.perf_counter() - t0:.1f}s")
    for rule, count in rules.most_common():
        print(f"  {rule:<16} {count}")


if __name__ == "__main__":
    main()
