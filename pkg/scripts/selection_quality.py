"""How good is the footprint-minus-weight choice of splitting variable?

At the first splitting point of each random formula, split on every variable
in turn and compare the resulting sizes with the one the solver picks.
"""

import argparse
import statistics

from nvld import Solver, Verdict, gen_random_nnf, to_nnf
from nvld.delta import compute_delta
from nvld.formula import Kind
from nvld.minimal import Occurrences, analyze_variable


def split_size(solver: Solver, v: str) -> int:
    trial = Solver(solver.tree.copy())
    rep = analyze_variable(trial.tree, compute_delta(trial.tree), v)
    if trial.tree.kind(rep.root) is Kind.AND:
        trial.step6_split_conjunction(rep)
    else:
        trial.step7_split_disjunction(rep)
    return trial.tree.size()


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=2000)
    ap.add_argument("--max-vars", type=int, default=8)
    ap.add_argument("--max-size", type=int, default=60)
    args = ap.parse_args()

    cases = best = worst_ok = 0
    gaps = []
    for seed in range(args.count):
        s = Solver(to_nnf(gen_random_nnf(seed, args.max_vars, args.max_size)))
        s.iteration = 1
        if any(isinstance(step(), Verdict) for step in
               (s.step1_pure, s.step2_delta_prune, s.step3_strict_assign, s.step4_unit_expand)):
            continue
        chosen = s.step5_select().var
        sizes = {v: split_size(s, v) for v in Occurrences(s.tree).variables()}
        cases += 1
        best += sizes[chosen] == min(sizes.values())
        worst_ok += sizes[chosen] <= max(sizes.values())
        gaps.append(sizes[chosen] - min(sizes.values()))
    if not cases:
        print("no formula reached the splitting step")
        return
    print(f"{cases} splitting points")
    print(f"chosen variable gives the smallest result: {best / cases:.1%}")
    print(f"never worse than the worst alternative:    {worst_ok / cases:.1%}")
    print(f"mean / max size gap to the best choice:    {statistics.mean(gaps):.2f} / {max(gaps)}")


if __name__ == "__main__":
    main()
