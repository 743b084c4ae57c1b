"""Print the NNF, trace and size trajectory of the three worked examples."""

from pathlib import Path

from nvld import parse_formula, print_formula, solve, to_nnf

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def main() -> None:
    for path in sorted(CORPUS.glob("example*.txt")):
        ast = parse_formula(path.read_text())
        print(f"== {path.stem}")
        print("nnf:", print_formula(to_nnf(ast)))
        result = solve(ast)
        for ev in result.trace:
            var = ev.var or "-"
            print(f"  it{ev.iteration} step{ev.step} {ev.rule.value:<16} {var:<2} "
                  f"{ev.size_before:>3} -> {ev.size_after:<3} {ev.detail}")
        print(f"verdict: {result.verdict}, sizes {result.sizes}\n")


if __name__ == "__main__":
    main()
