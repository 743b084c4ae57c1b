"""Command line entry point: ``nvld solve | fuzz | bench``.

Exit codes for ``solve``: 0 valid (or satisfiable with ``--satisfiable``),
1 not valid (unsatisfiable), 2 parse error, 3 configuration or internal
error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from nvld.formula import UsageError
from nvld.oracle import gen_random_nnf, truth_table_valid
from nvld.solver import ConfigError, SolverConfig, SolverError, Verdict, solve
from nvld.syntax import Not, ParseError, parse_formula, print_formula

EXIT_VALID, EXIT_NOT_VALID, EXIT_PARSE, EXIT_ERROR = 0, 1, 2, 3


def _on_off(text: str) -> bool:
    if text not in ("on", "off"):
        raise argparse.ArgumentTypeError("expected on or off")
    return text == "on"


def _config(args: argparse.Namespace) -> SolverConfig:
    return SolverConfig(subset_rule=args.subset_rule, intersection_guard=args.intersection_guard,
                        checked=args.checked, max_oracle_vars=args.max_oracle_vars)


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--checked", action="store_true",
                   help="check every rewrite against a truth table")
    p.add_argument("--max-oracle-vars", type=int, default=20)
    p.add_argument("--subset-rule", type=_on_off, default=False, metavar="on|off")
    p.add_argument("--intersection-guard", choices=("sibling", "paper"), default="sibling")


def _write_trace(dest: str, result) -> None:
    lines = [json.dumps(ev.to_json()) for ev in result.trace]
    lines.append(json.dumps(result.summary()))
    text = "\n".join(lines) + "\n"
    if dest == "-":
        sys.stdout.write(text)
    else:
        Path(dest).write_text(text)


def cmd_solve(args: argparse.Namespace) -> int:
    try:
        text = args.expr if args.expr is not None else Path(args.file).read_text()
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    try:
        ast = parse_formula(text)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    if args.satisfiable:
        ast = Not(ast)
    try:
        t0 = time.perf_counter()
        result = solve(ast, _config(args))
        elapsed = time.perf_counter() - t0
    except (ConfigError, UsageError, SolverError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR

    valid = result.verdict is Verdict.VALID
    if args.satisfiable:
        print("UNSATISFIABLE" if valid else "SATISFIABLE")
    else:
        print(result.verdict)
    if args.trace:
        _write_trace(args.trace, result)
    if args.stats:
        stats = {**result.summary(), "sizes": result.sizes, "time_ms": round(elapsed * 1e3, 3),
                 "rules": dict(result.rule_counts()), "violations": len(result.violations)}
        print(json.dumps(stats), file=sys.stderr)
    if args.satisfiable:
        return EXIT_NOT_VALID if valid else EXIT_VALID
    return EXIT_VALID if valid else EXIT_NOT_VALID


def cmd_fuzz(args: argparse.Namespace) -> int:
    cfg = _config(args)
    mismatches = 0
    for seed in range(args.seed, args.seed + args.count):
        ast = gen_random_nnf(seed, args.max_vars, args.max_size)
        try:
            result = solve(ast, cfg)
        except (SolverError, ConfigError) as e:
            print(f"seed {seed}: {e}")
            mismatches += 1
            continue
        expected = truth_table_valid(ast)
        if (result.verdict is Verdict.VALID) != expected or result.violations:
            mismatches += 1
            print(f"seed {seed}: solver {result.verdict}, oracle {expected}, "
                  f"{len(result.violations)} violations: {print_formula(ast)}")
    print(f"{args.count} formulas, {mismatches} mismatches")
    return EXIT_VALID if mismatches == 0 else EXIT_NOT_VALID


def cmd_bench(args: argparse.Namespace) -> int:
    files = sorted(p for p in Path(args.dir).iterdir() if p.is_file())
    out = open(args.output, "w", newline="") if args.output else sys.stdout
    try:
        w = csv.writer(out)
        w.writerow(["file", "verdict", "iterations", "peak_size", "sizes", "time_ms"])
        for f in files:
            try:
                ast = parse_formula(f.read_text())
            except ParseError as e:
                print(f"{f.name}: parse error: {e}", file=sys.stderr)
                continue
            t0 = time.perf_counter()
            result = solve(ast, _config(args))
            ms = (time.perf_counter() - t0) * 1e3
            w.writerow([f.name, result.verdict.value, result.iterations, result.peak_size,
                        " ".join(map(str, result.sizes)), f"{ms:.3f}"])
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_VALID


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nvld", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="decide validity of one formula")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("file", nargs="?", help="file holding the formula")
    src.add_argument("-e", "--expr", help="formula given inline")
    p.add_argument("--trace", metavar="PATH", help="write a JSON-lines trace ('-' for stdout)")
    p.add_argument("--satisfiable", action="store_true",
                   help="decide satisfiability instead (via the negation)")
    p.add_argument("--stats", action="store_true", help="print run statistics to stderr")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("fuzz", help="compare the solver with the truth-table oracle")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--max-vars", type=int, default=8)
    p.add_argument("--max-size", type=int, default=60)
    _add_solver_flags(p)
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("bench", help="solve every file in a directory, CSV to stdout")
    p.add_argument("dir")
    p.add_argument("-o", "--output", help="write the CSV here instead")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
