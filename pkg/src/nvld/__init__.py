"""Validity checking for propositional formulas by transformation of their
negation normal form, without conversion to clausal form."""

from nvld.delta import DeltaSets, absorption_witness, complementary_pair, compute_delta, subset_prune
from nvld.formula import FormulaTree, Kind, Literal, UsageError, normalize, remove_child, size
from nvld.minimal import MinimalTreeReport, TreeClass, analyze_variable, footprint, select_variable, weight
from nvld.nnf import to_nnf
from nvld.oracle import brute_implicants, brute_implicates, enumerate_small, gen_random_nnf, truth_table_valid
from nvld.solver import (ConfigError, Rule, SolveResult, Solver, SolverConfig, SolverError, TraceEvent,
                         Verdict, solve)
from nvld.specialize import replace_subtree, specialize
from nvld.syntax import ParseError, parse_formula, print_formula

__all__ = [
    "ConfigError", "DeltaSets", "FormulaTree", "Kind", "Literal", "MinimalTreeReport", "ParseError",
    "Rule", "SolveResult", "Solver", "SolverConfig", "SolverError", "TraceEvent", "TreeClass",
    "UsageError", "Verdict", "absorption_witness", "analyze_variable", "brute_implicants",
    "brute_implicates", "complementary_pair", "compute_delta", "enumerate_small", "footprint",
    "gen_random_nnf", "normalize", "parse_formula", "print_formula", "remove_child",
    "replace_subtree", "select_variable", "size", "solve", "specialize", "subset_prune",
    "to_nnf", "truth_table_valid", "weight",
]
