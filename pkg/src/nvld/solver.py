"""The transformational validity procedure.

Each iteration runs, in order:

1. pure-variable elimination (to a fixpoint),
2. pruning with the literal sets,
3. single assignment on strict minimal trees,
4. unit expansion ``B -> L | F(B, v)`` / ``B -> L & T(B, v)``,
5. selection of the variable with least footprint minus weight,
6. or 7. splitting it inside its minimal tree (conjunctive or disjunctive).

Any step may end the run.  Steps 2 and 4 preserve equivalence, the others
preserve validity only.  Splitting removes a variable, so every iteration
that does not stop shrinks the variable count and the loop terminates.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Union

from nvld.delta import GUARDS, _absorption_witness, _subset_prune, complementary_pair, compute_delta
from nvld.formula import FormulaTree, Kind, Literal, UsageError, identity_of, literal_order
from nvld.minimal import MinimalTreeReport, Occurrences, TreeClass, select_variable, analyze_variable
from nvld.nnf import to_nnf
from nvld.oracle import OracleBudgetError, TruthTable
from nvld.syntax import Ast, parse_formula


class ConfigError(ValueError):
    pass


class SolverError(RuntimeError):
    """An internal invariant of the procedure was violated."""


class Verdict(enum.Enum):
    VALID = "valid"
    NOT_VALID = "not_valid"

    def __str__(self) -> str:
        return "VALID" if self is Verdict.VALID else "NOT VALID"


class Rule(enum.Enum):
    PURE = "Pure"
    DELTA_COMPLEMENT = "DeltaComplement"
    ABSORPTION = "Absorption"
    SUBSET_PRUNE = "SubsetPrune"
    STRICT_ASSIGN = "StrictAssign"
    UNIT_EXPAND = "UnitExpand"
    SELECT = "Select"
    SPLIT_CONJ = "SplitConj"
    SPLIT_DISJ = "SplitDisj"
    CONSTANT_COLLAPSE = "ConstantCollapse"


@dataclass
class SolverConfig:
    subset_rule: bool = False
    intersection_guard: str = "sibling"
    checked: bool = False
    max_oracle_vars: int = 20

    def __post_init__(self):
        if self.intersection_guard not in GUARDS:
            raise ConfigError(f"intersection guard must be one of {GUARDS}")
        if self.max_oracle_vars < 0:
            raise ConfigError("max_oracle_vars must be non-negative")


@dataclass
class TraceEvent:
    iteration: int
    step: int
    rule: Rule
    path: list
    var: Optional[str]
    size_before: int
    size_after: int
    detail: str = ""
    violation: bool = False

    def to_json(self) -> dict:
        return {
            "iter": self.iteration,
            "step": self.step,
            "rule": self.rule.value,
            "path": self.path,
            "var": self.var,
            "size_before": self.size_before,
            "size_after": self.size_after,
            "detail": self.detail,
        }


@dataclass
class IterationStats:
    iteration: int
    variables: int
    occurrences: int
    size: int
    visits: int = 0

    @property
    def measure(self) -> tuple[int, int, int]:
        return (self.variables, self.occurrences, self.size)


@dataclass
class SolveResult:
    verdict: Verdict
    trace: list
    iterations: int
    sizes: list  # size at the start of every iteration, then the final size
    peak_size: int
    stats: list = field(default_factory=list)  # IterationStats per iteration
    violations: list = field(default_factory=list)

    def __iter__(self):
        # allows ``verdict, trace = solve(...)``
        return iter((self.verdict, self.trace))

    def rule_counts(self) -> Counter:
        return Counter(ev.rule.value for ev in self.trace)

    def summary(self) -> dict:
        return {"verdict": self.verdict.value, "iterations": self.iterations,
                "peak_size": self.peak_size}


def _measure(tree: FormulaTree) -> tuple[int, int, int]:
    if tree.constant is not None:
        return (0, 0, 1)
    return (len(tree.variables()), tree.occurrences(), tree.size())


class _Checker:
    """Truth-table guard run after every rewrite in checked mode."""

    def __init__(self, tree: FormulaTree, budget: int):
        try:
            self.table = TruthTable(tree.variables(), budget)
        except OracleBudgetError as e:
            raise ConfigError(f"checked mode: {e}") from None
        self.bits = self.table.of_tree(tree)
        self.valid = self.bits == self.table.full

    def check(self, tree: FormulaTree, equivalence: bool) -> list[str]:
        bits = self.table.of_tree(tree)
        problems = []
        if equivalence and bits != self.bits:
            problems.append("equivalence broken")
        if (bits == self.table.full) != self.valid:
            problems.append("validity changed")
        self.bits = bits
        return problems


class Solver:
    """Runs the procedure on one tree, which it rewrites in place.

    The step methods can be driven one at a time (the tests do); they return
    a :class:`Verdict` when the run is decided and otherwise whether the tree
    changed.
    """

    def __init__(self, tree: FormulaTree, config: Optional[SolverConfig] = None):
        self.tree = tree
        self.cfg = config or SolverConfig()
        self.trace: list[TraceEvent] = []
        self.violations: list[TraceEvent] = []
        self.iteration = 0
        self.stats: list[IterationStats] = []
        self.sizes: list[int] = []
        self.peak = tree.size()
        self.checker = _Checker(tree, self.cfg.max_oracle_vars) if self.cfg.checked else None

    # -- bookkeeping --------------------------------------------------

    def terminal(self) -> Optional[Verdict]:
        c = self.tree.constant
        if c is not None:
            return Verdict.VALID if c else Verdict.NOT_VALID
        if self.tree.kind(self.tree.root) is Kind.LIT:
            return Verdict.NOT_VALID
        return None

    def _record(self, step: int, rule: Rule, path: list, before: int,
                var: Optional[str], detail: str, equivalence: bool) -> TraceEvent:
        after = self.tree.size()
        ev = TraceEvent(self.iteration, step, rule, path, var, before, after, detail)
        self.trace.append(ev)
        self.peak = max(self.peak, after)
        if self.checker is not None:
            problems = self.checker.check(self.tree, equivalence)
            if problems:
                ev.violation = True
                ev.detail = f"{detail}; VIOLATION: {', '.join(problems)}".lstrip("; ")
                self.violations.append(ev)
        if self.tree.constant is not None:
            self.trace.append(TraceEvent(self.iteration, step, Rule.CONSTANT_COLLAPSE, [], None,
                                         after, after, str(self.tree.constant).lower()))
        return ev

    def _rewrite(self, step: int, rule: Rule, node: int, new: int,
                 var: Optional[str] = None, detail: str = "",
                 equivalence: bool = False) -> TraceEvent:
        path = self.tree.path_to(node)
        before = self.tree.size()
        self.tree.replace(node, new)
        return self._record(step, rule, path, before, var, detail, equivalence)

    def _special(self, node: int, v: str, value: bool) -> int:
        return self.tree.copy_into(node, self.tree, {v: value})

    # -- step 1 -------------------------------------------------------

    def step1_pure(self) -> Union[Verdict, bool]:
        """Eliminate variables occurring with one polarity only.

        Setting such a variable so that its literals become false keeps the
        formula's validity.  Every literal is replaced by False and the
        constant propagates: out of disjunctions, collapsing conjunctions.
        Repeated until no pure variable is left, since removals create new
        ones.
        """
        tree = self.tree
        changed = False
        while True:
            verdict = self.terminal()
            if verdict is not None:
                return verdict
            census: dict[str, list] = {}
            for n in tree.preorder():
                tree.visits += 1
                node = tree.nodes[n]
                if node.kind is Kind.LIT:
                    entry = census.setdefault(node.lit.var, [0, 0, []])
                    entry[0 if node.lit.positive else 1] += 1
                    entry[2].append(n)
            pure = sorted(v for v, (p, q, _) in census.items() if p == 0 or q == 0)
            if not pure:
                return changed
            for v in pure:
                lits = [n for n in census[v][2] if tree.is_alive(n)]
                if not lits:
                    continue
                path = tree.path_to(lits[0])
                before = tree.size()
                positive = tree.nodes[lits[0]].lit.positive
                for n in lits:
                    if tree.is_alive(n):
                        tree.replace(n, tree.add_const(False))
                self._record(1, Rule.PURE, path, before, v,
                             f"{v}={'false' if positive else 'true'}", False)
                changed = True
                if self.terminal() is not None:
                    break

    # -- step 2 -------------------------------------------------------

    def step2_delta_prune(self) -> Union[Verdict, bool]:
        """One pre-order sweep of literal-set pruning.

        A conjunction whose d0 holds both polarities of a variable is false; a
        disjunction whose d1 does is true.  A child that a sibling already
        implies (under a conjunction) or is implied by (under a disjunction)
        is dropped.  The sets are computed once per sweep; every rewrite here
        preserves equivalence, so they stay sound for the surviving nodes.
        """
        tree, cfg = self.tree, self.cfg
        verdict = self.terminal()
        if verdict is not None:
            return verdict
        deltas = compute_delta(tree)
        changed = False
        for b in list(tree.preorder()):
            tree.visits += 1
            node = tree.nodes[b]
            if node.dead or node.kind is Kind.LIT:
                continue
            is_and = node.kind is Kind.AND
            var = complementary_pair(deltas.d0[b] if is_and else deltas.d1[b])
            if var is not None:
                self._rewrite(2, Rule.DELTA_COMPLEMENT, b, tree.add_const(not is_and), var,
                              f"{'d0' if is_and else 'd1'} has {var} and !{var}", True)
                changed = True
                verdict = self.terminal()
                if verdict is not None:
                    return verdict
                continue
            if cfg.subset_rule:
                for c in node.children:
                    tree.visits += 1
                    if _subset_prune(deltas, b, c):
                        self._rewrite(2, Rule.SUBSET_PRUNE, b, tree.add_const(not is_and), None,
                                      f"child at {tree.path_to(c)}", True)
                        changed = True
                        break
                if node.dead:
                    verdict = self.terminal()
                    if verdict is not None:
                        return verdict
                    continue
            for c in list(node.children):
                tree.visits += 1
                if node.dead:
                    break
                w = _absorption_witness(deltas, b, c, cfg.intersection_guard)
                if w is not None:
                    self._rewrite(2, Rule.ABSORPTION, c, tree.add_const(is_and), w.var,
                                  f"witness {w}", True)
                    changed = True
            verdict = self.terminal()
            if verdict is not None:
                return verdict
        return changed

    # -- step 3 -------------------------------------------------------

    def step3_strict_assign(self) -> Union[Verdict, bool]:
        """Settle variables whose minimal tree is strict with one assignment.

        A conjunctive strict tree implies one of v's literals, so one of its
        two specializations is false and it goes away.  A disjunctive strict
        tree is implied by a literal of v, so the specialization making that
        literal true is true and only the other one remains.
        """
        tree = self.tree
        changed = False
        occ = Occurrences(tree)
        deltas = compute_delta(tree)
        for v in occ.variables():
            verdict = self.terminal()
            if verdict is not None:
                return verdict
            if occ.revision != tree.revision:
                occ = Occurrences(tree)
                deltas = compute_delta(tree)
            if v not in occ.counts[tree.root]:
                continue
            report = analyze_variable(tree, deltas, v, occ)
            if report.cls is not TreeClass.STRICT:
                continue
            b = report.root
            lit = report.strict_literal
            if tree.kind(b) is Kind.AND:
                new = tree.add_const(False)
                detail = f"conjunction implies {lit}"
            else:
                new = self._special(b, v, not lit.positive)
                detail = f"{lit} implies disjunction"
            self._rewrite(3, Rule.STRICT_ASSIGN, b, new, v, detail)
            changed = True
        return self.terminal() or changed

    # -- step 4 -------------------------------------------------------

    def step4_unit_expand(self) -> Union[Verdict, bool]:
        """Pull a unit literal out of a subtree: ``B -> L | F(B, v)`` and friends.

        Applies where L is in d1(B) (disjunction) or d0(B) (conjunction) and
        v occurs more than once in B.  One rewrite per node, candidates taken
        positive first, then by name; rewritten subtrees are not revisited.
        """
        tree = self.tree
        verdict = self.terminal()
        if verdict is not None:
            return verdict
        deltas = compute_delta(tree)
        occ = Occurrences(tree)
        watermark = len(tree.nodes)
        changed = False
        for b in list(tree.preorder()):
            tree.visits += 1
            node = tree.nodes[b]
            if b >= watermark or node.dead or node.kind is Kind.LIT:
                continue
            is_or = node.kind is Kind.OR
            units = deltas.d1[b] if is_or else deltas.d0[b]
            for lit in sorted(units, key=literal_order):
                tree.visits += 1
                if sum(occ.counts[b].get(lit.var, (0, 0))) < 2:
                    continue
                # Or: v | F(B,v), !v | T(B,v);  And: v & T(B,v), !v & F(B,v)
                value = lit.positive != is_or
                new = tree.join(node.kind, [tree.add_literal(lit), self._special(b, lit.var, value)])
                self._rewrite(4, Rule.UNIT_EXPAND, b, new, lit.var, f"unit {lit}", True)
                changed = True
                break
            verdict = self.terminal()
            if verdict is not None:
                return verdict
        return changed

    # -- steps 5-7 ----------------------------------------------------

    def step5_select(self) -> MinimalTreeReport:
        tree = self.tree
        report = select_variable(tree, compute_delta(tree))
        size = tree.size()
        self.trace.append(TraceEvent(
            self.iteration, 5, Rule.SELECT, tree.path_to(report.root), report.var, size, size,
            f"footprint={report.footprint} weight={report.weight} class={report.cls.value}"))
        return report

    def _check_report(self, report: MinimalTreeReport, kind: Kind) -> None:
        if report.revision != self.tree.revision:
            raise UsageError("minimal-tree report is stale")
        if self.tree.kind(report.root) is not kind:
            raise UsageError(f"minimal tree of {report.var} is not a {kind.value}")

    def step6_split_conjunction(self, report: MinimalTreeReport) -> FormulaTree:
        """Replace conjunctive minimal tree B by T(B,v) & F(B,v), shared.

        Children without v appear once.  A child with v of one polarity only
        contributes the stronger of its two specializations (T for negative,
        F for positive occurrences), since it implies the other; mixed
        children contribute both.
        """
        self._check_report(report, Kind.AND)
        tree, v, b = self.tree, report.var, report.root
        kids = []
        for c, (pos, neg) in zip(list(tree.children(b)), report.census):
            if pos + neg == 0:
                kids.append(tree.copy_into(c, tree))
            elif neg == 0:
                kids.append(self._special(c, v, False))
            elif pos == 0:
                kids.append(self._special(c, v, True))
            else:
                kids.append(self._special(c, v, True))
                kids.append(self._special(c, v, False))
        new = tree.join(Kind.AND, kids)
        self._rewrite(6, Rule.SPLIT_CONJ, b, new, v, report.cls.value)
        return tree

    def step7_split_disjunction(self, report: MinimalTreeReport) -> FormulaTree:
        """Replace disjunctive minimal tree B by T(B,v) & F(B,v).

        Children without v are factored out:
        ``B1 | ... | Bk | (T' & F')`` where T', F' specialize the rest.
        """
        self._check_report(report, Kind.OR)
        tree, v, b = self.tree, report.var, report.root
        free, ts, fs = [], [], []
        for c, (pos, neg) in zip(list(tree.children(b)), report.census):
            if pos + neg == 0:
                free.append(tree.copy_into(c, tree))
            else:
                ts.append(self._special(c, v, True))
                fs.append(self._special(c, v, False))
        both = tree.join(Kind.AND, [tree.join(Kind.OR, ts), tree.join(Kind.OR, fs)])
        new = tree.join(Kind.OR, free + [both]) if free else both
        self._rewrite(7, Rule.SPLIT_DISJ, b, new, v, report.cls.value)
        return tree

    # -- driver -------------------------------------------------------

    def iterate(self) -> Optional[Verdict]:
        """Run one iteration; return the verdict if the run is decided."""
        tree = self.tree
        self.iteration += 1
        start = IterationStats(self.iteration, *_measure(tree))
        visits0 = tree.visits
        self.stats.append(start)
        self.sizes.append(start.size)

        verdict = None
        for step in (self.step1_pure, self.step2_delta_prune,
                     self.step3_strict_assign, self.step4_unit_expand):
            out = step()
            if isinstance(out, Verdict):
                verdict = out
                break
        if verdict is None:
            report = self.step5_select()
            if tree.kind(report.root) is Kind.AND:
                self.step6_split_conjunction(report)
            else:
                self.step7_split_disjunction(report)
            verdict = self.terminal()
        start.visits = tree.visits - visits0

        if verdict is None:
            end = _measure(tree)
            if not end < start.measure or end[0] >= start.variables:
                raise SolverError(
                    f"iteration {self.iteration} did not shrink the formula: "
                    f"{start.measure} -> {end}")
        return verdict

    def run(self) -> SolveResult:
        verdict = self.terminal()
        while verdict is None:
            verdict = self.iterate()
        self.sizes.append(self.tree.size())
        return SolveResult(verdict, self.trace, self.iteration, self.sizes, self.peak,
                           self.stats, self.violations)


def solve(formula: Union[Ast, FormulaTree, str],
          config: Optional[SolverConfig] = None) -> SolveResult:
    """Decide validity of ``formula`` (text, AST or NNF tree).

    >>> solve("p | !p").verdict
    <Verdict.VALID: 'valid'>
    """
    if isinstance(formula, str):
        formula = parse_formula(formula)
    tree = formula.copy() if isinstance(formula, FormulaTree) else to_nnf(formula)
    return Solver(tree, config).run()


def decide_satisfiable(formula: Union[Ast, str],
                       config: Optional[SolverConfig] = None) -> tuple[bool, SolveResult]:
    """A is satisfiable iff !A is not valid."""
    from nvld.syntax import Not

    if isinstance(formula, str):
        formula = parse_formula(formula)
    result = solve(Not(formula), config)
    return result.verdict is Verdict.NOT_VALID, result
