"""Per-variable analysis: minimal tree, classification, footprint, weight."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

from nvld.delta import DeltaSets
from nvld.formula import FormulaTree, Kind, Literal, UsageError


class TreeClass(enum.Enum):
    STRICT = "strict"
    COMPLETE = "complete"
    SEMI_COMPLETE = "semi-complete"
    INCOMPLETE = "incomplete"


class Occurrences:
    """Subtree sizes and per-variable (positive, negative) literal counts.

    Built in one post-order pass; each node merges at most r entries per
    child, so the cost is O(r*s).
    """

    def __init__(self, tree: FormulaTree):
        self.tree = tree
        self.revision = tree.revision
        self.sizes: dict[int, int] = {}
        self.counts: dict[int, dict[str, tuple[int, int]]] = {}
        self.lit_parents: dict[str, dict[int, None]] = {}
        for n in tree.postorder():
            tree.visits += 1
            node = tree.nodes[n]
            if node.kind is Kind.LIT:
                self.sizes[n] = 1
                self.counts[n] = {node.lit.var: (1, 0) if node.lit.positive else (0, 1)}
                if node.parent is not None:
                    self.lit_parents.setdefault(node.lit.var, {})[node.parent] = None
                continue
            total = 1
            merged: dict[str, tuple[int, int]] = {}
            for c in node.children:
                total += self.sizes[c]
                for v, (p, q) in self.counts[c].items():
                    tree.visits += 1
                    a, b = merged.get(v, (0, 0))
                    merged[v] = (a + p, b + q)
            self.sizes[n] = total
            self.counts[n] = merged

    def total(self, v: str) -> tuple[int, int]:
        return self.counts[self.tree.root].get(v, (0, 0))

    def variables(self) -> list[str]:
        return sorted(self.counts[self.tree.root])


@dataclass
class MinimalTreeReport:
    var: str
    root: int
    pos_count: int
    neg_count: int
    census: list = field(default_factory=list)  # (pos, neg) per child of root
    cls: TreeClass = TreeClass.INCOMPLETE
    polarity: Optional[bool] = None  # literal polarity when strict
    footprint: int = 0
    weight: int = 0
    revision: int = -1

    @property
    def score(self) -> int:
        return self.footprint - self.weight

    @property
    def strict_literal(self) -> Optional[Literal]:
        if self.cls is not TreeClass.STRICT:
            return None
        return Literal(self.var, self.polarity)


def minimal_root(tree: FormulaTree, occ: Occurrences, v: str) -> int:
    """Deepest node containing every occurrence of ``v``.

    A lone occurrence would make this the literal itself; its parent is used
    instead so that the minimal tree is always a connective when one exists.
    """
    total = sum(occ.total(v))
    if total == 0:
        raise UsageError(f"variable {v!r} does not occur")
    n = tree.root
    while tree.nodes[n].kind is not Kind.LIT:
        for c in tree.nodes[n].children:
            tree.visits += 1
            if sum(occ.counts[c].get(v, (0, 0))) == total:
                n = c
                break
        else:
            return n
    parent = tree.nodes[n].parent
    return n if parent is None else parent


def analyze_variable(tree: FormulaTree, deltas: DeltaSets, v: str,
                     occ: Optional[Occurrences] = None) -> MinimalTreeReport:
    if occ is None or occ.revision != tree.revision:
        occ = Occurrences(tree)
    pos, neg = occ.total(v)
    root = minimal_root(tree, occ, v)
    node = tree.nodes[root]
    report = MinimalTreeReport(v, root, pos, neg, revision=tree.revision)

    if node.kind is Kind.LIT:
        report.cls, report.polarity = TreeClass.STRICT, node.lit.positive
        report.footprint = 1
        report.weight = 0
        return report

    report.census = [occ.counts[c].get(v, (0, 0)) for c in node.children]
    implied = deltas.d0[root] if node.kind is Kind.AND else deltas.d1[root]
    if Literal(v, True) in implied:
        report.cls, report.polarity = TreeClass.STRICT, True
    elif Literal(v, False) in implied:
        report.cls, report.polarity = TreeClass.STRICT, False
    elif any(p + q == 0 for p, q in report.census):
        report.cls = TreeClass.INCOMPLETE
    elif node.kind is Kind.AND and any(p == 0 or q == 0 for p, q in report.census):
        report.cls = TreeClass.SEMI_COMPLETE
    else:
        report.cls = TreeClass.COMPLETE

    report.footprint = occ.sizes[root] - sum(
        occ.sizes[c] for c, (p, q) in zip(node.children, report.census) if p + q == 0)
    report.weight = _weight(occ, v)
    return report


def _weight(occ: Occurrences, v: str) -> int:
    # Each connective with a literal of v among its children counts once.
    return sum(occ.sizes[p] for p in occ.lit_parents.get(v, ()))


def footprint(tree: FormulaTree, v: str) -> int:
    occ = Occurrences(tree)
    root = minimal_root(tree, occ, v)
    kids = tree.nodes[root].children
    return occ.sizes[root] - sum(occ.sizes[c] for c in kids if v not in occ.counts[c])


def weight(tree: FormulaTree, v: str) -> int:
    occ = Occurrences(tree)
    if v not in occ.counts[tree.root]:
        raise UsageError(f"variable {v!r} does not occur")
    return _weight(occ, v)


def select_variable(tree: FormulaTree, deltas: DeltaSets,
                    occ: Optional[Occurrences] = None) -> MinimalTreeReport:
    """Report for the variable with the least footprint minus weight.

    Ties go to the larger weight, then to the lexicographically least name.
    """
    if tree.constant is not None:
        raise UsageError("a constant tree has no variables")
    if occ is None or occ.revision != tree.revision:
        occ = Occurrences(tree)
    reports = [analyze_variable(tree, deltas, v, occ) for v in occ.variables()]
    return min(reports, key=lambda r: (r.score, -r.weight, r.var))
