"""Implicate (d0) and implicant (d1) literal sets for every node.

For a literal L both sets are {L}.  A disjunction intersects its children's
d0 sets and unions their d1 sets; a conjunction does the opposite.  Every
literal in d0(n) is entailed by the subtree at n, and every literal in d1(n)
entails it; the recursion is sound but not complete.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from nvld.formula import FormulaTree, Kind, Literal, UsageError, literal_order

LiteralSet = frozenset  # frozenset[Literal]

GUARDS = ("sibling", "paper")


@dataclass
class DeltaSets:
    tree: FormulaTree
    revision: int
    d0: dict
    d1: dict

    @property
    def stale(self) -> bool:
        return self.revision != self.tree.revision

    def __getitem__(self, nid: int) -> tuple[frozenset, frozenset]:
        return self.d0[nid], self.d1[nid]

    def ensure_fresh(self) -> None:
        if self.stale:
            raise UsageError("literal sets are stale: the tree changed after they were computed")


def compute_delta(tree: FormulaTree) -> DeltaSets:
    d0: dict[int, frozenset] = {}
    d1: dict[int, frozenset] = {}
    for n in tree.postorder():
        tree.visits += 1
        node = tree.nodes[n]
        if node.kind is Kind.LIT:
            d0[n] = d1[n] = frozenset((node.lit,))
            continue
        if node.kind not in (Kind.AND, Kind.OR):
            raise UsageError("literal sets need a constant-free tree")
        kids = node.children
        unions = (d0, d1) if node.kind is Kind.AND else (d1, d0)
        joined = frozenset().union(*(unions[0][c] for c in kids))
        met = unions[1][kids[0]].intersection(*(unions[1][c] for c in kids[1:]))
        if node.kind is Kind.AND:
            d0[n], d1[n] = joined, met
        else:
            d1[n], d0[n] = joined, met
    return DeltaSets(tree, tree.revision, d0, d1)


def complementary_pair(s: Iterable[Literal]) -> Optional[str]:
    """Least variable that appears in ``s`` with both polarities.

    >>> complementary_pair({Literal("p"), Literal("p", False), Literal("r")})
    'p'
    """
    pos = {lit.var for lit in s if lit.positive}
    both = [lit.var for lit in s if not lit.positive and lit.var in pos]
    return min(both) if both else None


def _absorption_witness(deltas: DeltaSets, parent: int, child: int,
                        guard: str = "sibling") -> Optional[Literal]:
    tree = deltas.tree
    kind = tree.nodes[parent].kind
    if kind is Kind.AND:
        own, other = deltas.d0, deltas.d1
    elif kind is Kind.OR:
        own, other = deltas.d1, deltas.d0
    else:
        return None
    shared = own[parent] & other[child]
    if guard == "sibling":
        siblings = [s for s in tree.nodes[parent].children if s != child]
        shared = {lit for lit in shared if any(lit in own[s] for s in siblings)}
    if not shared:
        return None
    return min(shared, key=literal_order)


def absorption_witness(deltas: DeltaSets, parent: int, child: int,
                       guard: str = "sibling") -> Optional[Literal]:
    """A literal showing that ``child`` is redundant under ``parent``.

    Under a conjunction the literal must be in d0(parent) and d1(child); under
    a disjunction in d1(parent) and d0(child).  With ``guard="sibling"`` it
    must also be contributed by a sibling, so that C & (C | D) = C still
    justifies dropping the child once it is gone.
    """
    deltas.ensure_fresh()
    if guard not in GUARDS:
        raise UsageError(f"unknown guard {guard!r}")
    if deltas.tree.nodes[child].parent != parent:
        raise UsageError(f"node {child} is not a child of {parent}")
    return _absorption_witness(deltas, parent, child, guard)


def _subset_prune(deltas: DeltaSets, parent: int, child: int) -> bool:
    d0c, d1c = deltas.d0[child], deltas.d1[child]
    return bool((d1c and d1c <= deltas.d0[parent]) or (d0c and d0c <= deltas.d1[parent]))


def subset_prune(deltas: DeltaSets, parent: int, child: int) -> bool:
    """The subset test, read literally with non-empty sets.

    Not sound in general; the solver only consults it when asked to.
    """
    deltas.ensure_fresh()
    if deltas.tree.nodes[child].parent != parent:
        raise UsageError(f"node {child} is not a child of {parent}")
    return _subset_prune(deltas, parent, child)
