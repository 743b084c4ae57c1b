"""Formula trees in negational normal form.

A :class:`FormulaTree` is an arena of nodes addressed by integer ids.  Every
node knows its parent, so rewrites are done in place by local surgery:
:meth:`FormulaTree.replace` swaps a subtree for a detached one and then
re-normalizes the path towards the root (constant absorption, flattening of
same-kind children, lifting of single children).  Detached subtrees are
flagged dead and never revisited.
"""

from __future__ import annotations

import enum
from typing import Iterable, Iterator, Mapping, NamedTuple, Optional, Union


class UsageError(ValueError):
    """A library function was called outside its contract."""


class Literal(NamedTuple):
    var: str
    positive: bool = True

    def __invert__(self) -> "Literal":
        return Literal(self.var, not self.positive)

    def __str__(self) -> str:
        return self.var if self.positive else "!" + self.var


def literal_order(lit: Literal) -> tuple:
    """Sort key: positive literals first, then by variable name."""
    return (not lit.positive, lit.var)


class Kind(enum.Enum):
    LIT = "lit"
    AND = "and"
    OR = "or"
    TRUE = "true"
    FALSE = "false"


CONSTANTS = (Kind.TRUE, Kind.FALSE)


def identity_of(kind: Kind) -> Kind:
    """The constant a connective ignores (True for And, False for Or)."""
    return Kind.TRUE if kind is Kind.AND else Kind.FALSE


def absorber_of(kind: Kind) -> Kind:
    return Kind.FALSE if kind is Kind.AND else Kind.TRUE


class Node:
    __slots__ = ("kind", "lit", "children", "parent", "dead")

    def __init__(self, kind: Kind, lit: Optional[Literal] = None, children=None):
        self.kind = kind
        self.lit = lit
        self.children: list[int] = children if children is not None else []
        self.parent: Optional[int] = None
        self.dead = False

    def __repr__(self) -> str:
        if self.kind is Kind.LIT:
            return f"Node({self.lit})"
        return f"Node({self.kind.value}, {self.children})"


# Nested description accepted by FormulaTree.build: "p" / "!p", True / False,
# or ("&" | "|", child, child, ...).
Nested = Union[str, bool, tuple]


class FormulaTree:
    """Arena-backed formula tree with parent links.

    ``visits`` counts node touches made by algorithmic traversals (deltas,
    sweeps, copies, re-normalization).  Observers such as :meth:`size`,
    :meth:`evaluate` and printing do not count.
    """

    def __init__(self) -> None:
        self.nodes: list[Node] = []
        self.root: Optional[int] = None
        self.revision = 0
        self.visits = 0

    # -- construction -------------------------------------------------

    def _new(self, node: Node) -> int:
        self.nodes.append(node)
        return len(self.nodes) - 1

    def add_literal(self, lit: Literal) -> int:
        return self._new(Node(Kind.LIT, lit))

    def add_const(self, value: bool) -> int:
        return self._new(Node(Kind.TRUE if value else Kind.FALSE))

    def add_raw(self, kind: Kind, children: Iterable[int]) -> int:
        """Create a connective without any normalization."""
        kids = list(children)
        nid = self._new(Node(kind, children=kids))
        for c in kids:
            self.nodes[c].parent = nid
        return nid

    def join(self, kind: Kind, children: Iterable[int]) -> int:
        """Build a normalized connective over detached, normalized children.

        May return one of the children (single survivor), a constant node, or
        a fresh connective.  Same-kind children are spliced.
        """
        outcome = self._reduce(kind, list(children))
        if isinstance(outcome, list):
            nid = self._new(Node(kind, children=outcome))
            for c in outcome:
                self.nodes[c].parent = nid
            return nid
        self.nodes[outcome].parent = None
        return outcome

    def _reduce(self, kind: Kind, children: list[int]):
        """Normalize a child list for ``kind``.

        Returns the surviving child list (length >= 2), or the id of the
        single node that should stand in for the connective.
        """
        absorber = absorber_of(kind)
        kept: list[int] = []
        for i, c in enumerate(children):
            self.visits += 1
            node = self.nodes[c]
            if node.kind is absorber:
                for other in children[:i] + children[i + 1:]:
                    self._kill(other)
                for other in kept:
                    self._kill(other)
                return c
            if node.kind in CONSTANTS:
                node.dead = True
            elif node.kind is kind:
                node.dead = True
                kept.extend(node.children)
                self.visits += len(node.children)
            else:
                kept.append(c)
        if not kept:
            return self.add_const(kind is Kind.AND)
        if len(kept) == 1:
            return kept[0]
        return kept

    @classmethod
    def build(cls, shape: Nested, normalize: bool = True) -> "FormulaTree":
        """Build a tree from a nested description (mostly for tests).

        >>> str(FormulaTree.build(("&", "p", ("&", "q", "!r"))))
        'p & q & !r'
        """
        tree = cls()

        def go(s) -> int:
            if isinstance(s, bool):
                return tree.add_const(s)
            if isinstance(s, str):
                if s.startswith("!"):
                    return tree.add_literal(Literal(s[1:], False))
                return tree.add_literal(Literal(s, True))
            op, *args = s
            kind = {"&": Kind.AND, "|": Kind.OR}[op]
            kids = [go(a) for a in args]
            return tree.join(kind, kids) if normalize else tree.add_raw(kind, kids)

        tree.root = go(shape)
        return tree

    # -- inspection ---------------------------------------------------

    def kind(self, nid: int) -> Kind:
        return self.nodes[nid].kind

    def children(self, nid: int) -> list[int]:
        return self.nodes[nid].children

    def parent(self, nid: int) -> Optional[int]:
        return self.nodes[nid].parent

    def _check(self, nid: int) -> Node:
        if not isinstance(nid, int) or not 0 <= nid < len(self.nodes):
            raise UsageError(f"unknown node id {nid!r}")
        node = self.nodes[nid]
        if node.dead:
            raise UsageError(f"node {nid} is no longer part of the tree")
        return node

    @property
    def constant(self) -> Optional[bool]:
        """True/False if the whole tree is a constant, else None."""
        k = self.nodes[self.root].kind
        if k is Kind.TRUE:
            return True
        if k is Kind.FALSE:
            return False
        return None

    def preorder(self, nid: Optional[int] = None) -> Iterator[int]:
        stack = [self.root if nid is None else nid]
        while stack:
            n = stack.pop()
            yield n
            stack.extend(reversed(self.nodes[n].children))

    def postorder(self, nid: Optional[int] = None) -> list[int]:
        order = list(self.preorder(nid))
        order.reverse()
        return order

    def size(self, nid: Optional[int] = None) -> int:
        """Number of nodes in the subtree; a literal counts once."""
        if nid is not None:
            self._check(nid)
        return sum(1 for _ in self.preorder(nid))

    def literal_nodes(self, nid: Optional[int] = None) -> Iterator[int]:
        for n in self.preorder(nid):
            if self.nodes[n].kind is Kind.LIT:
                yield n

    def variables(self, nid: Optional[int] = None) -> set[str]:
        return {self.nodes[n].lit.var for n in self.literal_nodes(nid)}

    def occurrences(self, nid: Optional[int] = None) -> int:
        return sum(1 for _ in self.literal_nodes(nid))

    def is_alive(self, nid: int) -> bool:
        return not self.nodes[nid].dead

    def path_to(self, nid: int) -> list[int]:
        """Child-index path from the root down to ``nid``."""
        path = []
        while self.nodes[nid].parent is not None:
            p = self.nodes[nid].parent
            path.append(self.nodes[p].children.index(nid))
            nid = p
        path.reverse()
        return path

    def evaluate(self, assignment: Mapping[str, bool], nid: Optional[int] = None) -> bool:
        def go(n: int) -> bool:
            node = self.nodes[n]
            k = node.kind
            if k is Kind.LIT:
                try:
                    value = assignment[node.lit.var]
                except KeyError:
                    raise UsageError(f"assignment has no value for {node.lit.var!r}") from None
                return value if node.lit.positive else not value
            if k is Kind.TRUE:
                return True
            if k is Kind.FALSE:
                return False
            if k is Kind.AND:
                return all(go(c) for c in node.children)
            return any(go(c) for c in node.children)

        return go(self.root if nid is None else nid)

    def canonical(self, nid: Optional[int] = None):
        """Permutation-insensitive structural key."""
        node = self.nodes[self.root if nid is None else nid]
        if node.kind is Kind.LIT:
            return (0, node.lit.var, not node.lit.positive)
        if node.kind in CONSTANTS:
            return (1, node.kind.value)
        tag = 2 if node.kind is Kind.AND else 3
        return (tag,) + tuple(sorted(self.canonical(c) for c in node.children))

    def check_invariants(self) -> None:
        """Raise AssertionError if parent links, alternation or arity are broken."""
        root = self.nodes[self.root]
        assert root.parent is None, "root has a parent"
        if root.kind in CONSTANTS:
            return
        for n in self.preorder():
            node = self.nodes[n]
            assert not node.dead, f"dead node {n} reachable"
            if node.kind is Kind.LIT:
                continue
            assert node.kind in (Kind.AND, Kind.OR), f"constant {n} inside tree"
            assert len(node.children) >= 2, f"node {n} has arity {len(node.children)}"
            for c in node.children:
                child = self.nodes[c]
                assert child.parent == n, f"bad parent link {c} -> {child.parent}, expected {n}"
                assert child.kind is not node.kind, f"alternation broken at {n}/{c}"

    # -- surgery ------------------------------------------------------

    def _kill(self, nid: int) -> None:
        stack = [nid]
        while stack:
            n = stack.pop()
            self.visits += 1
            node = self.nodes[n]
            node.dead = True
            stack.extend(node.children)

    def replace(self, old: int, new: int) -> None:
        """Put detached subtree ``new`` where ``old`` is, then re-normalize upward.

        ``old``'s subtree is discarded.
        """
        parent = self.nodes[old].parent
        self._kill(old)
        self.revision += 1
        self.nodes[new].parent = parent
        if parent is None:
            self.root = new
            return
        siblings = self.nodes[parent].children
        siblings[siblings.index(old)] = new
        self._settle(parent)

    def _settle(self, nid: int) -> None:
        while True:
            node = self.nodes[nid]
            outcome = self._reduce(node.kind, node.children)
            if isinstance(outcome, list):
                node.children = outcome
                for c in outcome:
                    self.nodes[c].parent = nid
                return
            node.dead = True
            parent = node.parent
            self.nodes[outcome].parent = parent
            if parent is None:
                self.root = outcome
                return
            siblings = self.nodes[parent].children
            siblings[siblings.index(nid)] = outcome
            nid = parent

    def copy_into(self, nid: int, dst: "FormulaTree",
                  subst: Optional[Mapping[str, bool]] = None) -> int:
        """Copy subtree ``nid`` into ``dst`` (may be ``self``), substituting
        constants for the variables in ``subst``.  The copy is normalized and
        detached; its id in ``dst`` is returned."""

        def go(n: int) -> int:
            self.visits += 1
            node = self.nodes[n]
            k = node.kind
            if k is Kind.LIT:
                if subst and node.lit.var in subst:
                    return dst.add_const(subst[node.lit.var] == node.lit.positive)
                return dst.add_literal(node.lit)
            if k in CONSTANTS:
                return dst.add_const(k is Kind.TRUE)
            return dst.join(k, [go(c) for c in node.children])

        return go(nid)

    def copy(self) -> "FormulaTree":
        out = FormulaTree()
        out.root = self.copy_into(self.root, out)
        return out

    def __str__(self) -> str:
        from nvld.syntax import print_formula

        return print_formula(self)


# -- module-level operations -----------------------------------------


def size(tree: FormulaTree, node: Optional[int] = None) -> int:
    return tree.size(node)


def normalize(tree: FormulaTree) -> FormulaTree:
    """Restore alternation and arity and eliminate constants, in place.

    Surviving children keep their relative order; spliced children take the
    place of the node they came from.
    """

    def go(n: int) -> int:
        node = tree.nodes[n]
        if node.kind not in (Kind.AND, Kind.OR):
            node.parent = None
            return n
        kids = [go(c) for c in node.children]
        node.dead = True
        return tree.join(node.kind, kids)

    tree.root = go(tree.root)
    tree.nodes[tree.root].parent = None
    tree.revision += 1
    return tree


def simplify_constants(tree: FormulaTree) -> FormulaTree:
    """Drop neutral constants and collapse absorbed connectives.

    Constant elimination can leave single-child connectives behind, so this
    runs the full normalization; a constant survives only as the whole tree.
    """
    return normalize(tree)


def remove_child(tree: FormulaTree, child: int, denotes: Optional[bool] = None) -> FormulaTree:
    """Detach ``child`` from its parent and lift a lone remaining sibling.

    ``denotes`` is the constant the removed subtree stands for.  The default
    is the parent's identity (plain structural removal); passing the
    absorbing constant collapses the parent instead.
    """
    tree._check(child)
    parent = tree.nodes[child].parent
    if parent is None:
        raise UsageError("cannot remove the root")
    if denotes is None:
        denotes = tree.nodes[parent].kind is Kind.AND
    tree.replace(child, tree.add_const(denotes))
    return tree


def evaluate(tree: FormulaTree, assignment: Mapping[str, bool]) -> bool:
    return tree.evaluate(assignment)
