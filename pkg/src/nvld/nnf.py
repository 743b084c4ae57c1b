"""Conversion of general ASTs to flattened NNF trees."""

from __future__ import annotations

from nvld.formula import FormulaTree, Kind, Literal
from nvld.syntax import And, Ast, Iff, Implies, Not, Or, Var


def to_nnf(ast: Ast) -> FormulaTree:
    """Convert ``ast`` to an equivalent NNF tree in one descent.

    Negation is carried down as a flag instead of being rewritten, so every
    AST node is visited once per copy of it in the output.  ``<->`` is
    expanded as ``(!A | B) & (A | !B)``, which visits both operands twice;
    nested equivalences are the only source of size growth.  ``tree.visits``
    ends up holding the descent visits plus the child touches of ``join``.
    """
    tree = FormulaTree()

    def go(node: Ast, negated: bool) -> int:
        tree.visits += 1
        if isinstance(node, Var):
            return tree.add_literal(Literal(node.name, not negated))
        if isinstance(node, Not):
            return go(node.arg, not negated)
        if isinstance(node, (And, Or)):
            is_and = isinstance(node, And) != negated
            kids = [go(a, negated) for a in node.args]
            return tree.join(Kind.AND if is_and else Kind.OR, kids)
        if isinstance(node, Implies):
            if negated:
                return tree.join(Kind.AND, [go(node.left, False), go(node.right, True)])
            return tree.join(Kind.OR, [go(node.left, True), go(node.right, False)])
        if isinstance(node, Iff):
            a, b = node.left, node.right
            if negated:
                return tree.join(Kind.OR, [
                    tree.join(Kind.AND, [go(a, False), go(b, True)]),
                    tree.join(Kind.AND, [go(a, True), go(b, False)]),
                ])
            return tree.join(Kind.AND, [
                tree.join(Kind.OR, [go(a, True), go(b, False)]),
                tree.join(Kind.OR, [go(a, False), go(b, True)]),
            ])
        raise TypeError(f"not an AST node: {node!r}")

    tree.root = go(ast, False)
    return tree
