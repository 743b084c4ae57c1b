"""Specialization of a subtree under a single variable assignment.

``specialize(tree, B, v, True)`` is B with v set to true.  It is computed by
copying B while substituting constants for v's literals and normalizing on
the way up, which performs the removal rules (drop the literal, drop the
enclosing connective, lift a lone sibling) including their cascades.  An
emptied disjunction comes out as True and an emptied conjunction as False.
"""

from __future__ import annotations

from nvld.formula import FormulaTree, UsageError

# A specialization is a standalone tree; ``.constant`` tells the two empty
# outcomes apart from a proper formula.
Specialization = FormulaTree


def specialize(tree: FormulaTree, node: int, v: str, value: bool) -> Specialization:
    tree._check(node)
    out = FormulaTree()
    out.root = tree.copy_into(node, out, {v: value})
    return out


def replace_subtree(tree: FormulaTree, node: int, s: Specialization) -> FormulaTree:
    """Replace ``node``'s subtree by a copy of ``s``, in place.

    Constants are absorbed by the enclosing connective, conjunctions under a
    conjunction are spliced into it, and a constant reaching the root becomes
    the whole tree.
    """
    tree._check(node)
    if s is tree:
        raise UsageError("cannot graft a tree into itself")
    new = s.copy_into(s.root, tree)
    tree.replace(node, new)
    return tree
