import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import assignments, nnf, nnf_trees, same_shape
from nvld.formula import FormulaTree, Kind, UsageError
from nvld.oracle import truth_table_valid
from nvld.specialize import replace_subtree, specialize


@pytest.mark.parametrize("text, v, value, expected", [
    ("p | q | r", "p", True, True),
    ("p | q | r", "p", False, "q | r"),
    ("p & q", "p", True, "q"),
    ("p & q", "p", False, False),
    ("(p & q & !r) | (p & !q) | !p | r", "p", True, "(q & !r) | !q | r"),
    ("q | r", "p", True, "q | r"),
    # emptied conjunction becomes true and takes its disjunction with it
    ("(p & !p) | (!p & q)", "p", False, "q"),
    ("((!p | !s) & (!p | !s | q)) | (p & (s | !q))", "p", False, True),
])
def test_examples(text, v, value, expected):
    tree = nnf(text)
    out = specialize(tree, tree.root, v, value)
    if isinstance(expected, bool):
        assert out.constant is expected
    else:
        assert same_shape(out, expected)
    assert str(tree) == str(nnf(text)), "source must be left alone"


def test_specializing_the_last_example_on_p():
    tree = nnf("((!p | !s) & (!p | !s | q)) | (p & (s | !q))")
    assert same_shape(specialize(tree, tree.root, "p", True), "(!s & (!s | q)) | s | !q")


def test_unknown_node():
    tree = nnf("p & q")
    with pytest.raises(UsageError):
        specialize(tree, 99, "p", True)


@given(nnf_trees(), st.integers(min_value=0), st.booleans())
@settings(max_examples=300, deadline=None)
def test_substitution(tree, pick, value):
    nodes = list(tree.preorder())
    node = nodes[pick % len(nodes)]
    names = sorted(tree.variables(node))
    v = names[pick % len(names)]
    out = specialize(tree, node, v, value)
    if out.constant is None:
        out.check_invariants()
        assert v not in out.variables()
    for a in assignments(set(names) - {v}):
        assert out.evaluate(a) == tree.evaluate({**a, v: value}, node)


def _swap_for_both(tree: FormulaTree, node: int, v: str) -> FormulaTree:
    """Copy of ``tree`` with ``node`` replaced by T(node, v) & F(node, v)."""
    out = tree.copy()
    target = out.root
    for i in tree.path_to(node):
        target = out.children(target)[i]
    both = out.join(Kind.AND, [out.copy_into(target, out, {v: True}),
                               out.copy_into(target, out, {v: False})])
    out.replace(target, both)
    return out


def _count(tree: FormulaTree, v: str, node=None) -> int:
    return sum(1 for n in tree.literal_nodes(node) if tree.nodes[n].lit.var == v)


@given(nnf_trees(), st.integers(min_value=0))
@settings(max_examples=300, deadline=None)
def test_splitting_keeps_validity(tree, pick):
    nodes = list(tree.preorder())
    node = nodes[pick % len(nodes)]
    only = sorted(v for v in tree.variables(node) if _count(tree, v) == _count(tree, v, node))
    assume(only)
    v = only[pick % len(only)]
    split = _swap_for_both(tree, node, v)
    assert truth_table_valid(split) == truth_table_valid(tree)
    if split.constant is None:
        assert v not in split.variables()


def _implies(a: FormulaTree, b: FormulaTree, names) -> bool:
    return all(not a.evaluate(x) or b.evaluate(x) for x in assignments(names))


@given(nnf_trees(), st.integers(min_value=0))
@settings(max_examples=300, deadline=None)
def test_monotone(tree, pick):
    names = sorted(tree.variables())
    v = names[pick % len(names)]
    signs = {tree.nodes[n].lit.positive for n in tree.literal_nodes() if tree.nodes[n].lit.var == v}
    assume(len(signs) == 1)
    t = specialize(tree, tree.root, v, True)
    f = specialize(tree, tree.root, v, False)
    rest = [x for x in names if x != v]
    if signs == {True}:
        assert _implies(f, t, rest)
    else:
        assert _implies(t, f, rest)


def test_replace_with_false_under_disjunction():
    tree = nnf("(p & q) | r")
    s = FormulaTree.build(False)
    assert str(replace_subtree(tree, tree.children(tree.root)[0], s)) == "r"


def test_replace_with_true_under_conjunction():
    tree = nnf("p & q")
    assert str(replace_subtree(tree, tree.children(tree.root)[1], FormulaTree.build(True))) == "p"


def test_replace_splices_conjunction():
    tree = nnf("a & (p | (p & q) | r)")
    b = tree.children(tree.root)[1]
    s = FormulaTree.build(("&", "x", "y"))
    replace_subtree(tree, b, s)
    assert str(tree) == "a & x & y"
    tree.check_invariants()


def test_replace_root_with_constant():
    tree = nnf("p | q")
    replace_subtree(tree, tree.root, FormulaTree.build(True))
    assert tree.constant is True
