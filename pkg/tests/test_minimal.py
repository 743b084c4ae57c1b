import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import EXAMPLE2, nnf, nnf_trees
from nvld.delta import compute_delta
from nvld.formula import FormulaTree, Kind, UsageError
from nvld.minimal import TreeClass, analyze_variable, footprint, select_variable, weight


def report(text, v):
    tree = nnf(text)
    return tree, analyze_variable(tree, compute_delta(tree), v)


def test_second_example_p_is_strict_negative():
    tree, rep = report(EXAMPLE2, "p")
    assert rep.root == tree.children(tree.root)[2]
    assert rep.cls is TreeClass.STRICT and rep.polarity is False
    assert (rep.pos_count, rep.neg_count) == (2, 1)


@pytest.mark.parametrize("text, v, cls, polarity, at_root", [
    ("(p | q) & (!p | r)", "p", TreeClass.SEMI_COMPLETE, None, True),
    ("(p | q) & (!p | r)", "q", TreeClass.STRICT, True, False),
    ("(p | q) | (p & r)", "p", TreeClass.STRICT, True, True),
    ("(p | !p) & (p | q)", "p", TreeClass.SEMI_COMPLETE, None, True),
    ("(p | (!p & q)) & (!p | (p & r))", "p", TreeClass.COMPLETE, None, True),
    ("(p & q) | (!p & r)", "p", TreeClass.COMPLETE, None, True),
    ("(p & q) | (!p & r) | s", "p", TreeClass.INCOMPLETE, None, True),
    ("x & y", "x", TreeClass.STRICT, True, True),
])
def test_classification(text, v, cls, polarity, at_root):
    tree, rep = report(text, v)
    assert rep.cls is cls
    assert rep.polarity is polarity
    assert (rep.root == tree.root) is at_root


@pytest.mark.parametrize("text, v, fp, w", [
    ("(p | q) & (!p | r)", "p", 7, 6),
    ("(p | q) & (!p | r)", "q", 2, 3),
    ("x & y", "x", 2, 3),
    # a parent holding both p and !p counts once
    ("p | !p", "p", 3, 3),
])
def test_footprint_and_weight(text, v, fp, w):
    tree = nnf(text)
    assert footprint(tree, v) == fp
    assert weight(tree, v) == w
    rep = analyze_variable(tree, compute_delta(tree), v)
    assert (rep.footprint, rep.weight) == (fp, w)


def test_absent_variable():
    tree = nnf("p & q")
    with pytest.raises(UsageError):
        analyze_variable(tree, compute_delta(tree), "z")
    with pytest.raises(UsageError):
        weight(tree, "z")


@pytest.mark.parametrize("text, expected", [
    ("(p | q) & (!p | r)", "q"),
    ("p | !p", "p"),
    ("(q | r | !s) & ((!q & !r) | s) & (r | q | !q)", "s"),
    ("((!p | !s) & (!q | r)) | (q & !r) | (p & (s | !q)) | (r & !s)", "r"),
])
def test_select(text, expected):
    tree = nnf(text)
    assert select_variable(tree, compute_delta(tree)).var == expected


def test_select_on_constant():
    tree = FormulaTree.build(True)
    with pytest.raises(UsageError):
        select_variable(tree, None)


def _lit_count(tree, v, n):
    return sum(1 for m in tree.literal_nodes(n) if tree.nodes[m].lit.var == v)


@given(nnf_trees(), st.integers(min_value=0))
@settings(max_examples=300, deadline=None)
def test_report_properties(tree, pick):
    names = sorted(tree.variables())
    v = names[pick % len(names)]
    deltas = compute_delta(tree)
    rep = analyze_variable(tree, deltas, v)
    total = _lit_count(tree, v, None)
    assert _lit_count(tree, v, rep.root) == total
    if tree.kind(rep.root) is not Kind.LIT:
        # least: no child holds every occurrence, unless the only one
        kids = tree.children(rep.root)
        if total > 1:
            assert all(_lit_count(tree, v, c) < total for c in kids)
        # independent recount of the metrics
        free = [c for c in kids if _lit_count(tree, v, c) == 0]
        assert rep.footprint == tree.size(rep.root) - sum(tree.size(c) for c in free)
        assert rep.footprint <= tree.size(rep.root)
    parents = {tree.parent(m) for m in tree.literal_nodes() if tree.nodes[m].lit.var == v}
    assert rep.weight == sum(tree.size(p) for p in parents if p is not None)
    # exactly one class, and strict only with the literal in the matching set
    if rep.cls is TreeClass.STRICT and tree.kind(rep.root) is not Kind.LIT:
        target = deltas.d0 if tree.kind(rep.root) is Kind.AND else deltas.d1
        assert rep.strict_literal in target[rep.root]
