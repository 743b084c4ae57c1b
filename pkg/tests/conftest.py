import itertools

import pytest
from hypothesis import strategies as st

from nvld.formula import FormulaTree, Kind, Literal
from nvld.nnf import to_nnf
from nvld.syntax import And, Iff, Implies, Not, Or, Var, parse_formula

EXAMPLE1 = "(p|q)->((p|q|r)&(r->((q->r)&(!r|p|q))))"
EXAMPLE2 = "(q|r|!s)&((q|r)->s)&((p->(q->r))->((p->q)->(p->r)))"
EXAMPLE3 = "(((p->!s)->(q&!r))&(q->r))->((p->(!s&q))->(r&!s))"

EXAMPLE1_NNF = "(!p&!q) | ((p|q|r)&(!r | ((!q|r)&(!r|p|q))))"
EXAMPLE2_NNF = "(q|r|!s) & ((!q&!r)|s) & ((p&q&!r) | (p&!q) | !p | r)"
EXAMPLE3_NNF = "((!p|!s)&(!q|r)) | (q&!r) | (p&(s|!q)) | (r&!s)"

VARS = ["p", "q", "r", "s", "t"]


def nnf(text: str) -> FormulaTree:
    return to_nnf(parse_formula(text))


def same_shape(tree: FormulaTree, text: str, nid=None) -> bool:
    return tree.canonical(nid) == nnf(text).canonical()


def assignments(names):
    names = sorted(names)
    for bits in itertools.product((False, True), repeat=len(names)):
        yield dict(zip(names, bits))


def _asts(names, full: bool):
    leaves = st.sampled_from(names).map(Var)

    def extend(inner):
        options = [
            inner.map(Not),
            st.lists(inner, min_size=2, max_size=4).map(lambda xs: And(tuple(xs))),
            st.lists(inner, min_size=2, max_size=4).map(lambda xs: Or(tuple(xs))),
        ]
        if full:
            options.append(st.tuples(inner, inner).map(lambda ab: Implies(*ab)))
            options.append(st.tuples(inner, inner).map(lambda ab: Iff(*ab)))
        return st.one_of(*options)

    return st.recursive(leaves, extend, max_leaves=14)


def general_asts(names=VARS):
    """Formulas of the whole input language."""
    return _asts(names, True)


def iff_free_asts(names=VARS):
    leaves = st.sampled_from(names).map(Var)
    return st.recursive(leaves, lambda inner: st.one_of(
        inner.map(Not),
        st.lists(inner, min_size=2, max_size=4).map(lambda xs: And(tuple(xs))),
        st.lists(inner, min_size=2, max_size=4).map(lambda xs: Or(tuple(xs))),
        st.tuples(inner, inner).map(lambda ab: Implies(*ab)),
    ), max_leaves=14)


def nnf_trees(names=VARS):
    return general_asts(names).map(to_nnf).filter(lambda t: t.constant is None)


@pytest.fixture
def example_nnf():
    return {1: nnf(EXAMPLE1), 2: nnf(EXAMPLE2), 3: nnf(EXAMPLE3)}
