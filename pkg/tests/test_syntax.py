import pytest
from hypothesis import given, settings

from conftest import EXAMPLE1, EXAMPLE1_NNF, general_asts, nnf
from nvld.syntax import (And, Iff, Implies, Not, Or, ParseError, Var, ast_size, parse_formula,
                         print_formula)

p, q, r = Var("p"), Var("q"), Var("r")


def test_first_example_parses():
    expected = Implies(Or((p, q)), And((
        Or((p, q, r)),
        Implies(r, And((Implies(q, r), Or((Not(r), p, q))))),
    )))
    assert parse_formula(EXAMPLE1) == expected


@pytest.mark.parametrize("text, expected", [
    ("p", p),
    ("p <-> q", Iff(p, q)),
    ("!p", Not(p)),
    ("!!p", Not(Not(p))),
    ("p & q | r", Or((And((p, q)), r))),
    ("p -> q -> r", Implies(p, Implies(q, r))),
    ("p <-> q <-> r", Iff(Iff(p, q), r)),
    ("p | q -> r", Implies(Or((p, q)), r)),
    ("p -> q <-> r", Iff(Implies(p, q), r)),
    ("¬p ∧ q ∨ r", Or((And((Not(p), q)), r))),
    ("p → q", Implies(p, q)),
    ("p => q", Implies(p, q)),
    ("p <=> q", Iff(p, q)),
    ("p & # note\n q", And((p, q))),
    ("x_1 & Y2", And((Var("x_1"), Var("Y2")))),
])
def test_parse(text, expected):
    assert parse_formula(text) == expected


@pytest.mark.parametrize("text, line, col", [
    ("p & ", 1, 5),
    ("(p | q", 1, 7),
    ("p | q)", 1, 6),
    ("p $ q", 1, 3),
    ("p\n& & q", 2, 3),
    ("", 1, 1),
])
def test_parse_errors(text, line, col):
    with pytest.raises(ParseError) as info:
        parse_formula(text)
    assert (info.value.line, info.value.col) == (line, col)


@pytest.mark.parametrize("word", ["true", "false"])
def test_reserved_words(word):
    with pytest.raises(ParseError):
        parse_formula(f"p & {word}")


@pytest.mark.parametrize("ast, text", [
    (And((p, Or((q, r)))), "p & (q | r)"),
    (Not(p), "!p"),
    (Not(And((p, q))), "!(p & q)"),
    (Implies(p, Implies(q, r)), "p -> q -> r"),
    (Implies(Implies(p, q), r), "(p -> q) -> r"),
    (Iff(Iff(p, q), r), "p <-> q <-> r"),
])
def test_print(ast, text):
    assert print_formula(ast) == text


def test_print_tree():
    assert print_formula(nnf(EXAMPLE1)) == \
        "(!p & !q) | ((p | q | r) & (!r | ((!q | r) & (!r | p | q))))"
    assert print_formula(nnf(EXAMPLE1)) == print_formula(nnf(EXAMPLE1_NNF))


@given(general_asts())
@settings(max_examples=300, deadline=None)
def test_round_trip(ast):
    assert parse_formula(print_formula(ast)) == ast


def test_ast_size_counts_negated_variable_once():
    assert ast_size(Not(p)) == 1
    assert ast_size(And((Not(p), Not(q)))) == 3
    assert ast_size(Not(And((p, q)))) == 4
