"""Concrete syntax: general propositional ASTs, a parser and a printer.

Grammar, loosest binding first::

    iff     := implies ("<->" implies)*        left-associative
    implies := or ("->" implies)?              right-associative
    or      := and ("|" and)*
    and     := unary ("&" unary)*
    unary   := "!" unary | "(" iff ")" | VAR

``=>``/``<=>``/``→``/``↔`` and ``¬ ∧ ∨`` are accepted as aliases.  ``#``
starts a comment that runs to the end of the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from nvld.formula import CONSTANTS, FormulaTree, Kind


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Not:
    arg: "Ast"


@dataclass(frozen=True)
class And:
    args: tuple

    def __post_init__(self):
        if not self.args:
            raise ValueError("And needs at least one argument")


@dataclass(frozen=True)
class Or:
    args: tuple

    def __post_init__(self):
        if not self.args:
            raise ValueError("Or needs at least one argument")


@dataclass(frozen=True)
class Implies:
    left: "Ast"
    right: "Ast"


@dataclass(frozen=True)
class Iff:
    left: "Ast"
    right: "Ast"


Ast = Union[Var, Not, And, Or, Implies, Iff]

RESERVED = frozenset({"true", "false"})


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+|\#[^\n]*)
  | (?P<iff><->|<=>|↔)
  | (?P<imp>->|=>|→)
  | (?P<not>!|¬)
  | (?P<and>&|∧)
  | (?P<or>\||∨)
  | (?P<lp>\()
  | (?P<rp>\))
  | (?P<var>[A-Za-z][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int, int]]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), line, pos - line_start + 1))
        chunk = m.group()
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    tokens.append(("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def take(self, kind: str):
        tok = self.tokens[self.i]
        if tok[0] != kind:
            self.fail(f"expected {kind}, found {tok[1] or 'end of input'!r}")
        self.i += 1
        return tok

    def fail(self, message: str):
        _, _, line, col = self.tokens[self.i]
        raise ParseError(message, line, col)

    def parse(self) -> Ast:
        if self.peek() == "eof":
            self.fail("empty formula")
        node = self.iff()
        if self.peek() != "eof":
            self.fail(f"unexpected {self.tokens[self.i][1]!r}")
        return node

    def iff(self) -> Ast:
        node = self.implies()
        while self.peek() == "iff":
            self.i += 1
            node = Iff(node, self.implies())
        return node

    def implies(self) -> Ast:
        left = self.disjunction()
        if self.peek() == "imp":
            self.i += 1
            return Implies(left, self.implies())
        return left

    def disjunction(self) -> Ast:
        args = [self.conjunction()]
        while self.peek() == "or":
            self.i += 1
            args.append(self.conjunction())
        return args[0] if len(args) == 1 else Or(tuple(args))

    def conjunction(self) -> Ast:
        args = [self.unary()]
        while self.peek() == "and":
            self.i += 1
            args.append(self.unary())
        return args[0] if len(args) == 1 else And(tuple(args))

    def unary(self) -> Ast:
        kind = self.peek()
        if kind == "not":
            self.i += 1
            return Not(self.unary())
        if kind == "lp":
            self.i += 1
            node = self.iff()
            self.take("rp")
            return node
        if kind == "var":
            tok = self.tokens[self.i]
            if tok[1] in RESERVED:
                self.fail(f"{tok[1]!r} is reserved")
            self.i += 1
            return Var(tok[1])
        if kind == "eof":
            self.fail("unexpected end of input")
        self.fail(f"unexpected {self.tokens[self.i][1]!r}")


def parse_formula(text: str) -> Ast:
    """Parse ``text`` into a general AST.

    >>> parse_formula("p <-> q")
    Iff(left=Var(name='p'), right=Var(name='q'))
    """
    return _Parser(text).parse()


# Binding strength, tightest highest.
_PREC = {Var: 6, Not: 5, And: 4, Or: 3, Implies: 2, Iff: 1}


def _print_ast(node: Ast) -> str:
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Not):
        inner = _print_ast(node.arg)
        if isinstance(node.arg, (Var, Not)):
            return "!" + inner
        return f"!({inner})"
    if isinstance(node, (And, Or)):
        op = " & " if isinstance(node, And) else " | "
        parts = []
        for a in node.args:
            s = _print_ast(a)
            # &/| operands are always bracketed unless atomic or tighter
            # than both, which keeps mixed &/| chains readable.
            if isinstance(a, (And, Or, Implies, Iff)):
                s = f"({s})"
            parts.append(s)
        return op.join(parts)
    if isinstance(node, Implies):
        left, right = _print_ast(node.left), _print_ast(node.right)
        if _PREC[type(node.left)] <= _PREC[Implies]:
            left = f"({left})"
        if _PREC[type(node.right)] < _PREC[Implies]:
            right = f"({right})"
        return f"{left} -> {right}"
    if isinstance(node, Iff):
        left, right = _print_ast(node.left), _print_ast(node.right)
        if _PREC[type(node.left)] < _PREC[Iff]:
            left = f"({left})"
        if _PREC[type(node.right)] <= _PREC[Iff]:
            right = f"({right})"
        return f"{left} <-> {right}"
    raise TypeError(f"not an AST node: {node!r}")


def _print_tree(tree: FormulaTree, nid: int) -> str:
    node = tree.nodes[nid]
    if node.kind is Kind.LIT:
        return str(node.lit)
    if node.kind in CONSTANTS:
        return node.kind.value
    op = " & " if node.kind is Kind.AND else " | "
    parts = []
    for c in node.children:
        s = _print_tree(tree, c)
        parts.append(s if tree.nodes[c].kind is Kind.LIT else f"({s})")
    return op.join(parts)


def print_formula(x: Union[Ast, FormulaTree]) -> str:
    """Render an AST or a formula tree in the concrete syntax.

    >>> print_formula(And((Var("p"), Or((Var("q"), Var("r"))))))
    'p & (q | r)'
    """
    if isinstance(x, FormulaTree):
        return _print_tree(x, x.root)
    return _print_ast(x)


def ast_variables(node: Ast) -> set[str]:
    out: set[str] = set()
    stack = [node]
    while stack:
        n = stack.pop()
        if isinstance(n, Var):
            out.add(n.name)
        elif isinstance(n, Not):
            stack.append(n.arg)
        elif isinstance(n, (And, Or)):
            stack.extend(n.args)
        else:
            stack.extend((n.left, n.right))
    return out


def ast_size(node: Ast) -> int:
    """Node count, with negation of a bare variable not counted separately."""
    if isinstance(node, Var):
        return 1
    if isinstance(node, Not):
        return 1 if isinstance(node.arg, Var) else 1 + ast_size(node.arg)
    if isinstance(node, (And, Or)):
        return 1 + sum(ast_size(a) for a in node.args)
    return 1 + ast_size(node.left) + ast_size(node.right)


def evaluate_ast(node: Ast, assignment) -> bool:
    if isinstance(node, Var):
        return assignment[node.name]
    if isinstance(node, Not):
        return not evaluate_ast(node.arg, assignment)
    if isinstance(node, And):
        return all(evaluate_ast(a, assignment) for a in node.args)
    if isinstance(node, Or):
        return any(evaluate_ast(a, assignment) for a in node.args)
    if isinstance(node, Implies):
        return not evaluate_ast(node.left, assignment) or evaluate_ast(node.right, assignment)
    return evaluate_ast(node.left, assignment) == evaluate_ast(node.right, assignment)
