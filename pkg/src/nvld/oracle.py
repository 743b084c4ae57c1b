"""Ground truth by truth tables, and test-input generators.

Truth tables are evaluated bit-parallel: with variables sorted by name, bit j
of a table is the value under assignment j, where variable i is true iff bit
i of j is set.  A whole table is then one Python int and each connective one
big-int operation.  :func:`naive_valid` walks assignments one at a time and
serves as the cross-check for the bit-parallel path.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache
from typing import Iterator, Optional, Sequence, Union

from nvld.formula import FormulaTree, Kind, Literal, UsageError
from nvld.syntax import And, Ast, Iff, Implies, Not, Or, Var, ast_variables, evaluate_ast

DEFAULT_BUDGET = 20


class OracleBudgetError(UsageError):
    pass


Formula = Union[Ast, FormulaTree]


def var_masks(n: int) -> tuple[list[int], int]:
    """Per-variable bit patterns over 2**n assignments, and the all-ones mask."""
    width = 1 << n
    masks = []
    for i in range(n):
        block = 1 << i
        m = ((1 << block) - 1) << block
        w = 2 * block
        while w < width:
            m |= m << w
            w *= 2
        masks.append(m)
    return masks, (1 << width) - 1


class TruthTable:
    """Evaluates formulas over a fixed, ordered variable list."""

    def __init__(self, variables: Sequence[str], budget: int = DEFAULT_BUDGET):
        self.variables = sorted(variables)
        if len(self.variables) > budget:
            raise OracleBudgetError(
                f"{len(self.variables)} variables exceed the oracle budget of {budget}")
        masks, self.full = var_masks(len(self.variables))
        self.masks = dict(zip(self.variables, masks))

    def literal(self, lit: Literal) -> int:
        m = self.masks[lit.var]
        return m if lit.positive else self.full ^ m

    def of_tree(self, tree: FormulaTree, nid: Optional[int] = None) -> int:
        nodes = tree.nodes

        def go(n: int) -> int:
            node = nodes[n]
            k = node.kind
            if k is Kind.LIT:
                return self.literal(node.lit)
            if k is Kind.TRUE:
                return self.full
            if k is Kind.FALSE:
                return 0
            kids = node.children
            acc = go(kids[0])
            if k is Kind.AND:
                for c in kids[1:]:
                    acc &= go(c)
            else:
                for c in kids[1:]:
                    acc |= go(c)
            return acc

        return go(tree.root if nid is None else nid)

    def of_ast(self, node: Ast) -> int:
        if isinstance(node, Var):
            return self.masks[node.name]
        if isinstance(node, Not):
            return self.full ^ self.of_ast(node.arg)
        if isinstance(node, And):
            acc = self.full
            for a in node.args:
                acc &= self.of_ast(a)
            return acc
        if isinstance(node, Or):
            acc = 0
            for a in node.args:
                acc |= self.of_ast(a)
            return acc
        left, right = self.of_ast(node.left), self.of_ast(node.right)
        if isinstance(node, Implies):
            return (self.full ^ left) | right
        return self.full ^ (left ^ right)

    def of(self, x: Formula, nid: Optional[int] = None) -> int:
        if isinstance(x, FormulaTree):
            return self.of_tree(x, nid)
        return self.of_ast(x)


def variables_of(x: Formula, nid: Optional[int] = None) -> set[str]:
    if isinstance(x, FormulaTree):
        return x.variables(nid)
    return ast_variables(x)


def truth_table(x: Formula, nid: Optional[int] = None,
                budget: int = DEFAULT_BUDGET) -> tuple[TruthTable, int]:
    table = TruthTable(variables_of(x, nid), budget)
    return table, table.of(x, nid)


def truth_table_valid(x: Formula, budget: int = DEFAULT_BUDGET) -> bool:
    """True iff ``x`` holds under every assignment to its variables."""
    table, bits = truth_table(x, budget=budget)
    return bits == table.full


def naive_valid(x: Formula, budget: int = DEFAULT_BUDGET) -> bool:
    names = sorted(variables_of(x))
    if len(names) > budget:
        raise OracleBudgetError(f"{len(names)} variables exceed the oracle budget of {budget}")
    for j in range(1 << len(names)):
        a = {v: bool(j >> i & 1) for i, v in enumerate(names)}
        ok = x.evaluate(a) if isinstance(x, FormulaTree) else evaluate_ast(x, a)
        if not ok:
            return False
    return True


def _single_literals(x: Formula, nid: Optional[int], budget: int, implicates: bool) -> frozenset:
    table, bits = truth_table(x, nid, budget)
    out = set()
    for v in table.variables:
        for positive in (True, False):
            lit = Literal(v, positive)
            m = table.literal(lit)
            # implicate: x |= L, i.e. no row where x holds and L fails
            if (bits & ~m if implicates else m & ~bits) & table.full == 0:
                out.add(lit)
    return frozenset(out)


def brute_implicates(x: Formula, nid: Optional[int] = None,
                     budget: int = DEFAULT_BUDGET) -> frozenset:
    """Literals over x's variables entailed by x."""
    return _single_literals(x, nid, budget, True)


def brute_implicants(x: Formula, nid: Optional[int] = None,
                     budget: int = DEFAULT_BUDGET) -> frozenset:
    """Literals over x's variables that entail x."""
    return _single_literals(x, nid, budget, False)


# -- generators -------------------------------------------------------

_LETTERS = "pqrstuvw"


def var_names(n: int) -> list[str]:
    return [_LETTERS[i] if i < len(_LETTERS) else f"x{i}" for i in range(n)]


# Canonical tuples: literal (0, var_index, negated); And (1, *kids); Or (2, *kids).
# Children are kept sorted, so equal tuples mean equal trees up to child order.
_AND, _OR = 1, 2


def _to_ast(t: tuple, names: Sequence[str]) -> Ast:
    if t[0] == 0:
        v = Var(names[t[1]])
        return Not(v) if t[2] else v
    args = tuple(_to_ast(c, names) for c in t[1:])
    return And(args) if t[0] == _AND else Or(args)


def _transform(t: tuple, perm: Sequence[int], flip: Sequence[int]) -> tuple:
    if t[0] == 0:
        return (0, perm[t[1]], t[2] ^ flip[t[1]])
    return (t[0],) + tuple(sorted(_transform(c, perm, flip) for c in t[1:]))


def _signature(t: tuple, n: int) -> list[list[int]]:
    sig = [[0, 0] for _ in range(n)]
    stack = [t]
    while stack:
        x = stack.pop()
        if x[0] == 0:
            sig[x[1]][0] += 1
            sig[x[1]][1] += 0 if x[2] else 1
        else:
            stack.extend(x[1:])
    return sig


def _residual_group(sig: list[list[int]]):
    """Renamings and polarity flips that keep a canonical signature fixed."""
    n = len(sig)
    used = [i for i in range(n) if sig[i][0]]
    blocks: dict[tuple, list[int]] = {}
    for i in used:
        blocks.setdefault(tuple(sig[i]), []).append(i)
    flippable = [i for i in used if 2 * sig[i][1] == sig[i][0]]
    block_perms = [list(itertools.permutations(b)) for b in blocks.values()]
    block_keys = list(blocks.values())
    for choice in itertools.product(*block_perms):
        perm = list(range(n))
        for src, dst in zip(block_keys, choice):
            for a, b in zip(src, dst):
                perm[a] = b
        for bits in itertools.product((0, 1), repeat=len(flippable)):
            flip = [0] * n
            for i, b in zip(flippable, bits):
                flip[i] = b
            if perm == list(range(n)) and not any(flip):
                continue
            yield perm, flip


def _is_orbit_representative(t: tuple, n: int) -> bool:
    sig = _signature(t, n)
    keys = [(tot, pos) for tot, pos in sig]
    if any(2 * pos < tot for tot, pos in keys):
        return False
    if any(keys[i] < keys[i + 1] for i in range(n - 1)):
        return False
    return all(t <= _transform(t, perm, flip) for perm, flip in _residual_group(sig))


def enumerate_canonical(n_vars: int, max_leaves: int, max_depth: int,
                        up_to_symmetry: bool = False) -> Iterator[tuple]:
    """Canonical tuples behind :func:`enumerate_small`."""
    lits = [(0, i, b) for i in range(n_vars) for b in (0, 1)]

    @lru_cache(maxsize=None)
    def trees(kind: int, depth: int, leaves: int) -> tuple:
        if depth < 2:
            return ()
        return tuple(_combos(kind, depth, leaves))

    @lru_cache(maxsize=None)
    def candidates(kind: int, depth: int, leaves: int) -> tuple:
        other = _OR if kind == _AND else _AND
        cands = [(1, t) for t in lits]
        for k in range(2, leaves):
            cands.extend((k, t) for t in trees(other, depth - 1, k))
        # by leaf count, so the multiset walk below can stop early
        cands.sort()
        return tuple(cands)

    def _combos(kind: int, depth: int, leaves: int) -> Iterator[tuple]:
        cands = candidates(kind, depth, leaves)
        acc: list[tuple] = []

        def rec(start: int, rem: int):
            if rem == 0:
                if len(acc) >= 2:
                    yield (kind,) + tuple(sorted(acc))
                return
            for idx in range(start, len(cands)):
                k, t = cands[idx]
                if k > rem:
                    break
                acc.append(t)
                yield from rec(idx, rem - k)
                acc.pop()

        yield from rec(0, leaves)

    def everything() -> Iterator[tuple]:
        yield from lits
        for leaves in range(2, max_leaves + 1):
            for kind in (_AND, _OR):
                if max_depth < 2:
                    continue
                # top level is generated lazily; only subtrees are cached
                yield from _combos(kind, max_depth, leaves)

    for t in everything():
        if not up_to_symmetry or _is_orbit_representative(t, n_vars):
            yield t


def enumerate_small(n_vars: int, max_leaves: int, max_depth: int,
                    up_to_symmetry: bool = False) -> Iterator[Ast]:
    """Every NNF-shaped formula within the bounds, each exactly once.

    Formulas are alternation-normal (no And directly under And, no Or under
    Or), connectives have at least two children, and child order is ignored.
    Depth counts levels, so a literal has depth 1 and ``p | q`` depth 2.
    With ``up_to_symmetry`` only one formula per class under renaming of
    variables and flipping of their polarities is produced.
    """
    names = var_names(n_vars)
    for t in enumerate_canonical(n_vars, max_leaves, max_depth, up_to_symmetry):
        yield _to_ast(t, names)


def gen_random_nnf(seed: int, max_vars: int = 8, max_size: int = 60, *,
                   p_not: float = 0.1, p_implies: float = 0.15,
                   p_iff: float = 0.05) -> Ast:
    """A reproducible random formula of the full language.

    The size (negated variables counting once) is at most ``max_size`` and at
    most ``max_vars`` distinct variables appear.  Each internal node is a
    negation, implication or equivalence with the given probabilities,
    otherwise a conjunction or disjunction of 2-4 operands.
    """
    rng = random.Random(seed)
    names = var_names(rng.randint(1, max_vars))
    target = rng.randint(1, max_size)

    def literal() -> Ast:
        v = Var(rng.choice(names))
        return Not(v) if rng.random() < 0.5 else v

    def parts(total: int, k: int) -> list[int]:
        cuts = sorted(rng.sample(range(1, total), k - 1))
        return [b - a for a, b in zip([0] + cuts, cuts + [total])]

    def build(budget: int) -> Ast:
        if budget < 3:
            return literal()
        r = rng.random()
        if r < p_not:
            inner = build(budget - 1)
            return Not(inner)
        r -= p_not
        if r < p_implies:
            a, b = parts(budget - 1, 2)
            return Implies(build(a), build(b))
        r -= p_implies
        if r < p_iff:
            a, b = parts(budget - 1, 2)
            return Iff(build(a), build(b))
        k = rng.randint(2, min(4, budget - 1))
        args = tuple(build(b) for b in parts(budget - 1, k))
        return And(args) if rng.random() < 0.5 else Or(args)

    return build(target)
