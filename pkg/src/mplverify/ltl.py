"""LTL over time-difference atoms: parser, translation, direct checks.

Atoms `t<i> ~ alpha` constrain the gap between consecutive firings of the
i-th event.  The parser desugars F, G, |, and -> into the core grammar
(true, atom, and, not, next, until); negation normal form additionally
uses or/release.  Atoms translate to clauses over abstraction predicates,
with tautological/contradictory atoms folded to constants so that the
masked-diagonal corner never reaches the abstraction.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .abstraction import predicates_from_timediff
from .maxplus import MaxPlusMatrix, eigenvalue, is_irreducible, to_scaled


@dataclass(frozen=True)
class TimeDiffProposition:
    """`t_i ~ alpha` about x_i(k+1) - x_i(k); i is 1-based."""

    i: int
    op: str  # <, <=, >, >=
    alpha: Fraction

    def __str__(self):
        a = self.alpha
        return f"t{self.i} {self.op} {int(a) if a.denominator == 1 else a}"


# ---------------------------------------------------------------------------
# Formula AST


class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class TrueF(Formula):
    def __str__(self):
        return "true"


@dataclass(frozen=True)
class FalseF(Formula):
    def __str__(self):
        return "false"


@dataclass(frozen=True)
class Atom(Formula):
    payload: object

    def __str__(self):
        return str(self.payload)


@dataclass(frozen=True)
class Not(Formula):
    sub: Formula

    def __str__(self):
        return f"!({self.sub})"


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula

    def __str__(self):
        return f"({self.left} & {self.right})"


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula

    def __str__(self):
        return f"({self.left} | {self.right})"


@dataclass(frozen=True)
class Next(Formula):
    sub: Formula

    def __str__(self):
        return f"X ({self.sub})"


@dataclass(frozen=True)
class Until(Formula):
    left: Formula
    right: Formula

    def __str__(self):
        return f"({self.left} U {self.right})"


@dataclass(frozen=True)
class Release(Formula):
    left: Formula
    right: Formula

    def __str__(self):
        return f"({self.left} R {self.right})"


TRUE = TrueF()
FALSE = FalseF()


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_TOKEN = re.compile(
    r"\s*(?:(?P<atom>t\d+\s*(?:<=|>=|<|>)\s*-?\d+(?:\.\d+)?)"
    r"|(?P<op>->|&|\||!|\(|\))"
    r"|(?P<word>[A-Za-z]+))"
)

_ATOM = re.compile(r"t(\d+)\s*(<=|>=|<|>)\s*(-?\d+(?:\.\d+)?)")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.lastgroup is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind).strip(), m.start(kind)))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    """Precedence: ! > X,F,G > U (right-assoc) > & > | > ->."""

    def __init__(self, tokens):
        self.tokens = tokens
        self.k = 0

    def peek(self):
        return self.tokens[self.k]

    def take(self):
        t = self.tokens[self.k]
        self.k += 1
        return t

    def expect_eof(self):
        kind, val, pos = self.peek()
        if kind != "eof":
            raise ParseError(f"trailing input {val!r}", pos)

    def parse_formula(self) -> Formula:
        return self.parse_implies()

    def parse_implies(self) -> Formula:
        left = self.parse_or()
        kind, val, _ = self.peek()
        if kind == "op" and val == "->":
            self.take()
            right = self.parse_implies()
            # a -> b  ==  !(a & !b)
            return Not(And(left, Not(right)))
        return left

    def parse_or(self) -> Formula:
        left = self.parse_and()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "|":
                self.take()
                right = self.parse_and()
                left = Not(And(Not(left), Not(right)))
            else:
                return left

    def parse_and(self) -> Formula:
        left = self.parse_until()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "&":
                self.take()
                left = And(left, self.parse_until())
            else:
                return left

    def parse_until(self) -> Formula:
        left = self.parse_unary()
        kind, val, _ = self.peek()
        if kind == "word" and val == "U":
            self.take()
            return Until(left, self.parse_until())
        return left

    def parse_unary(self) -> Formula:
        kind, val, pos = self.peek()
        if kind == "op" and val == "!":
            self.take()
            return Not(self.parse_unary())
        if kind == "word" and val in ("X", "F", "G"):
            self.take()
            sub = self.parse_unary()
            if val == "X":
                return Next(sub)
            if val == "F":
                return Until(TRUE, sub)
            return Not(Until(TRUE, Not(sub)))
        return self.parse_primary()

    def parse_primary(self) -> Formula:
        kind, val, pos = self.take()
        if kind == "op" and val == "(":
            f = self.parse_formula()
            kind, val, pos = self.take()
            if not (kind == "op" and val == ")"):
                raise ParseError("expected ')'", pos)
            return f
        if kind == "atom":
            m = _ATOM.fullmatch(val)
            assert m is not None
            return Atom(
                TimeDiffProposition(int(m.group(1)), m.group(2), Fraction(m.group(3)))
            )
        if kind == "word":
            if val == "true":
                return TRUE
            if val == "false":
                return FALSE
            raise ParseError(f"unexpected word {val!r}", pos)
        raise ParseError(f"unexpected token {val!r}" if val else "unexpected end", pos)


def parse(text: str) -> Formula:
    p = _Parser(_tokenize(text))
    f = p.parse_formula()
    p.expect_eof()
    return f


# ---------------------------------------------------------------------------
# Structural helpers


def atoms_of(f: Formula) -> list:
    """Atom payloads in first-occurrence order."""
    out, seen = [], set()

    def walk(g):
        if isinstance(g, Atom):
            if g.payload not in seen:
                seen.add(g.payload)
                out.append(g.payload)
        elif isinstance(g, Not) or isinstance(g, Next):
            walk(g.sub)
        elif isinstance(g, (And, Or, Until, Release)):
            walk(g.left)
            walk(g.right)

    walk(f)
    return out


def substitute_atoms(f: Formula, fn: Callable[[object], Formula]) -> Formula:
    if isinstance(f, Atom):
        return fn(f.payload)
    if isinstance(f, Not):
        return Not(substitute_atoms(f.sub, fn))
    if isinstance(f, Next):
        return Next(substitute_atoms(f.sub, fn))
    if isinstance(f, And):
        return And(substitute_atoms(f.left, fn), substitute_atoms(f.right, fn))
    if isinstance(f, Or):
        return Or(substitute_atoms(f.left, fn), substitute_atoms(f.right, fn))
    if isinstance(f, Until):
        return Until(substitute_atoms(f.left, fn), substitute_atoms(f.right, fn))
    if isinstance(f, Release):
        return Release(substitute_atoms(f.left, fn), substitute_atoms(f.right, fn))
    return f


def simplify(f: Formula) -> Formula:
    """Constant folding; leaves non-constant structure untouched."""
    if isinstance(f, Not):
        s = simplify(f.sub)
        if isinstance(s, TrueF):
            return FALSE
        if isinstance(s, FalseF):
            return TRUE
        if isinstance(s, Not):
            return s.sub
        return Not(s)
    if isinstance(f, Next):
        s = simplify(f.sub)
        if isinstance(s, (TrueF, FalseF)):
            return s
        return Next(s)
    if isinstance(f, And):
        l, r = simplify(f.left), simplify(f.right)
        if isinstance(l, FalseF) or isinstance(r, FalseF):
            return FALSE
        if isinstance(l, TrueF):
            return r
        if isinstance(r, TrueF):
            return l
        return And(l, r)
    if isinstance(f, Or):
        l, r = simplify(f.left), simplify(f.right)
        if isinstance(l, TrueF) or isinstance(r, TrueF):
            return TRUE
        if isinstance(l, FalseF):
            return r
        if isinstance(r, FalseF):
            return l
        return Or(l, r)
    if isinstance(f, Until):
        l, r = simplify(f.left), simplify(f.right)
        if isinstance(r, (TrueF, FalseF)):
            return r
        return Until(l, r)
    if isinstance(f, Release):
        l, r = simplify(f.left), simplify(f.right)
        if isinstance(r, (TrueF, FalseF)):
            return r
        if isinstance(l, TrueF):
            return r
        return Release(l, r)
    return f


def nnf(f: Formula) -> Formula:
    """Negation normal form; Not survives only directly on atoms."""
    if isinstance(f, Not):
        g = f.sub
        if isinstance(g, TrueF):
            return FALSE
        if isinstance(g, FalseF):
            return TRUE
        if isinstance(g, Atom):
            return f
        if isinstance(g, Not):
            return nnf(g.sub)
        if isinstance(g, And):
            return Or(nnf(Not(g.left)), nnf(Not(g.right)))
        if isinstance(g, Or):
            return And(nnf(Not(g.left)), nnf(Not(g.right)))
        if isinstance(g, Next):
            return Next(nnf(Not(g.sub)))
        if isinstance(g, Until):
            return Release(nnf(Not(g.left)), nnf(Not(g.right)))
        if isinstance(g, Release):
            return Until(nnf(Not(g.left)), nnf(Not(g.right)))
        raise TypeError(f"cannot negate {g!r}")
    if isinstance(f, And):
        return And(nnf(f.left), nnf(f.right))
    if isinstance(f, Or):
        return Or(nnf(f.left), nnf(f.right))
    if isinstance(f, Next):
        return Next(nnf(f.sub))
    if isinstance(f, Until):
        return Until(nnf(f.left), nnf(f.right))
    if isinstance(f, Release):
        return Release(nnf(f.left), nnf(f.right))
    return f


# ---------------------------------------------------------------------------
# Bounded/lasso evaluation.  Formulas must be in NNF.


def eval_lasso(f: Formula, atom_val, m: int, loop_start: int) -> list:
    """Exact LTL truth per position on the ultimately periodic path with
    positions 0..m-1 and successor of m-1 looping back to loop_start.

    atom_val(pos, payload) -> bool.  Until is a least fixpoint, release a
    greatest fixpoint; m sweeps reach them.
    """

    def succ(i):
        return i + 1 if i < m - 1 else loop_start

    def go(g) -> list:
        if isinstance(g, TrueF):
            return [True] * m
        if isinstance(g, FalseF):
            return [False] * m
        if isinstance(g, Atom):
            return [atom_val(i, g.payload) for i in range(m)]
        if isinstance(g, Not):
            assert isinstance(g.sub, Atom)
            return [not atom_val(i, g.sub.payload) for i in range(m)]
        if isinstance(g, And):
            l, r = go(g.left), go(g.right)
            return [a and b for a, b in zip(l, r)]
        if isinstance(g, Or):
            l, r = go(g.left), go(g.right)
            return [a or b for a, b in zip(l, r)]
        if isinstance(g, Next):
            s = go(g.sub)
            return [s[succ(i)] for i in range(m)]
        if isinstance(g, Until):
            l, r = go(g.left), go(g.right)
            res = list(r)
        elif isinstance(g, Release):
            l, r = go(g.left), go(g.right)
            res = [True] * m
        else:
            raise TypeError(f"unexpected node {g!r}")
        # backward in-place sweeps converge within a couple of passes
        until = isinstance(g, Until)
        for _ in range(m + 1):
            changed = False
            for i in range(m - 1, -1, -1):
                nxt = res[succ(i)]
                v = (r[i] or (l[i] and nxt)) if until else (r[i] and (l[i] or nxt))
                if v != res[i]:
                    res[i] = v
                    changed = True
            if not changed:
                break
        return res

    return go(f)


def eval_noloop(f: Formula, atom_val, m: int) -> list:
    """Pessimistic bounded semantics on a finite prefix of m positions:
    obligations beyond the prefix count as unwitnessed, so truth here is
    preserved by every infinite extension."""

    def go(g) -> list:
        if isinstance(g, TrueF):
            return [True] * m
        if isinstance(g, FalseF):
            return [False] * m
        if isinstance(g, Atom):
            return [atom_val(i, g.payload) for i in range(m)]
        if isinstance(g, Not):
            assert isinstance(g.sub, Atom)
            return [not atom_val(i, g.sub.payload) for i in range(m)]
        if isinstance(g, And):
            l, r = go(g.left), go(g.right)
            return [a and b for a, b in zip(l, r)]
        if isinstance(g, Or):
            l, r = go(g.left), go(g.right)
            return [a or b for a, b in zip(l, r)]
        if isinstance(g, Next):
            s = go(g.sub)
            return [s[i + 1] if i + 1 < m else False for i in range(m)]
        if isinstance(g, Until):
            l, r = go(g.left), go(g.right)
            res = [False] * m
            res[m - 1] = r[m - 1]
            for i in range(m - 2, -1, -1):
                res[i] = r[i] or (l[i] and res[i + 1])
            return res
        if isinstance(g, Release):
            l, r = go(g.left), go(g.right)
            res = [False] * m
            res[m - 1] = l[m - 1] and r[m - 1]
            for i in range(m - 2, -1, -1):
                res[i] = r[i] and (l[i] or res[i + 1])
            return res
        raise TypeError(f"unexpected node {g!r}")

    return go(f)


# ---------------------------------------------------------------------------
# Concrete semantics and translation


def evaluate_timediff(a: MaxPlusMatrix, x: Sequence, prop: TimeDiffProposition) -> bool:
    """Exact truth of `t_i ~ alpha` at a concrete point."""
    nxt = a.apply(x)
    t = nxt[prop.i - 1] - Fraction(x[prop.i - 1])
    if prop.op == "<":
        return t < prop.alpha
    if prop.op == "<=":
        return t <= prop.alpha
    if prop.op == ">":
        return t > prop.alpha
    return t >= prop.alpha


def atom_constant(a: MaxPlusMatrix, prop: TimeDiffProposition) -> Optional[bool]:
    """Tautology/contradiction status from the diagonal entry, if decidable.

    The gap t_i can never fall below a finite A(i,i), so `t_i >= alpha` is
    a tautology when the diagonal meets alpha, and `t_i <= alpha` (or <)
    a contradiction when it exceeds alpha.
    """
    row = prop.i - 1
    beta = a.entries[row][row]
    alpha = to_scaled(prop.alpha, a.scale)
    if beta is not None:
        if prop.op == ">=" and beta >= alpha:
            return True
        if prop.op == ">" and beta > alpha:
            return True
        if prop.op == "<=" and alpha < beta:
            return False
        if prop.op == "<" and alpha <= beta:
            return False
    masked = [j for j in a.row_finite_columns(row) if j != row]
    if not masked:
        # only the diagonal is finite: t_i == beta identically
        assert beta is not None
        if prop.op == "<":
            return alpha > beta
        if prop.op == "<=":
            return alpha >= beta
        if prop.op == ">":
            return beta > alpha
        return beta >= alpha
    return None


def translate_atom(a: MaxPlusMatrix, prop: TimeDiffProposition, pred_index: dict) -> Formula:
    """Predicate clause for one atom: a disjunction of its predicates for
    lower-bound atoms, a conjunction for upper-bound ones; constants when
    the diagonal already decides the atom."""
    const = atom_constant(a, prop)
    if const is not None:
        return TRUE if const else FALSE
    alpha = to_scaled(prop.alpha, a.scale)
    preds = predicates_from_timediff(a, prop.i, prop.op, alpha)
    assert preds, "non-constant atom must produce predicates"
    leaves = [Atom(pred_index[p]) for p in preds]
    combined = leaves[0]
    for leaf in leaves[1:]:
        combined = Or(combined, leaf) if prop.op in (">", ">=") else And(combined, leaf)
    return combined


def translate(a: MaxPlusMatrix, f: Formula, pred_index: dict) -> Formula:
    """Rewrite a time-difference formula over abstraction predicates."""
    return simplify(substitute_atoms(f, lambda p: translate_atom(a, p, pred_index)))


def _match_eventually_always_atom(f: Formula) -> Optional[TimeDiffProposition]:
    """Match the desugared shape of `F G (atom)`."""
    if (
        isinstance(f, Until)
        and isinstance(f.left, TrueF)
        and isinstance(f.right, Not)
        and isinstance(f.right.sub, Until)
        and isinstance(f.right.sub.left, TrueF)
        and isinstance(f.right.sub.right, Not)
        and isinstance(f.right.sub.right.sub, Atom)
    ):
        return f.right.sub.right.sub.payload
    return None


@dataclass
class DirectResult:
    verdict: str  # "true" | "false" | "unknown"
    residual: Formula
    reason: Optional[str] = None


def direct_check(a: MaxPlusMatrix, f: Formula) -> DirectResult:
    """Verdicts obtainable without abstraction: diagonal-driven constant
    substitution, and the eigenvalue rule for `F G (t_i ~ alpha)`."""

    def sub(prop):
        c = atom_constant(a, prop)
        if c is None:
            return Atom(prop)
        return TRUE if c else FALSE

    residual = simplify(substitute_atoms(f, sub))
    if isinstance(residual, TrueF):
        return DirectResult("true", residual, "tautology")
    if isinstance(residual, FalseF):
        return DirectResult("false", residual, "contradiction")

    prop = _match_eventually_always_atom(residual)
    if prop is not None and is_irreducible(a):
        lam = eigenvalue(a)
        if prop.op in (">", ">=") and lam < prop.alpha:
            return DirectResult("false", residual, f"eigenvalue {lam} < {prop.alpha}")
        if prop.op in ("<", "<=") and lam > prop.alpha:
            return DirectResult("false", residual, f"eigenvalue {lam} > {prop.alpha}")
    return DirectResult("unknown", residual)
