"""Predicate abstraction of max-plus linear dynamics.

Predicates are difference inequalities x_i - x_j >= c (or > c) harvested
from the system matrix and from time-difference atoms.  Abstract states
are the non-empty cells of the arrangement those predicates induce; each
cell carries the affine dynamics active on it, and transitions come from
one-step reachability of exact DBM images.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional, Sequence

from .dbm import DBM, EMPTY, AffineDynamics, image, intersect
from .maxplus import MaxPlusMatrix, RegularityError


@dataclass(frozen=True)
class Predicate:
    """x_i - x_j >= c when s == 1, strict > when s == 0.

    Indices are 1-based; c is a scaled integer.
    """

    i: int
    j: int
    c: int
    s: int

    def negation(self) -> "Predicate":
        return Predicate(self.j, self.i, -self.c, 1 - self.s)

    def dbm(self, n: int) -> DBM:
        # x_i - x_j >= c  <=>  x_j - x_i <= -c   (strict when s == 0)
        return DBM.from_constraints(n, [(self.j - 1, self.i - 1, -self.c, self.s == 0)])

    def negation_dbm(self, n: int) -> DBM:
        # not(x_i - x_j >= c)  <=>  x_i - x_j < c
        return DBM.from_constraints(n, [(self.i - 1, self.j - 1, self.c, self.s == 1)])

    def holds_at_scaled(self, x: Sequence) -> bool:
        diff = x[self.i - 1] - x[self.j - 1]
        return diff >= self.c if self.s == 1 else diff > self.c

    def as_tuple(self, scale: int = 1):
        c = Fraction(self.c, scale)
        return (self.i, self.j, int(c) if c.denominator == 1 else c, self.s)


def predicates_from_matrix(a: MaxPlusMatrix):
    """Per-row predicate lists plus their deduplicated union, in the
    row-major order the rows produce them."""
    a.check_regular()
    per_row = []
    union: list[Predicate] = []
    seen = set()
    for k in range(a.n):
        fin = a.row_finite_columns(k)
        row_preds = []
        for jj in range(1, len(fin)):
            for ii in range(jj):
                i, j = fin[ii], fin[jj]
                p = Predicate(i + 1, j + 1, a.entries[k][j] - a.entries[k][i], 1)
                row_preds.append(p)
                if p not in seen:
                    seen.add(p)
                    union.append(p)
        per_row.append(row_preds)
    return per_row, union


def predicates_from_timediff(a: MaxPlusMatrix, i: int, op: str, alpha_scaled: int):
    """Predicates for the atom `t_i ~ alpha`, diagonal entry masked out.

    i is 1-based; returns [] when the masked row has no finite entry.
    """
    row = i - 1
    fin = [j for j in a.row_finite_columns(row) if j != row]
    preds = []
    if op in (">", ">="):
        s = 1 if op == ">=" else 0
        for j in fin:
            preds.append(Predicate(j + 1, i, alpha_scaled - a.entries[row][j], s))
    elif op in ("<", "<="):
        s = 1 if op == "<=" else 0
        for j in fin:
            preds.append(Predicate(i, j + 1, a.entries[row][j] - alpha_scaled, s))
    else:
        raise ValueError(f"unknown comparison {op!r}")
    return preds


def generate_abstract_states(predicates: Sequence[Predicate], n: int):
    """Branch-and-prune enumeration of satisfiable predicate valuations.

    Returns (valuations, regions): parallel lists, regions canonical and
    pairwise disjoint, jointly covering R^n.  For each predicate the
    false branch precedes the true branch, which fixes state numbering.
    """
    cells = [((), DBM.universe(n))]
    for p in predicates:
        pos = p.dbm(n)
        neg = p.negation_dbm(n)
        nxt = []
        for val, region in cells:
            d = intersect(region, neg)
            if d is not EMPTY:
                nxt.append((val + (False,), d))
        for val, region in cells:
            d = intersect(region, pos)
            if d is not EMPTY:
                nxt.append((val + (True,), d))
        cells = nxt
    return [val for val, _ in cells], [region for _, region in cells]


def affine_dynamics_for_state(
    a: MaxPlusMatrix,
    valuation: Sequence[bool],
    per_row: Sequence[Sequence[Predicate]],
    pred_index: dict,
) -> AffineDynamics:
    """Active affine coefficient on a cell, read off the row's predicate
    values.

    A predicate (i, j, A(k,j)-A(k,i), 1) true on the cell means column i
    weakly dominates column j in row k; false means j strictly dominates
    i.  The unique winner is the column never strictly beaten that weakly
    beats every later column: all its left-predicates true and all its
    right-predicates false.
    """
    g = []
    for k in range(a.n):
        fin = [j + 1 for j in a.row_finite_columns(k)]
        winner = None
        for cand in fin:
            ok = True
            for p in per_row[k]:
                v = valuation[pred_index[p]]
                if (p.i == cand and not v) or (p.j == cand and v):
                    ok = False
                    break
            if ok:
                winner = cand
                break
        assert winner is not None, "cell valuation fixes no dominant column"
        g.append(winner - 1)
    offsets = tuple(a.entries[k][gk] for k, gk in enumerate(g))
    return AffineDynamics(tuple(g), offsets)


@dataclass(frozen=True)
class AbstractState:
    index: int
    name: str
    valuation: tuple
    region: DBM
    dynamics: AffineDynamics
    labels: frozenset  # positions of predicates true in this state


@dataclass
class AbstractTransitionSystem:
    matrix: MaxPlusMatrix
    predicates: list
    states: list
    transitions: dict  # index -> tuple of successor indices, ascending
    initial: tuple
    initial_region: Optional[DBM] = None  # None = full space

    def successors(self, idx: int) -> tuple:
        return self.transitions[idx]

    def state_by_index(self, idx: int) -> AbstractState:
        for s in self.states:
            if s.index == idx:
                return s
        raise KeyError(idx)

    def region_with_initial(self, state: AbstractState):
        if self.initial_region is None:
            return state.region
        return intersect(state.region, self.initial_region)

    def abstract(self, x: Sequence) -> AbstractState:
        """The unique state whose region contains the (real-valued) point."""
        xs = [Fraction(v) * self.matrix.scale for v in x]
        hits = [s for s in self.states if s.region.contains(xs)]
        if len(hits) != 1:
            raise RuntimeError(
                f"partition violated: point lies in {len(hits)} regions"
            )
        return hits[0]


def generate_transitions(matrix: MaxPlusMatrix, states: Sequence[AbstractState]) -> dict:
    """One-step reachability: edge when the exact image meets a region."""
    trans = {}
    for s in states:
        img = image(s.region, s.dynamics)
        succ = [t.index for t in states if intersect(img, t.region) is not EMPTY]
        trans[s.index] = tuple(sorted(succ))
    return trans


def initial_state_ids(states: Sequence[AbstractState], x_region) -> tuple:
    """States whose region meets the initial set (None or EMPTY-free DBM)."""
    if x_region is None:
        return tuple(sorted(s.index for s in states))
    return tuple(
        sorted(s.index for s in states if intersect(s.region, x_region) is not EMPTY)
    )


def build_transition_system(
    a: MaxPlusMatrix,
    atoms: Sequence[tuple] = (),
    x_region: Optional[DBM] = None,
) -> AbstractTransitionSystem:
    """Full abstraction pipeline for a regular matrix.

    atoms: (i, op, alpha_scaled) triples whose time-difference predicates
    join the matrix predicates (matrix copies win deduplication).
    """
    per_row, p_mat = predicates_from_matrix(a)
    preds = list(p_mat)
    seen = set(preds)
    for i, op, alpha_scaled in atoms:
        for p in predicates_from_timediff(a, i, op, alpha_scaled):
            if p not in seen:
                seen.add(p)
                preds.append(p)
    pred_index = {p: idx for idx, p in enumerate(preds)}

    valuations, regions = generate_abstract_states(preds, a.n)
    states = []
    for idx, (val, region) in enumerate(zip(valuations, regions)):
        dyn = affine_dynamics_for_state(a, val, per_row, pred_index)
        labels = frozenset(i for i, b in enumerate(val) if b)
        states.append(AbstractState(idx, f"s{idx}", val, region, dyn, labels))
    trans = generate_transitions(a, states)
    initial = initial_state_ids(states, x_region)
    return AbstractTransitionSystem(a, preds, states, trans, initial, x_region)
