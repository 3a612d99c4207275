"""Bounded counterexample search, spuriousness analysis, and refinement.

The search enumerates bounded abstract paths explicitly (no SAT encoding;
the abstractions here are desk-sized) and evaluates LTL exactly on lasso
paths and pessimistically on no-loop prefixes.  Candidate counterexamples
are replayed as exact DBM chains; a chain that empties is spurious and
names a pivot state, which gets split by successor preimages.  For
irreducible systems the search is complete at transient + cyclicity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .abstraction import (
    AbstractState,
    AbstractTransitionSystem,
    generate_transitions,
    initial_state_ids,
)
from .dbm import DBM, EMPTY, dbms_equal, image, intersect, point_dbm, preimage, sample
from .ltl import Formula, FalseF, Not, TrueF, nnf, simplify
from .maxplus import MaxPlusMatrix, SpectralProfile, is_irreducible, transient_cyclicity


@dataclass(frozen=True)
class AbstractPath:
    """A bounded path s_0 .. s_k; for a lasso, states[loop_start - 1] ==
    states[-1] and the loop is states[loop_start:]."""

    kind: str  # "noloop" | "lasso"
    states: tuple
    loop_start: Optional[int] = None

    @property
    def stem(self) -> tuple:
        return self.states if self.kind == "noloop" else self.states[: self.loop_start]

    @property
    def loop(self) -> tuple:
        return () if self.kind == "noloop" else self.states[self.loop_start:]

    def describe(self, names: dict) -> str:
        if self.kind == "noloop":
            return " -> ".join(names[s] for s in self.states)
        stem = " ".join(names[s] for s in self.stem)
        loop = " ".join(names[s] for s in self.loop)
        return f"{stem} ({loop})^w"


@dataclass
class SpuriousnessResult:
    status: str  # "real" | "spurious" | "undecided"
    witnesses: list  # DBM chain, one per surviving unrolled position
    pivot_state: Optional[int] = None
    pivot_pos: Optional[int] = None


@dataclass
class Counterexample:
    path: AbstractPath
    witnesses: list
    positions: list  # unrolled state indices aligned with witnesses
    concrete_initial: tuple  # real-valued Fractions


@dataclass
class Verdict:
    outcome: str  # "holds" | "violated" | "undecided"
    counterexample: Optional[Counterexample]
    stats: dict
    reason: str = ""


# ---------------------------------------------------------------------------
# Bounded search


def find_counterexample(ts: AbstractTransitionSystem, neg: Formula, k: int):
    """First path of length exactly k witnessing the negated property.

    DFS explores initial states and successors in descending index order;
    lasso decompositions are tried with the shortest stem first.
    """
    from .ltl import eval_lasso, eval_noloop

    if k < 1 or isinstance(neg, FalseF):
        return None
    valuation = {s.index: s.valuation for s in ts.states}
    succ_desc = {i: sorted(tt, reverse=True) for i, tt in ts.transitions.items()}

    def check(seq):
        vals = [valuation[s] for s in seq]

        def atom_val(pos, payload):
            return vals[pos][payload]

        for l in range(1, k + 1):
            if seq[l - 1] == seq[k]:
                if eval_lasso(neg, atom_val, k, l - 1)[0]:
                    return AbstractPath("lasso", tuple(seq), l)
        if len(set(seq)) == k + 1:
            if eval_noloop(neg, atom_val, k + 1)[0]:
                return AbstractPath("noloop", tuple(seq))
        return None

    def dfs(seq):
        if len(seq) == k + 1:
            return check(seq)
        for nxt in succ_desc[seq[-1]]:
            seq.append(nxt)
            found = dfs(seq)
            seq.pop()
            if found is not None:
                return found
        return None

    for s0 in sorted(ts.initial, reverse=True):
        found = dfs([s0])
        if found is not None:
            return found
    return None


# ---------------------------------------------------------------------------
# Spuriousness


def _start_region(ts, state_idx, x_region):
    s = ts.state_by_index(state_idx)
    if x_region is None:
        return s.region
    return intersect(s.region, x_region)


def is_spurious_noloop(ts, states: Sequence[int], x_region=None) -> SpuriousnessResult:
    """Forward DBM replay of a no-loop path; spurious iff the chain dies."""
    chain = []
    e = _start_region(ts, states[0], x_region)
    if e is EMPTY:
        return SpuriousnessResult("spurious", chain, states[0], 0)
    chain.append(e)
    for pos in range(1, len(states)):
        prev = ts.state_by_index(states[pos - 1])
        e = intersect(image(e, prev.dynamics), ts.state_by_index(states[pos]).region)
        if e is EMPTY:
            pp = len(chain) - 1
            return SpuriousnessResult("spurious", chain, states[pp], pp)
        chain.append(e)
    return SpuriousnessResult("real", chain)


def is_spurious_lasso(
    ts, stem: Sequence[int], loop: Sequence[int], x_region=None, max_iter: int = 1000
) -> SpuriousnessResult:
    """Loop unrolling with periodicity detection.

    The loop is replayed until the running DBM either empties (spurious),
    repeats at the same loop phase (real), or max_iter passes elapse
    (undecided; cannot happen for irreducible dynamics)."""
    stem_res = is_spurious_noloop(ts, stem, x_region)
    if stem_res.status == "spurious":
        return stem_res
    chain = stem_res.witnesses
    m = len(loop)
    cur = ts.state_by_index(stem[-1])
    e = chain[-1]

    def unrolled_state(pos):
        return stem[pos] if pos < len(stem) else loop[(pos - len(stem)) % m]

    for _ in range(max_iter):
        for s_idx in loop:
            nxt = ts.state_by_index(s_idx)
            e = intersect(image(e, cur.dynamics), nxt.region)
            if e is EMPTY:
                pp = len(chain) - 1
                return SpuriousnessResult("spurious", chain, unrolled_state(pp), pp)
            chain.append(e)
            cur = nxt
        # compare against earlier chain entries at the same loop phase
        j = len(chain) - 1 - m
        while j >= len(stem):
            if dbms_equal(chain[j], e):
                return SpuriousnessResult("real", chain)
            j -= m
    return SpuriousnessResult("undecided", chain)


def pivot_state(stem: Sequence[int], loop: Sequence[int], num_dbms: int) -> int:
    """State carrying the last non-empty DBM of a spuriousness chain."""
    pos = num_dbms - 1
    if pos < len(stem):
        return stem[pos]
    return loop[(pos - len(stem)) % len(loop)]


# ---------------------------------------------------------------------------
# Refinement


def refine(ts: AbstractTransitionSystem, pivot_idx: int) -> AbstractTransitionSystem:
    """Split the pivot by successor preimages; the cells inherit its
    labels and dynamics and all transitions are rebuilt by one-step
    reachability."""
    pivot = ts.state_by_index(pivot_idx)
    succs = ts.transitions[pivot_idx]
    assert len(succs) >= 2, "pivot with a single successor cannot be spurious"
    cells = []
    for t in succs:
        target = ts.state_by_index(t)
        cell = intersect(pivot.region, preimage(target.region, pivot.dynamics))
        if cell is not EMPTY:
            cells.append(cell)
    assert len(cells) >= 2, "refinement failed to split the pivot"

    states = [s for s in ts.states if s.index != pivot_idx]
    next_idx = max(s.index for s in ts.states) + 1
    for offset, cell in enumerate(cells):
        suffix = chr(ord("a") + offset)
        states.append(
            AbstractState(
                next_idx + offset,
                pivot.name + suffix,
                pivot.valuation,
                cell,
                pivot.dynamics,
                pivot.labels,
            )
        )
    transitions = generate_transitions(ts.matrix, states)
    initial = initial_state_ids(states, ts.initial_region)
    return AbstractTransitionSystem(
        ts.matrix, ts.predicates, states, transitions, initial, ts.initial_region
    )


# ---------------------------------------------------------------------------
# Completeness threshold


def completeness_threshold(
    a: MaxPlusMatrix,
    ts: Optional[AbstractTransitionSystem] = None,
    profile: Optional[SpectralProfile] = None,
) -> int:
    """transient + cyclicity for irreducible matrices; otherwise a
    recurrence-diameter style fallback from the abstraction size."""
    if is_irreducible(a):
        if profile is None:
            profile = transient_cyclicity(a)
        return profile.completeness_bound
    if ts is None:
        raise ValueError("reducible matrix needs the abstraction for a fallback bound")
    return len(ts.states) + 1


# ---------------------------------------------------------------------------
# Concretization


def forward_chain(ts, positions: Sequence[int], x_region=None) -> list:
    chain = []
    e = _start_region(ts, positions[0], x_region)
    assert e is not EMPTY
    chain.append(e)
    for pos in range(1, len(positions)):
        prev = ts.state_by_index(positions[pos - 1])
        e = intersect(image(e, prev.dynamics), ts.state_by_index(positions[pos]).region)
        assert e is not EMPTY, "forward chain of a real path must not empty"
        chain.append(e)
    return chain


def chain_point(ts, positions: Sequence[int], witnesses: Sequence) -> tuple:
    """A concrete start point whose trajectory replays the witness chain.

    Chosen backwards: fix the difference profile at the end of the chain,
    then repeatedly pick a predecessor inside the previous witness whose
    successor reproduces the profile exactly (images are exact, so one
    always exists).  Returns real-valued Fractions.
    """
    x = sample(witnesses[-1])
    for pos in range(len(witnesses) - 2, -1, -1):
        dyn = ts.state_by_index(positions[pos]).dynamics
        cand = intersect(witnesses[pos], preimage(point_dbm(x), dyn))
        assert cand is not EMPTY
        x = sample(cand)
    scale = ts.matrix.scale
    return tuple(Fraction(v) / scale for v in x)


def build_counterexample(
    ts,
    path: AbstractPath,
    result: SpuriousnessResult,
    profile: Optional[SpectralProfile],
    x_region=None,
) -> Counterexample:
    if path.kind == "noloop":
        positions = list(path.states)
        witnesses = result.witnesses
    else:
        stem, loop = list(path.stem), list(path.loop)
        period = len(loop)
        # cover the transient plus one cyclicity window so the replayed
        # trace is demonstrably periodic
        k0 = profile.transient if profile is not None else 1
        cyc = profile.cyclicity if profile is not None else period
        passes = math.ceil((k0 + cyc + 1) / period) + 1
        positions = stem + loop * passes
        witnesses = forward_chain(ts, positions, x_region)
    x0 = chain_point(ts, positions, witnesses)
    return Counterexample(path, witnesses, positions, x0)


def simulate(a: MaxPlusMatrix, x0: Sequence, steps: int) -> list:
    traj = [tuple(Fraction(v) for v in x0)]
    for _ in range(steps):
        traj.append(a.apply(traj[-1]))
    return traj


# ---------------------------------------------------------------------------
# Top-level loop


def _prepare(a: MaxPlusMatrix, residual, x_region):
    """Abstraction plus negated translated property for the BMC loop."""
    from .abstraction import build_transition_system
    from .ltl import atoms_of, translate
    from .maxplus import to_scaled

    atom_specs = [
        (p.i, p.op, to_scaled(p.alpha, a.scale)) for p in atoms_of(residual)
    ]
    ts = build_transition_system(a, atom_specs, x_region)
    pred_index = {p: i for i, p in enumerate(ts.predicates)}
    phi = translate(a, residual, pred_index)
    neg = simplify(nnf(Not(phi)))
    return ts, neg


def verify(
    a: MaxPlusMatrix,
    x_region,
    formula,
    *,
    max_iter: int = 1000,
    use_direct: bool = True,
) -> Verdict:
    """Full pipeline: direct checks, abstraction, BMC with refinement up
    to the completeness threshold."""
    from .ltl import direct_check, parse

    if isinstance(formula, str):
        formula = parse(formula)
    a.check_regular()
    stats = {"refinements": 0, "bounds_explored": 0, "direct": False, "ct": None}

    if use_direct:
        dres = direct_check(a, formula)
        if dres.verdict == "true":
            stats["direct"] = True
            return Verdict("holds", None, stats, f"direct: {dres.reason}")
        if dres.verdict == "false":
            stats["direct"] = True
            return Verdict("violated", None, stats, f"direct: {dres.reason}")
        residual = dres.residual
    else:
        residual = formula

    ts, neg = _prepare(a, residual, x_region)

    irreducible = is_irreducible(a)
    profile = transient_cyclicity(a) if irreducible else None
    ct = (
        profile.completeness_bound
        if irreducible
        else completeness_threshold(a, ts)
    )
    stats["ct"] = ct

    if isinstance(neg, FalseF):
        return Verdict("holds", None, stats, "property is abstractly trivial")

    k = 1
    while k <= ct:
        stats["bounds_explored"] = k
        path = find_counterexample(ts, neg, k)
        if path is None:
            k += 1
            if not irreducible:
                ct = max(ct, len(ts.states) + 1)
                stats["ct"] = ct
            continue
        if path.kind == "noloop":
            res = is_spurious_noloop(ts, path.states, x_region)
        else:
            res = is_spurious_lasso(
                ts, list(path.stem), list(path.loop), x_region, max_iter
            )
        if res.status == "real":
            ce = build_counterexample(ts, path, res, profile, x_region)
            ce_names = {s.index: s.name for s in ts.states}
            return Verdict(
                "violated", ce, stats, f"counterexample {path.describe(ce_names)}"
            )
        if res.status == "undecided":
            return Verdict(
                "undecided", None, stats, "loop periodicity undecided within max_iter"
            )
        ts = refine(ts, res.pivot_state)
        stats["refinements"] += 1
    return Verdict("holds", None, stats, "no counterexample up to completeness threshold")


def empirical_threshold(a: MaxPlusMatrix, x_region, formula, *, max_iter: int = 1000) -> dict:
    """Empirical vs. analytic completeness thresholds for one system.

    Runs the BMC loop without the direct shortcuts.  When a real
    counterexample appears, the empirical threshold is the bound that
    produced it; when the property holds, it is the longest real no-loop
    path of the final abstraction (no longer bound carries information).
    """
    from .ltl import parse

    if isinstance(formula, str):
        formula = parse(formula)
    a.check_regular()
    ts, neg = _prepare(a, formula, x_region)
    irreducible = is_irreducible(a)
    profile = transient_cyclicity(a) if irreducible else None
    ct = profile.completeness_bound if irreducible else len(ts.states) + 1
    refinements = 0
    k = 1
    while k <= ct:
        path = find_counterexample(ts, neg, k)
        if path is None:
            k += 1
            if not irreducible:
                ct = max(ct, len(ts.states) + 1)
            continue
        if path.kind == "noloop":
            res = is_spurious_noloop(ts, path.states, x_region)
        else:
            res = is_spurious_lasso(
                ts, list(path.stem), list(path.loop), x_region, max_iter
            )
        if res.status == "real":
            return {
                "ct_empirical": k,
                "ct_lemma": ct,
                "outcome": "violated",
                "refinements": refinements,
            }
        if res.status == "undecided":
            return {
                "ct_empirical": None,
                "ct_lemma": ct,
                "outcome": "undecided",
                "refinements": refinements,
            }
        ts = refine(ts, res.pivot_state)
        refinements += 1
    return {
        "ct_empirical": longest_real_noloop(ts, x_region),
        "ct_lemma": ct,
        "outcome": "holds",
        "refinements": refinements,
    }


def longest_real_noloop(ts: AbstractTransitionSystem, x_region=None) -> int:
    """Longest distinct-state path from an initial state whose forward DBM
    chain survives; an empirical recurrence bound for the abstraction."""
    best = 0

    def dfs(state_idx, e, depth, visited):
        nonlocal best
        best = max(best, depth)
        st = ts.state_by_index(state_idx)
        for t in ts.transitions[state_idx]:
            if t in visited:
                continue
            e2 = intersect(image(e, st.dynamics), ts.state_by_index(t).region)
            if e2 is EMPTY:
                continue
            dfs(t, e2, depth + 1, visited | {t})

    for s0 in ts.initial:
        e = _start_region(ts, s0, x_region)
        if e is not EMPTY:
            dfs(s0, e, 0, {s0})
    return best
