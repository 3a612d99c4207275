"""Difference-bound matrices over pure difference constraints.

Entry (i, j) bounds x_i - x_j from above by a (value, strict) pair; values
are exact integers (scaled by the caller) or +inf.  There is no clock-zero
row: every region handled here is invariant under uniform shifts, so
absolute bounds never arise.  Emptiness is a distinguished result
(``EMPTY``), not an inconsistent matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple

INF = float("inf")


class Bound(Tuple):
    """(value, strict) upper bound on a difference; value int or +inf."""

    __slots__ = ()

    def __new__(cls, value, strict: bool = False):
        if value == INF:
            strict = False
        return tuple.__new__(cls, (value, strict))

    @property
    def value(self):
        return self[0]

    @property
    def strict(self) -> bool:
        return self[1]

    def _key(self):
        # a strict bound is tighter than a non-strict one at the same value
        return (self[0], 0 if self[1] else 1)

    def __lt__(self, other) -> bool:
        return self._key() < other._key()

    def __le__(self, other) -> bool:
        return self._key() <= other._key()

    def add(self, other: "Bound") -> "Bound":
        if self[0] == INF or other[0] == INF:
            return TOP
        return Bound(self[0] + other[0], self[1] or other[1])

    def shift(self, delta: int) -> "Bound":
        if self[0] == INF:
            return TOP
        return Bound(self[0] + delta, self[1])

    def admits(self, diff) -> bool:
        """Does the difference value satisfy this bound?"""
        if self[0] == INF:
            return True
        return diff < self[0] if self[1] else diff <= self[0]


TOP = Bound(INF, False)
ZERO = Bound(0, False)


class _Empty:
    """Distinguished empty region."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Empty"

    def is_empty(self) -> bool:
        return True


EMPTY = _Empty()


@dataclass(frozen=True)
class AffineDynamics:
    """x'_i = x_{g_i} + offset_i with g 0-based and offsets scaled integers."""

    g: tuple
    offsets: tuple

    @property
    def coefficients(self) -> tuple:
        """1-based coefficient vector."""
        return tuple(gi + 1 for gi in self.g)

    def apply_scaled(self, x: Sequence) -> tuple:
        return tuple(x[gi] + off for gi, off in zip(self.g, self.offsets))


@dataclass(frozen=True)
class DBM:
    n: int
    bounds: tuple  # n x n tuple of Bound
    canonical: bool = False

    @classmethod
    def universe(cls, n: int) -> "DBM":
        b = tuple(
            tuple(ZERO if i == j else TOP for j in range(n)) for i in range(n)
        )
        return cls(n, b, canonical=True)

    @classmethod
    def from_constraints(cls, n: int, constraints: Iterable[tuple]) -> "DBM":
        """constraints: (i, j, value, strict) meaning x_i - x_j <= value
        (or < when strict); indices 0-based, values scaled integers."""
        rows = [[ZERO if i == j else TOP for j in range(n)] for i in range(n)]
        for i, j, value, strict in constraints:
            cand = Bound(value, strict)
            if cand < rows[i][j]:
                rows[i][j] = cand
        return cls(n, tuple(tuple(r) for r in rows))

    def bound(self, i: int, j: int) -> Bound:
        return self.bounds[i][j]

    def is_empty(self) -> bool:
        return False

    def canonicalize(self):
        """All-pairs shortest-path closure; EMPTY on a negative diagonal."""
        if self.canonical:
            return self
        n = self.n
        b = [list(row) for row in self.bounds]
        for k in range(n):
            for i in range(n):
                bik = b[i][k]
                if bik[0] == INF:
                    continue
                for j in range(n):
                    cand = bik.add(b[k][j])
                    if cand < b[i][j]:
                        b[i][j] = cand
        for i in range(n):
            if b[i][i] < ZERO:
                return EMPTY
        return DBM(n, tuple(tuple(row) for row in b), canonical=True)

    def with_constraint(self, i: int, j: int, value, strict: bool) -> "DBM":
        rows = [list(row) for row in self.bounds]
        cand = Bound(value, strict)
        if cand < rows[i][j]:
            rows[i][j] = cand
        return DBM(self.n, tuple(tuple(r) for r in rows))

    def contains(self, x: Sequence) -> bool:
        """Membership of a point given in the same scaled units as bounds."""
        if len(x) != self.n:
            raise ValueError("dimension mismatch")
        for i in range(self.n):
            for j in range(self.n):
                if i != j and not self.bounds[i][j].admits(x[i] - x[j]):
                    return False
        return True

    def constraint_lines(self, scale: int = 1) -> list:
        """Debug dump: one line `x<i> - x<j> <op> <c>` per finite bound."""
        lines = []
        for i in range(self.n):
            for j in range(self.n):
                b = self.bounds[i][j]
                if i == j or b[0] == INF:
                    continue
                op = "<" if b[1] else "<="
                c = Fraction(b[0], scale)
                cs = str(int(c)) if c.denominator == 1 else str(float(c))
                lines.append(f"x{i + 1} - x{j + 1} {op} {cs}")
        return lines


def intersect(d1, d2):
    """Entrywise minimum followed by canonicalization; EMPTY propagates."""
    if d1 is EMPTY or d2 is EMPTY:
        return EMPTY
    if d1.n != d2.n:
        raise ValueError("dimension mismatch")
    rows = tuple(
        tuple(min(a, b, key=Bound._key) for a, b in zip(r1, r2))
        for r1, r2 in zip(d1.bounds, d2.bounds)
    )
    return DBM(d1.n, rows).canonicalize()


def image(d: DBM, dyn: AffineDynamics):
    """Exact forward image under the affine dynamics.

    The bound on x'_i - x'_j is the (canonical, hence tightest) bound on
    x_{g_i} - x_{g_j}, shifted by offset_i - offset_j; equal coefficients
    pin the difference exactly.
    """
    if d is EMPTY:
        return EMPTY
    d = d.canonicalize()
    if d is EMPTY:
        return EMPTY
    n = d.n
    rows = [[ZERO if i == j else TOP for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            delta = dyn.offsets[i] - dyn.offsets[j]
            if dyn.g[i] == dyn.g[j]:
                rows[i][j] = Bound(delta, False)
            else:
                rows[i][j] = d.bounds[dyn.g[i]][dyn.g[j]].shift(delta)
    return DBM(n, tuple(tuple(r) for r in rows)).canonicalize()


def preimage(d: DBM, dyn: AffineDynamics):
    """Constraints of d rewritten over pre-step variables via
    x'_k = x_{g_k} + offset_k.  Exact as a constraint rewriting; callers
    intersect with the source region themselves."""
    if d is EMPTY:
        return EMPTY
    n = d.n
    out = DBM.universe(n)
    rows = [list(row) for row in out.bounds]
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            b = d.bounds[i][j]
            if b[0] == INF:
                continue
            shifted = b.shift(dyn.offsets[j] - dyn.offsets[i])
            gi, gj = dyn.g[i], dyn.g[j]
            if gi == gj:
                if not shifted.admits(0):
                    return EMPTY
                continue
            if shifted < rows[gi][gj]:
                rows[gi][gj] = shifted
    return DBM(n, tuple(tuple(r) for r in rows)).canonicalize()


def sample(d: DBM, rng=None, span: int = 50, granularity: int = 16):
    """A point of a non-empty canonical DBM, as scaled Fractions with the
    last coordinate pinned to 0 (regions are shift-invariant cones).

    Assigns coordinates greedily; closure guarantees each feasible
    interval is non-empty.  ``rng`` randomises the position inside open
    intervals, otherwise midpoints are used.
    """
    if d is EMPTY:
        raise ValueError("cannot sample the empty region")
    d = d.canonicalize()
    if d is EMPTY:
        raise ValueError("cannot sample the empty region")
    n = d.n
    x = [None] * n
    x[n - 1] = Fraction(0)
    cap = None  # scaled box for unbounded directions, set per call below

    for i in range(n - 1):
        lo, lo_strict = None, False
        hi, hi_strict = None, False
        for j in range(n):
            if x[j] is None:
                continue
            bij = d.bounds[i][j]  # x_i - x_j <= bij
            if bij[0] != INF:
                cand = x[j] + bij[0]
                if hi is None or cand < hi or (cand == hi and bij[1]):
                    hi, hi_strict = cand, bij[1]
            bji = d.bounds[j][i]  # x_j - x_i <= bji  =>  x_i >= x_j - bji
            if bji[0] != INF:
                cand = x[j] - bji[0]
                if lo is None or cand > lo or (cand == lo and bji[1]):
                    lo, lo_strict = cand, bji[1]
        if cap is None:
            cap = span * _infer_scale(d)
        if lo is None and hi is None:
            lo, hi, lo_strict, hi_strict = Fraction(-cap), Fraction(cap), False, False
        elif lo is None:
            lo, lo_strict = hi - cap, False
        elif hi is None:
            hi, hi_strict = lo + cap, False
        if lo == hi:
            x[i] = lo
            continue
        if rng is not None:
            num = rng.randint(1, granularity - 1)
        else:
            num = granularity // 2
        x[i] = lo + (hi - lo) * Fraction(num, granularity)
        if not lo_strict and rng is not None and rng.random() < 0.25:
            x[i] = lo
        elif not hi_strict and rng is not None and rng.random() < 0.25:
            x[i] = hi
    return tuple(x)


def _infer_scale(d: DBM) -> int:
    best = 1
    for row in d.bounds:
        for b in row:
            if b[0] != INF and b[0] != 0:
                best = max(best, abs(b[0]))
    return best


def point_dbm(x: Sequence) -> DBM:
    """DBM pinning all pairwise differences to those of the given point."""
    n = len(x)
    cons = []
    for i in range(n):
        for j in range(n):
            if i != j:
                diff = x[i] - x[j]
                if isinstance(diff, Fraction) and diff.denominator == 1:
                    diff = int(diff)
                cons.append((i, j, diff, False))
    return DBM.from_constraints(n, cons).canonicalize()


def dbms_equal(d1, d2) -> bool:
    if d1 is EMPTY or d2 is EMPTY:
        return d1 is d2
    return d1.canonicalize().bounds == d2.canonicalize().bounds
