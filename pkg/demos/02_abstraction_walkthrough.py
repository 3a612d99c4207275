"""
Inside the abstraction: predicates, regions, and refinement
===========================================================

The verifier works on a finite quotient of the infinite state space R^n.
This script builds that quotient for the railway matrix by hand, showing
each ingredient: the difference predicates harvested from the matrix, the
DBM regions they induce, the affine dynamics active on each region, the
one-step transition relation, and finally one round of counterexample-
guided refinement.
"""

from fractions import Fraction

from mplverify import (
    MaxPlusMatrix,
    build_transition_system,
    find_counterexample,
    is_spurious_lasso,
    parse,
    refine,
    to_scaled,
)
from mplverify.abstraction import predicates_from_matrix, predicates_from_timediff
from mplverify.bmc import _prepare

a = MaxPlusMatrix.from_rows([[2, 5], [3, 3]])
sc = a.scale

# ---------------------------------------------------------------------------
# Step 1: predicates.  Each row of A contributes comparisons that decide
# which column attains the row maximum: row 1 compares 2 + x1 vs 5 + x2,
# giving the predicate x1 - x2 >= 3; row 2 gives x1 - x2 >= 0.

per_row, p_mat = predicates_from_matrix(a)
print("matrix predicates:")
for p in p_mat:
    print("   ", p.as_tuple(sc), f" i.e. x{p.i} - x{p.j} >= {Fraction(p.c, sc)}")

# A time-difference atom adds its own predicates.  For t1 <= 5 the only
# off-diagonal entry of row 1 yields x1 - x2 >= 0, already present above.

p_time = predicates_from_timediff(a, 1, "<=", to_scaled(5, sc))
print("predicates for t1 <= 5:", [p.as_tuple(sc) for p in p_time])

# ---------------------------------------------------------------------------
# Step 2: abstract states.  The satisfiable truth assignments of the two
# predicates carve R^2 into three cones of the difference x1 - x2, and on
# each cone the max-plus dynamics is affine: x'_i = x_{g_i} + offset.

ts = build_transition_system(a, [(1, "<=", to_scaled(5, sc))])
for s in ts.states:
    print(f"\n{s.name}: region")
    for line in s.region.constraint_lines(sc):
        print("     ", line)
    print("      coefficients g =", s.dynamics.coefficients,
          " labels =", sorted(s.labels))

# Transitions are one-step reachability: an edge wherever the exact image
# of a region meets another region.

print("\ntransitions:")
for i, succ in sorted(ts.transitions.items()):
    for j in succ:
        print(f"    s{i} -> s{j}")

# ---------------------------------------------------------------------------
# Step 3: a spurious counterexample.  For "F G (t1 <= 5)" the bounded
# search finds the abstract lasso s1 (s0 s1)^w at bound 2.  Replaying it
# as a chain of DBMs shows the loop cannot be traversed twice: the chain
# narrows to the single difference x1 - x2 = 2 and then dies.

ts0, neg = _prepare(a, parse("F G (t1 <= 5)"), None)
path = find_counterexample(ts0, neg, 2)
print("\nabstract counterexample:", path.describe({s.index: s.name for s in ts0.states}))
res = is_spurious_lasso(ts0, list(path.stem), list(path.loop))
print("spuriousness:", res.status, " pivot: s%d" % res.pivot_state)
for step, d in enumerate(res.witnesses):
    print(f"    after step {step}:", "; ".join(d.constraint_lines(sc)))

# ---------------------------------------------------------------------------
# Step 4: refinement.  The pivot s1 is split along the preimages of its
# two successors, separating the part of the region that loops from the
# part that escapes.  The spurious lasso disappears.

ts1 = refine(ts0, res.pivot_state)
print("\nrefined states:")
for s in ts1.states:
    print(f"    {s.name}:", "; ".join(s.region.constraint_lines(sc)),
          " ->", [f"s{j}" for j in ts1.transitions[s.index]])
print("lasso still found?", find_counterexample(ts1, neg, 2))
