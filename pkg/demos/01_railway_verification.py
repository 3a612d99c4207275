"""
Verifying a two-station railway network
=======================================

A classic max-plus linear system models two connected railway stations.
Departures at each station wait for the arrival of trains from both
directions, so the k-th departure times x1(k), x2(k) obey

    x1(k+1) = max(2 + x1(k), 5 + x2(k))
    x2(k+1) = max(3 + x1(k), 3 + x2(k))

i.e. x(k+1) = A (x) x(k) over the max-plus semiring with
A = [[2, 5], [3, 3]].  This script walks through the questions a
timetable designer would ask about the inter-departure times
t_i(k) = x_i(k+1) - x_i(k).
"""

from mplverify import (
    MaxPlusMatrix,
    eigenvalue,
    mat_vec,
    transient_cyclicity,
    verify,
)

a = MaxPlusMatrix.from_rows([[2, 5], [3, 3]])

# ---------------------------------------------------------------------------
# The spectrum: long-run behaviour is governed by the max-plus eigenvalue.
# Every trajectory eventually repeats with period `cyclicity`, growing by
# `eigenvalue` per step; `transient` says how long that takes to kick in.

profile = transient_cyclicity(a)
print("eigenvalue (cycle time):", eigenvalue(a))
print("transient k0:", profile.transient)
print("cyclicity c:", profile.cyclicity)

# A quick simulation from simultaneous departures at time 0 shows the
# periodic regime: the departure-time increments settle into a cycle.

x = (0, 0)
print("\nstep  x1      x2      t1   t2")
for k in range(8):
    nxt = mat_vec(a, x)
    print(f"{k:>4}  {str(x[0]):<7} {str(x[1]):<7} {str(nxt[0] - x[0]):<4} {nxt[1] - x[1]}")
    x = nxt

# ---------------------------------------------------------------------------
# Specification 1: "some departure of station 1 is at most 5 time units
# after the previous one".  This holds for every initial schedule.

v = verify(a, None, "F (t1 <= 5)")
print("\nF (t1 <= 5):", v.outcome, "-", v.reason)

# ---------------------------------------------------------------------------
# Specification 2: "from some point on, station 1 always departs within 5
# time units".  The first abstraction is too coarse: bounded search finds
# an abstract counterexample, the engine proves it spurious and refines
# once, after which the property is proved for all initial schedules.

v = verify(a, None, "F G (t1 <= 5)")
print("F G (t1 <= 5):", v.outcome, f"({v.stats['refinements']} refinement)")

# ---------------------------------------------------------------------------
# Specification 3: some properties never need an abstraction at all.  The
# diagonal of A forces t2 >= 3 everywhere, so "eventually t2 <= 2" is a
# contradiction; and the eigenvalue 4 rules out "eventually always
# t1 >= 5", since increments average 4 per step in the long run.

for spec in ["F (t2 <= 2)", "F G (t1 >= 5)"]:
    v = verify(a, None, spec)
    print(f"{spec}:", v.outcome, "-", v.reason)

# ---------------------------------------------------------------------------
# When a property fails through the bounded search, the verdict carries a
# concrete counterexample schedule that can be replayed step by step.

v = verify(a, None, "F G (t1 >= 5)", use_direct=False)
ce = v.counterexample
print("\nwithout the direct shortcut:", v.outcome, "-", v.reason)
print("counterexample initial schedule:", tuple(map(str, ce.concrete_initial)))
