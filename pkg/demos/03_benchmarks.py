"""
Benchmark campaigns on random systems
=====================================

Two campaigns over randomly generated max-plus matrices (each row gets m
finite entries at random positions with uniform integer values):

* abstraction timing - how the cost of building the finite quotient
  (predicates, abstract states, affine dynamics) scales with dimension;
* completeness thresholds - how the analytic bound transient + cyclicity
  compares with the bound at which the exhaustive bounded search actually
  settles.

Both reports are printable tables backed by CSV for further analysis.
"""

from mplverify import BenchmarkConfig, bench_abstraction, bench_ct

# ---------------------------------------------------------------------------
# Campaign 1: abstraction generation time, n = 3..8, 10 trials each.

cfg = BenchmarkConfig(dims=tuple(range(3, 9)), m=2, trials=10, seed=1)
rep = bench_abstraction(cfg)

print("abstraction generation (microseconds):")
print(f"{'n':>3} {'trials':>7} {'avg':>10} {'max':>10}")
for n, row in sorted(rep["summary"].items()):
    print(f"{n:>3} {row['trials']:>7} {row['avg_micros']:>10} {row['max_micros']:>10}")

with open("bench_abstraction.csv", "w", encoding="utf-8") as fh:
    fh.write(rep["csv"])
print("\nper-phase CSV written to bench_abstraction.csv")

# ---------------------------------------------------------------------------
# Campaign 2: completeness thresholds for "F G (t1 <= 10)" on irreducible
# 3x3 samples.  The analytic bound k0 + c is sound - the empirical bound
# never exceeds it - but often conservative, which is the price of having
# a closed-form stopping criterion.

cfg = BenchmarkConfig(dims=(3,), m=2, value_range=(1, 10), trials=10, seed=1)
rep = bench_ct(cfg, "F G (t1 <= 10)")

print("\ncompleteness thresholds for F G (t1 <= 10):")
print(f"{'trial':>5} {'empirical':>10} {'k0 + c':>8} {'verdict':>10}")
for r in rep["rows"]:
    print(f"{r['trial']:>5} {str(r['ct_empirical']):>10} {r['ct_lemma']:>8} {r['verdict']:>10}")
c = rep["counts"]
print(f"\nempirical < analytic: {c['lt']}   equal: {c['eq']}   "
      f"greater: {c['gt']} (soundness requires 0)")

with open("bench_ct.csv", "w", encoding="utf-8") as fh:
    fh.write(rep["csv"])
print("CSV written to bench_ct.csv")
