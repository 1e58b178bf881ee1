#!/usr/bin/env python3
"""Hit probabilities: exact enumeration, inclusion-exclusion, Monte Carlo.

The hit probability is Pr(some member is contained in a random subset that
keeps each element with probability delta).  Small instances admit two
independent exact computations; Monte Carlo scales beyond them and is
reproducible from the seed alone.
"""

from sunflowers import (
    block_product_family,
    exact_block_hit_probability,
    exact_hit_probability,
    mc_block_hit_probability,
    mc_hit_probability,
)

family, _ = block_product_family(2, 2)
delta = 0.5

print("=" * 64)
print("three routes to the same number (k=2, r=2, delta=1/2)")
print("=" * 64)
enum = exact_hit_probability(family, delta, method="enumeration")
incl = exact_hit_probability(family, delta, method="inclusion-exclusion")
form = exact_block_hit_probability(2, 2, delta)
print(f"  enumeration over 2^4 subsets : {enum.p_hat}")
print(f"  inclusion-exclusion          : {incl.p_hat}")
print(f"  closed form (1-(1-d)^r)^k    : {form}")

print()
print("=" * 64)
print("Monte Carlo convergence (seed-reproducible)")
print("=" * 64)
print(f"  {'trials':>8} {'estimate':>10} {'3-sigma':>9} {'error':>10}")
for trials in (100, 1_000, 10_000, 100_000):
    est = mc_hit_probability(family, delta, trials=trials, seed=7)
    print(f"  {trials:>8} {est.p_hat:>10.5f} {est.half_width_3sigma:>9.5f} {abs(est.p_hat - 0.5625):>10.5f}")

print()
print("=" * 64)
print("wide families without materialization (k=16 blocks)")
print("=" * 64)
print("  the sample hits iff it meets every block, so r^k members never exist in memory")
print(f"  {'r':>3} {'closed form':>12} {'monte carlo':>12}")
for r in (6, 9, 12):
    exact = exact_block_hit_probability(16, r, 0.25)
    est = mc_block_hit_probability(16, r, 0.25, trials=40_000, seed=7)
    print(f"  {r:>3} {exact:>12.5f} {est.p_hat:>12.5f}")
