#!/usr/bin/env python3
"""The random-partition experiment and its mean identity.

Assign each ground element independently and uniformly to one of t classes.
Each class, viewed alone, is a Bernoulli subset with delta = 1/t, so by
linearity the expected number of classes containing a family member equals
t times the hit probability at 1/t.  Classes are disjoint, which is what
turns hit classes into disjoint petals in the extraction engine.
"""

from sunflowers import block_product_family, check_partition_mean_identity, partition_experiment

print("=" * 70)
print("mean hit classes vs t * Pr(hit at 1/t), block families k=2")
print("=" * 70)
print(f"  {'r':>3} {'t':>3} {'sampled mean':>13} {'t * exact':>10} {'3*sigma':>9} {'ok':>4}")
for r in (2, 4, 8):
    family, _ = block_product_family(2, r)
    for t in (4, 8):
        report = check_partition_mean_identity(family, t, trials=50_000, seed=11)
        print(
            f"  {r:>3} {t:>3} {report.mean_hit_classes:>13.5f} {report.expected_mean:>10.5f} "
            f"{3 * report.sigma_mean:>9.5f} {'yes' if report.passed else 'NO':>4}"
        )

print()
print("=" * 70)
print("full histogram of hit-class counts (k=2, r=4, t=4)")
print("=" * 70)
family, _ = block_product_family(2, 4)
stats = partition_experiment(family, 4, trials=50_000, seed=11)
for h, count in enumerate(stats.hit_class_histogram):
    bar = "#" * (60 * count // stats.trials)
    print(f"  {h} classes hit: {count / stats.trials:>7.4f} {bar}")
print(f"  fraction of trials with >= 2 hit classes: {stats.frac_trials_with_at_least[2]:.4f}")
print("  (each trial with >= 2 hit classes hands us 2 disjoint members for free)")
