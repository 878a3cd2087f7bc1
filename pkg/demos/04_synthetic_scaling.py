"""Synthetic data, the TRSU-versus-RSU ablation, and scaling behavior.

Generates reproducible synthetic databases, compares the two early-pruning
bounds (and irrelevant-item pruning on/off) on candidate counts, then grows
the database to show near-linear runtime in sequence count.

Takes a couple of minutes; shrink SIZES for a quicker pass.
"""

import time

from huspmine import GenParams, MinerConfig, generate, mine
from huspmine.bounds import BoundKind

print("Generating a 10k-sequence database (about 6 elements x 4 items each)")
print("=" * 60)
t0 = time.perf_counter()
db = generate(GenParams(sequence_count=10_000, avg_elements=6,
                        avg_items_per_element=4, distinct_items=300, seed=7))
print(f"done in {time.perf_counter() - t0:.1f}s; total utility {db.total_utility}")
print()

###############################################################################
# Ablation: tighter bound, fewer candidates
# -----------------------------------------
# The mined pattern set is identical in every configuration; the candidate
# count (projections actually built) is what the tighter bound saves.

print(f"{'config':<14} {'ratio':<6} {'candidates':>10} {'husps':>6} {'seconds':>8}")
for ratio in ("0.04", "0.03"):
    for label, bound, iip in (("trsu", BoundKind.TRSU, True),
                              ("rsu", BoundKind.RSU, True),
                              ("trsu-noiip", BoundKind.TRSU, False),
                              ("rsu-noiip", BoundKind.RSU, False)):
        t0 = time.perf_counter()
        result = mine(db, MinerConfig(ratio=ratio, bound=bound, iip=iip))
        elapsed = time.perf_counter() - t0
        stats = result.stats
        print(f"{label:<14} {ratio:<6} {stats.candidates:>10} {stats.husps:>6} "
              f"{elapsed:>8.1f}")
print()

###############################################################################
# Scaling in the number of sequences
# ----------------------------------
# Same profile, same threshold ratio, growing sequence count.

SIZES = (10_000, 40_000, 160_000)
print(f"{'sequences':>10} {'seconds':>8} {'candidates':>11}")
for count in SIZES:
    big = generate(GenParams(sequence_count=count, avg_elements=6,
                             avg_items_per_element=4, distinct_items=300, seed=11))
    t0 = time.perf_counter()
    result = mine(big, MinerConfig(ratio="0.06"))
    print(f"{count:>10} {time.perf_counter() - t0:>8.1f} {result.stats.candidates:>11}")
