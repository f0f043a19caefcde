"""
Exhaustive search
=================

Counting and maximizing over all configurations that avoid given patterns,
one per mirror pair.  Free configurations are closed under deleting
vertices, so the largest free size is found by growing m until none exist.
"""

import time

from capcup import AvoidanceSpec, check_main_theorem, count_free, max_free_size

for spec in [AvoidanceSpec(4, 4), AvoidanceSpec(4, 5), AvoidanceSpec(4, 5, (3, 4, "weak"))]:
    report = max_free_size(spec, limit=12)
    print(spec.as_params(), "-> largest free size", report.extremal)

# canonical counts grow fast
for m in range(3, 9):
    t0 = time.perf_counter()
    print(m, count_free(m, AvoidanceSpec(4, 5)).count, f"{time.perf_counter() - t0:.2f} s")

print(check_main_theorem(4).to_text())

# larger n: random point sets through the full pipeline
print(check_main_theorem(8, mode="random", trials=200, seed=1).to_text())
