"""
Families of interweaved laced cups
==================================

On C(n-1, 2) + k points avoiding 4-caps and n-cups, look for k laced
(n-1)-cups that pairwise interweave.  Small n is settled exhaustively; the
cover method only inspects the cup-minimal completions of each middle.
Larger n is sampled.
"""

from capcup import check_conjecture_k, k_family, realizable_free_sample

for n, k in [(4, 3), (5, 1), (5, 2), (5, 3)]:
    report = check_conjecture_k(n, k)
    c = report.counters
    print(
        f"n={n} k={k}: {report.count} configurations settled from "
        f"{c['minimal-completions']} minimal ones, {c['counterexample-candidates']} candidates"
    )

for k in range(1, 6):
    report = check_conjecture_k(6, k, mode="random", trials=50, seed=k)
    print(f"n=6 k={k}: {report.counters.get('families', 0)}/{report.count} samples have a family")

# one family, spelled out
c = realizable_free_sample(6, 14, seed=3)
for laced in k_family(c, 6, 4):
    print(laced.cup.vertices, "laced by", laced.left.vertices, "and", laced.right.vertices)
