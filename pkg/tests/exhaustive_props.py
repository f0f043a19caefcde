"""Compiled property checks for exhaustive sweeps over 4-cap free rows.

The labeling, statistic and laced pairs come from the package's compiled
twin (held to the reference implementation by the other test modules);
every property is then re-checked here with plain loops.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from capcup import _fast

PROPS = (
    "labeling-valid",
    "statistic-in-simplex",
    "statistic-monotone-edges",
    "statistic-injective",
    "label-1-extends-left",
    "label-2-extends-right",
    "rows-and-columns",
    "mirror-involution",
    "mirror-labeling-valid",
    "laced-pairs-reflect",
    "twin-statistic-agrees",
)


@njit(cache=True)
def _check(U, m, n, bad):
    end, start = _fast.tables(U, m)
    lab = _fast.canonical_lab(start, m)
    ok = True
    for x in range(m):
        for y in range(x + 1, m):
            if lab[x, y] < 1 or lab[x, y] > 2:
                ok = False
            for z in range(y + 1, m):
                if lab[x, y] <= lab[y, z] and U[x, y, z] == 0:
                    ok = False
    if not ok:
        bad[0] += 1

    # alpha / beta straight from the definition: longest cup ending at p
    # whose last edge has label <= i
    al = np.ones(m, np.int64)
    be = np.ones(m, np.int64)
    for p in range(m):
        for u in range(p):
            size = end[1, u, p]
            if lab[u, p] <= 1 and size > al[p]:
                al[p] = size
            if lab[u, p] <= 2 and size > be[p]:
                be[p] = size
    for p in range(m):
        if not 1 <= al[p] <= be[p] <= n - 1:
            bad[1] += 1
            break
    mono = True
    inj = True
    for p in range(m):
        for q in range(p + 1, m):
            if lab[p, q] == 1 and al[p] >= al[q]:
                mono = False
            if lab[p, q] == 2 and be[p] >= be[q]:
                mono = False
            if al[p] == al[q] and be[p] == be[q]:
                inj = False
    if not mono:
        bad[2] += 1
    if not inj:
        bad[3] += 1

    left = True
    right = True
    rows = True
    for p in range(m):
        for q in range(p + 1, m):
            if lab[p, q] == 1:
                for r in range(q + 1, m):
                    if U[p, q, r] == 0:
                        left = False
            if lab[p, q] == 2:
                for o in range(p):
                    if U[o, p, q] == 0:
                        right = False
            if be[p] == be[q] and not (lab[p, q] == 1 and al[p] < al[q]):
                rows = False
            if al[p] == al[q] and not (lab[p, q] == 2 and be[p] < be[q]):
                rows = False
    if not left:
        bad[4] += 1
    if not right:
        bad[5] += 1
    if not rows:
        bad[6] += 1

    M = _fast.mirror_u(U, m)
    if not np.array_equal(_fast.mirror_u(M, m), U):
        bad[7] += 1
    if not _fast.lab_ok(M, _fast.mirror_lab(lab, m), m):
        bad[8] += 1

    a = _fast.laced_pairs(U, m, n)
    b = _fast.laced_pairs(M, m, n)
    same = a.shape[0] == b.shape[0]
    if same:
        top = m - 1
        for s in range(a.shape[0]):
            hit = False
            for t in range(b.shape[0]):
                if b[t, 0] == top - a[s, 1] and b[t, 1] == top - a[s, 0]:
                    hit = True
            if not hit:
                same = False
    if not same:
        bad[9] += 1

    status = np.zeros(1, np.int64)
    tal, tbe = _fast._statistic(U, lab, end, m, n, status)
    if status[0] != 0 or not np.array_equal(tal, al) or not np.array_equal(tbe, be):
        bad[10] += 1


@njit(cache=True)
def check_rows(rows, m, n, bad):
    """Accumulate per-property failure counts over ``rows`` into ``bad``."""
    for r in range(rows.shape[0]):
        _check(_fast.build_u(rows[r], m), m, n, bad)
