"""Compiled inner loops for the search engine.

Configurations travel as ``uint8`` rows of length ``C(m, 3)`` in lexicographic
triple order, 1 for a cup.  Everything here is a plain loop over small
integer arrays so that numba can compile it; the Python-level wrappers in
:mod:`capcup.search` own validation and reporting.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def triple_index_table(m):
    idx = np.full((m, m, m), -1, np.int64)
    t = 0
    for i in range(m):
        for j in range(i + 1, m):
            for k in range(j + 1, m):
                idx[i, j, k] = t
                t += 1
    return idx


@njit(cache=True)
def is_canonical(row, m, idx):
    """Lexicographic comparison of a triple string against its mirror."""
    top = m - 1
    for i in range(m):
        for j in range(i + 1, m):
            for k in range(j + 1, m):
                x = row[idx[i, j, k]]
                y = row[idx[top - k, top - j, top - i]]
                if x != y:
                    return x < y
    return True


@njit(cache=True)
def _edge_done(v, j, cups, cap_end, cup_end, capset, cupset, use_sets):
    cmax = 2
    umax = 2
    for i in range(j):
        if (cups[i, j] >> v) & 1:
            s = cup_end[i, j] + 1
            if s > umax:
                umax = s
        else:
            s = cap_end[i, j] + 1
            if s > cmax:
                cmax = s
    cap_end[j, v] = cmax
    cup_end[j, v] = umax
    if use_sets:
        for x in range(j + 1):
            cs = 0
            us = 0
            if x == j:
                cs = 4
                us = 4
            for i in range(x, j):
                if (cups[i, j] >> v) & 1:
                    us |= cupset[x, i, j] << 1
                else:
                    cs |= capset[x, i, j] << 1
            capset[x, j, v] = cs
            cupset[x, j, v] = us


@njit(cache=True)
def _has_gon(v, capset, cupset, ga, gb):
    for x in range(v):
        cs = 0
        us = 0
        for u in range(x, v):
            cs |= capset[x, u, v]
            us |= cupset[x, u, v]
        if (cs >> ga) & 1 and (us >> gb) & 1:
            return True
    return False


@njit(cache=True)
def extend(m, prefix, p, a, b, ga, gb, canonical, out, node_limit, order_seed):
    """Depth-first extension of a ``p``-vertex prefix to ``m`` vertices.

    Writes admissible leaves into ``out`` (or only counts them when ``out``
    has no rows) and returns ``(count, status,
    nodes)``; status 0 means finished, 1 means ``out`` filled up, 2 means the
    node limit was hit.  A nonzero ``order_seed`` randomizes the branch order
    and stops at the first leaf.
    """
    idx = triple_index_table(m)
    cups = np.zeros((m, m), np.int64)
    cap_end = np.zeros((m, m), np.int64)
    cup_end = np.zeros((m, m), np.int64)
    use_sets = ga > 0
    dim = m if use_sets else 1
    capset = np.zeros((dim, dim, dim), np.int64)
    cupset = np.zeros((dim, dim, dim), np.int64)
    for v in range(m):
        cap_end[0, v] = 2
        cup_end[0, v] = 2
        if use_sets:
            capset[0, 0, v] = 4
            cupset[0, 0, v] = 4
    # replay the prefix (its rows use the p-vertex triple order)
    pidx = triple_index_table(max(p, 1))
    for v in range(2, p):
        for j in range(1, v):
            for i in range(j):
                if prefix[pidx[i, j, v]]:
                    cups[i, j] |= 1 << v
            _edge_done(v, j, cups, cap_end, cup_end, capset, cupset, use_sets)
    # decision positions for vertices p..m-1
    total = 0
    for v in range(max(p, 2), m):
        total += v * (v - 1) // 2
    pos_i = np.zeros(total, np.int64)
    pos_j = np.zeros(total, np.int64)
    pos_v = np.zeros(total, np.int64)
    t = 0
    for v in range(max(p, 2), m):
        for j in range(1, v):
            for i in range(j):
                pos_i[t] = i
                pos_j[t] = j
                pos_v[t] = v
                t += 1
    count_only = out.shape[0] == 0
    count = 0
    nodes = 0
    state = np.uint64(order_seed)
    row = np.zeros((m * (m - 1) * (m - 2)) // 6, np.uint8)
    if total == 0:
        # prefix already complete
        for i in range(m):
            for j in range(i + 1, m):
                for k in range(j + 1, m):
                    row[idx[i, j, k]] = (cups[i, j] >> k) & 1
        if not canonical or is_canonical(row, m, idx):
            out[0, :] = row
            return 1, 0, 0
        return 0, 0, 0
    first = np.zeros(total, np.int64)  # which option is tried first
    tried = np.zeros(total, np.int64)  # options tried so far at this level
    t = 0
    tried[0] = 0
    if order_seed:
        state ^= state << np.uint64(13)
        state ^= state >> np.uint64(7)
        state ^= state << np.uint64(17)
        first[0] = np.int64(state & np.uint64(1))
    while t >= 0:
        if tried[t] == 2:
            tried[t] = 0
            t -= 1
            continue
        opt = first[t] ^ tried[t]  # 0 cap, 1 cup
        tried[t] += 1
        i = pos_i[t]
        j = pos_j[t]
        v = pos_v[t]
        nodes += 1
        if node_limit and nodes > node_limit:
            return count, 2, nodes
        if opt == 1:
            if cup_end[i, j] + 1 >= b:
                continue
            cups[i, j] |= 1 << v
        else:
            if cap_end[i, j] + 1 >= a:
                continue
            cups[i, j] &= ~(1 << v)
        if i == j - 1:
            _edge_done(v, j, cups, cap_end, cup_end, capset, cupset, use_sets)
            # (j, v, w) for any later w would complete an a-cap or a b-cup
            if v < m - 1 and cap_end[j, v] + 1 >= a and cup_end[j, v] + 1 >= b:
                continue
            if j == v - 1 and use_sets and _has_gon(v, capset, cupset, ga, gb):
                continue
        if t == total - 1:
            for x in range(m):
                for y in range(x + 1, m):
                    for z in range(y + 1, m):
                        row[idx[x, y, z]] = (cups[x, y] >> z) & 1
            if not canonical or is_canonical(row, m, idx):
                if count_only:
                    count += 1
                    continue
                if count == out.shape[0]:
                    return count, 1, nodes
                out[count, :] = row
                count += 1
                if order_seed:
                    return count, 0, nodes
            continue
        t += 1
        tried[t] = 0
        if order_seed:
            state ^= state << np.uint64(13)
            state ^= state >> np.uint64(7)
            state ^= state << np.uint64(17)
            first[t] = np.int64(state & np.uint64(1))
        else:
            first[t] = 0
    return count, 0, nodes
