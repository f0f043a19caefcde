"""Compiled twin of the a = 4 witness pipeline.

This is a line-by-line port of :func:`capcup.witness.find_gon` and of the
laced-cup family search, for sweeps over millions of configurations.  It
makes the same choices in the same order as the reference implementation,
so both return identical witnesses; the search module cross-checks the two
on samples.  Failures are reported through ``status[0]`` (see ``MESSAGES``)
instead of exceptions.

Conventions: ``U[i, j, k] == 1`` iff ``(i, j, k)`` is a cup; kind 0 is cap
and kind 1 is cup; a chain is an ``int64`` row ``[len, v0, v1, ...]``; a
laced pair is six chain rows ``cup1, left1, right1, cup2, left2, right2``.
"""

from __future__ import annotations

import numpy as np
from numba import njit

MESSAGES = {
    1: "configuration contains a 4-cap",
    2: "configuration contains an n-cup",
    3: "canonical labeling violates the cup rule",
    10: "no (n-1)-cup, or rightmost left endpoint after leftmost right endpoint",
    11: "q_S starts an (n-2)-cup after reflection",
    12: "empty row in the (alpha, beta)-plane",
    13: "leftmost row vertices are not increasing",
    14: "leftmost vertex of the top row is not q_S",
    15: "restricted labeling is not a slope labeling",
    16: "reduced configuration has an (n-1)-cup",
    17: "(**) 1: x < q_S fails",
    18: "(**) 2: beta(x) <= n-2 fails",
    19: "(**) 3: x_i < x with label 1 fails",
    20: "(**) 4: alpha(x_i) = 1 and alpha(x) = 2 fails",
    21: "start of the left lacing is not extendable",
    22: "left lacing too long for beta(p)",
    23: "a claimed cup is not a cup",
    24: "reflection did not produce a label-1 edge",
    25: "an intermediate pair is not an interweaved laced pair",
    26: "n-cup free configuration produced an n-cup",
    27: "gon has the wrong shape",
    28: "final gon fails verification",
    29: "alpha statistic invariant fails",
    30: "chain reconstruction failed",
}


# -- configurations and tables ---------------------------------------------


@njit(cache=True)
def build_u(row, m):
    U = np.zeros((m, m, m), np.uint8)
    t = 0
    for i in range(m):
        for j in range(i + 1, m):
            for k in range(j + 1, m):
                U[i, j, k] = row[t]
                t += 1
    return U


@njit(cache=True)
def mirror_u(U, m):
    top = m - 1
    out = np.zeros((m, m, m), np.uint8)
    for i in range(m):
        for j in range(i + 1, m):
            for k in range(j + 1, m):
                out[i, j, k] = U[top - k, top - j, top - i]
    return out


@njit(cache=True)
def mirror_lab(lab, m):
    top = m - 1
    out = np.zeros((m, m), np.int64)
    for u in range(m):
        for v in range(u + 1, m):
            out[u, v] = 3 - lab[top - v, top - u]
    return out


@njit(cache=True)
def tables(U, m):
    end = np.zeros((2, m, m), np.int64)
    start = np.zeros((2, m, m), np.int64)
    for kind in range(2):
        for v in range(m):
            for u in range(v):
                best = 2
                for t in range(u):
                    if U[t, u, v] == kind and end[kind, t, u] + 1 > best:
                        best = end[kind, t, u] + 1
                end[kind, u, v] = best
        for u in range(m - 1, -1, -1):
            for v in range(m - 1, u, -1):
                best = 2
                for w in range(v + 1, m):
                    if U[u, v, w] == kind and start[kind, v, w] + 1 > best:
                        best = start[kind, v, w] + 1
                start[kind, u, v] = best
    return end, start


@njit(cache=True)
def longest_ending_at(end, kind, v):
    best = 1
    for u in range(v):
        if end[kind, u, v] > best:
            best = end[kind, u, v]
    return best


@njit(cache=True)
def longest_starting_at(start, kind, u, m):
    best = 1
    for v in range(u + 1, m):
        if start[kind, u, v] > best:
            best = start[kind, u, v]
    return best


@njit(cache=True)
def longest(end, kind, m):
    best = 1
    for u in range(m):
        for v in range(u + 1, m):
            if end[kind, u, v] > best:
                best = end[kind, u, v]
    return best


# -- chains ----------------------------------------------------------------


@njit(cache=True)
def _single(v, width):
    ch = np.zeros(width, np.int64)
    ch[0] = 1
    ch[1] = v
    return ch


@njit(cache=True)
def _first(ch):
    return ch[1]


@njit(cache=True)
def _last(ch):
    return ch[ch[0]]


@njit(cache=True)
def _is_kind(U, ch, kind):
    for t in range(1, ch[0] - 1):
        if U[ch[t], ch[t + 1], ch[t + 2]] != kind:
            return False
    return True


@njit(cache=True)
def _reflect_chain(ch, m):
    out = np.zeros(ch.shape[0], np.int64)
    n = ch[0]
    out[0] = n
    for t in range(n):
        out[1 + t] = m - 1 - ch[n - t]
    return out


@njit(cache=True)
def _map_chain(ch, old):
    out = ch.copy()
    for t in range(1, ch[0] + 1):
        out[t] = old[ch[t]]
    return out


@njit(cache=True)
def _reflect_pair(P, m):
    out = np.zeros_like(P)
    # (cup, left, right) -> (cup', right', left'), and the two cups swap
    out[0] = _reflect_chain(P[3], m)
    out[1] = _reflect_chain(P[5], m)
    out[2] = _reflect_chain(P[4], m)
    out[3] = _reflect_chain(P[0], m)
    out[4] = _reflect_chain(P[2], m)
    out[5] = _reflect_chain(P[1], m)
    return out


@njit(cache=True)
def chain_ending_with(U, end, kind, u, v, size, width, status):
    best = end[kind, u, v]
    out = np.zeros(width, np.int64)
    if not 2 <= size <= best:
        status[0] = 30
        return out
    rev = np.zeros(best, np.int64)
    rev[0] = v
    rev[1] = u
    n = 2
    while n < best:
        b = rev[n - 1]
        c = rev[n - 2]
        need = end[kind, b, c] - 1
        found = False
        for t in range(b):
            if U[t, b, c] == kind and end[kind, t, b] == need:
                rev[n] = t
                n += 1
                found = True
                break
        if not found:
            status[0] = 30
            return out
    out[0] = size
    for t in range(size):
        out[1 + t] = rev[size - 1 - t]
    return out


@njit(cache=True)
def chain_starting_with(U, start, kind, u, v, size, m, width, status):
    best = start[kind, u, v]
    out = np.zeros(width, np.int64)
    if not 2 <= size <= best:
        status[0] = 30
        return out
    seq = np.zeros(best, np.int64)
    seq[0] = u
    seq[1] = v
    n = 2
    while n < best:
        a = seq[n - 2]
        b = seq[n - 1]
        need = start[kind, a, b] - 1
        found = False
        for t in range(b + 1, m):
            if U[a, b, t] == kind and start[kind, b, t] == need:
                seq[n] = t
                n += 1
                found = True
                break
        if not found:
            status[0] = 30
            return out
    out[0] = size
    for t in range(size):
        out[1 + t] = seq[t]
    return out


@njit(cache=True)
def chain_ending_at(U, end, kind, v, size, width, status):
    best = longest_ending_at(end, kind, v)
    if not 1 <= size <= best:
        status[0] = 30
        return np.zeros(width, np.int64)
    if size == 1:
        return _single(v, width)
    for u in range(v):
        if end[kind, u, v] == best:
            return chain_ending_with(U, end, kind, u, v, size, width, status)
    status[0] = 30
    return np.zeros(width, np.int64)


@njit(cache=True)
def chain_starting_at(U, start, kind, u, size, m, width, status):
    best = longest_starting_at(start, kind, u, m)
    if not 1 <= size <= best:
        status[0] = 30
        return np.zeros(width, np.int64)
    if size == 1:
        return _single(u, width)
    for v in range(u + 1, m):
        if start[kind, u, v] == best:
            return chain_starting_with(U, start, kind, u, v, size, m, width, status)
    status[0] = 30
    return np.zeros(width, np.int64)


@njit(cache=True)
def _cup_from(U, vs, n, width, status):
    """A cup the argument claims exists; flags status 23 when it is not."""
    out = np.zeros(width, np.int64)
    out[0] = n
    for t in range(n):
        out[1 + t] = vs[t]
    if not _is_kind(U, out, 1):
        status[0] = 23
    return out


# -- laced pairs -----------------------------------------------------------


@njit(cache=True)
def _laced_ok(U, cup, left, right, n):
    if cup[0] != n - 1 or not _is_kind(U, cup, 1):
        return False
    if not _is_kind(U, left, 1) or not _is_kind(U, right, 1):
        return False
    if _last(left) != _first(cup) or _first(right) != _last(cup):
        return False
    return left[0] + right[0] == n - 1


@njit(cache=True)
def pair_ok(U, P, n):
    if not _laced_ok(U, P[0], P[1], P[2], n) or not _laced_ok(U, P[3], P[4], P[5], n):
        return False
    return _first(P[0]) < _first(P[3]) <= _last(P[0]) < _last(P[3])


@njit(cache=True)
def canonical_lab(start, m):
    lab = np.zeros((m, m), np.int64)
    for u in range(m):
        for v in range(u + 1, m):
            lab[u, v] = start[0, u, v] - 1
    return lab


@njit(cache=True)
def lab_ok(U, lab, m):
    for x in range(m):
        for y in range(x + 1, m):
            for z in range(y + 1, m):
                if lab[x, y] <= lab[y, z] and U[x, y, z] == 0:
                    return False
    return True


@njit(cache=True)
def _special(U, lab, c, cx, cy, n, width, status):
    P = np.zeros((6, width), np.int64)
    x = _first(c)
    y = _last(c)
    if lab[x, y] != 1:
        status[0] = 24
        return P
    np_ = cx[0] - 1  # P = cx without its last vertex
    nq = c[0] - 2  # Q = interior of c
    nr = cy[0] - 1  # R = cy without its first vertex
    a = cx[np_]
    b = c[2]
    last = cy[cy[0]]
    buf = np.zeros(width + 2, np.int64)
    # x.y.R
    buf[0] = x
    buf[1] = y
    for t in range(nr):
        buf[2 + t] = cy[2 + t]
    xyr = _cup_from(U, buf, 2 + nr, width, status)
    if status[0]:
        return P
    if lab[a, b] == 1:
        buf[0] = a
        for t in range(nq):
            buf[1 + t] = c[2 + t]
        buf[1 + nq] = y
        P[0] = _cup_from(U, buf, nq + 2, width, status)
        P[1] = _single(a, width)
        P[2] = cy
        P[3] = xyr
        P[4] = cx
        P[5] = _single(last, width)
        return P
    if lab[b, y] == 1:
        buf[0] = b
        buf[1] = y
        for t in range(nr):
            buf[2 + t] = cy[2 + t]
        second = _cup_from(U, buf, 2 + nr, width, status)
        if status[0]:
            return P
        for t in range(np_):
            buf[t] = cx[1 + t]
        buf[np_] = b
        pb = _cup_from(U, buf, np_ + 1, width, status)
        P[0] = c
        P[1] = cx
        P[2] = _single(y, width)
        P[3] = second
        P[4] = pb
        P[5] = _single(last, width)
        return P
    for t in range(np_):
        buf[t] = cx[1 + t]
    buf[np_] = b
    buf[np_ + 1] = y
    P[0] = _cup_from(U, buf, np_ + 2, width, status)
    P[1] = _single(cx[1], width)
    P[2] = cy
    P[3] = xyr
    P[4] = cx
    P[5] = _single(last, width)
    return P


@njit(cache=True)
def pair_from_special(U, m, lab, c, cx, cy, n, width, status):
    if lab[_first(c), _last(c)] == 2:
        res = _special(
            mirror_u(U, m),
            mirror_lab(lab, m),
            _reflect_chain(c, m),
            _reflect_chain(cy, m),
            _reflect_chain(cx, m),
            n,
            width,
            status,
        )
        P = _reflect_pair(res, m)
    else:
        P = _special(U, lab, c, cx, cy, n, width, status)
    if status[0] == 0 and not pair_ok(U, P, n):
        status[0] = 25
    return P


@njit(cache=True)
def _boundary(end, start, m, n, status):
    p = -1
    q = m
    for v in range(m):
        if longest_starting_at(start, 1, v, m) >= n - 1:
            p = v
        if q == m and longest_ending_at(end, 1, v) >= n - 1:
            q = v
    if p < 0 or q == m or p > q:
        status[0] = 10
    return p, q


@njit(cache=True)
def _statistic(U, lab, end, m, n, status):
    al = np.ones(m, np.int64)
    be = np.ones(m, np.int64)
    for p in range(m):
        for u in range(p):
            size = end[1, u, p]
            if lab[u, p] == 1 and size > al[p]:
                al[p] = size
            if size > be[p]:
                be[p] = size
    for p in range(m):
        if al[p] < 1 or be[p] > n - 1 or al[p] > be[p]:
            status[0] = 29
        for q in range(p + 1, m):
            if lab[p, q] == 1 and not al[p] < al[q]:
                status[0] = 29
            if lab[p, q] == 2 and not be[p] < be[q]:
                status[0] = 29
            if al[p] == al[q] and be[p] == be[q]:
                status[0] = 29
    return al, be


@njit(cache=True)
def _base_pair(width):
    P = np.zeros((6, width), np.int64)
    P[0, 0] = 2
    P[0, 1] = 0
    P[0, 2] = 1
    P[1] = _single(0, width)
    P[2] = _single(1, width)
    P[3, 0] = 2
    P[3, 1] = 1
    P[3, 2] = 2
    P[4] = _single(1, width)
    P[5] = _single(2, width)
    return P


@njit(cache=True)
def _both_extendable(U, m, lab, n, end, start, p_s, q_s, width, status):
    P = np.zeros((6, width), np.int64)
    c_left = chain_ending_at(U, end, 1, q_s, n - 1, width, status)
    c_right = chain_starting_at(U, start, 1, p_s, n - 1, m, width, status)
    cx = chain_ending_at(U, end, 1, p_s, n - 2, width, status)
    cy = chain_starting_at(U, start, 1, q_s, n - 2, m, width, status)
    if status[0]:
        return P
    if _first(c_left) == p_s:
        return pair_from_special(U, m, lab, c_left, cx, cy, n, width, status)
    if _last(c_right) == q_s:
        return pair_from_special(U, m, lab, c_right, cx, cy, n, width, status)
    P[0] = c_left
    P[1] = _single(_first(c_left), width)
    P[2] = cy
    P[3] = c_right
    P[4] = cx
    P[5] = _single(_last(c_right), width)
    return P


@njit(cache=True)
def _check_starts(Uc, labc, al, be, leftmost, q_s, Us, sstart, keep, ms, n, width, status):
    buf = np.zeros(width + 1, np.int64)
    for v in range(ms):
        if longest_starting_at(sstart, 1, v, ms) < n - 2:
            continue
        c = _map_chain(chain_starting_at(Us, sstart, 1, v, n - 2, ms, width, status), keep)
        if status[0]:
            return
        x = c[1]
        i = be[x]
        if not x < q_s:
            status[0] = 17
            return
        if not i <= n - 2:
            status[0] = 18
            return
        x_i = leftmost[i - 1]
        if not (x_i < x and labc[x_i, x] == 1):
            status[0] = 19
            return
        buf[0] = x_i
        for t in range(c[0]):
            buf[1 + t] = c[1 + t]
        _cup_from(Uc, buf, c[0] + 1, width, status)
        if status[0]:
            return
        if not (al[x_i] == 1 and al[x] == 2):
            status[0] = 20
            return


@njit(cache=True)
def find_pair(U0, m0, lab0, n0, width, status):
    """Interweaved laced (n-1)-cups by induction on ``n``.

    The induction runs iteratively: the descent stores each level's host
    configuration and statistic, the ascent lifts the inner pair back up.
    """
    depth_max = max(n0 - 3, 1)
    S_U = np.zeros((depth_max, m0, m0, m0), np.uint8)  # host S as given
    S_Uc = np.zeros((depth_max, m0, m0, m0), np.uint8)  # host after reflection
    S_end = np.zeros((depth_max, 2, m0, m0), np.int64)
    S_keep = np.zeros((depth_max, m0), np.int64)
    S_left = np.zeros((depth_max, m0), np.int64)
    S_al = np.zeros((depth_max, m0), np.int64)
    S_be = np.zeros((depth_max, m0), np.int64)
    S_mir = np.zeros(depth_max, np.bool_)
    S_m = np.zeros(depth_max, np.int64)
    P = np.zeros((6, width), np.int64)

    U = U0
    lab = lab0
    m = m0
    n = n0
    depth = 0
    while True:
        if n == 3:
            P = _base_pair(width)
            break
        end, start = tables(U, m)
        p_s, q_s = _boundary(end, start, m, n, status)
        if status[0]:
            return P
        ends_at_p = longest_ending_at(end, 1, p_s) >= n - 2
        starts_at_q = longest_starting_at(start, 1, q_s, m) >= n - 2
        if ends_at_p and starts_at_q:
            P = _both_extendable(U, m, lab, n, end, start, p_s, q_s, width, status)
            if status[0]:
                return P
            if not pair_ok(U, P, n):
                status[0] = 25
                return P
            break
        mirrored = starts_at_q
        if mirrored:
            Uc = mirror_u(U, m)
            labc = mirror_lab(lab, m)
            end, start = tables(Uc, m)
            p_s, q_s = _boundary(end, start, m, n, status)
            if status[0]:
                return P
        else:
            Uc = U
            labc = lab
        if longest_starting_at(start, 1, q_s, m) >= n - 2:
            status[0] = 11
            return P
        al, be = _statistic(Uc, labc, end, m, n, status)
        if status[0]:
            return P
        leftmost = np.full(n - 1, -1, np.int64)
        for v in range(m - 1, -1, -1):
            leftmost[be[v] - 1] = v
        for i in range(n - 1):
            if leftmost[i] < 0:
                status[0] = 12
                return P
        for i in range(1, n - 1):
            if leftmost[i - 1] >= leftmost[i]:
                status[0] = 13
                return P
        if leftmost[n - 2] != q_s:
            status[0] = 14
            return P
        ms = m - (n - 2)
        keep = np.zeros(ms, np.int64)
        t = 0
        for v in range(m):
            in_delta = False
            for i in range(n - 2):
                if leftmost[i] == v:
                    in_delta = True
            if not in_delta:
                keep[t] = v
                t += 1
        Us = np.zeros((ms, ms, ms), np.uint8)
        labs = np.zeros((ms, ms), np.int64)
        for a in range(ms):
            for b in range(a + 1, ms):
                labs[a, b] = labc[keep[a], keep[b]]
                for c in range(b + 1, ms):
                    Us[a, b, c] = Uc[keep[a], keep[b], keep[c]]
        if not lab_ok(Us, labs, ms):
            status[0] = 15
            return P
        send, sstart = tables(Us, ms)
        if longest(send, 1, ms) >= n - 1:
            status[0] = 16
            return P
        _check_starts(Uc, labc, al, be, leftmost, q_s, Us, sstart, keep, ms, n, width, status)
        if status[0]:
            return P
        S_U[depth, :m, :m, :m] = U
        S_Uc[depth, :m, :m, :m] = Uc
        S_end[depth, :, :m, :m] = end
        S_keep[depth, :ms] = keep
        S_left[depth, : n - 1] = leftmost
        S_al[depth, :m] = al
        S_be[depth, :m] = be
        S_mir[depth] = mirrored
        S_m[depth] = m
        depth += 1
        U = Us
        lab = labs
        m = ms
        n -= 1

    buf = np.zeros(width + 1, np.int64)
    while depth > 0:
        depth -= 1
        n += 1
        m = S_m[depth]
        Uh = S_U[depth, :m, :m, :m]
        Uc = S_Uc[depth, :m, :m, :m]
        end = S_end[depth, :, :m, :m]
        keep = S_keep[depth]
        leftmost = S_left[depth]
        al = S_al[depth]
        be = S_be[depth]
        inner = P
        for r in range(6):
            inner[r] = _map_chain(inner[r], keep)
        P = np.zeros((6, width), np.int64)
        for e in range(2):
            cup = inner[3 * e]
            left = inner[3 * e + 1]
            right = inner[3 * e + 2]
            p = cup[1]
            i = be[p]
            x_i = leftmost[i - 1]
            z = left[1]
            if not (be[z] < n - 1 and al[z] >= 2):
                status[0] = 21
                return P
            if left[0] + 1 > i:
                status[0] = 22
                return P
            buf[0] = x_i
            for t in range(cup[0]):
                buf[1 + t] = cup[1 + t]
            P[3 * e] = _cup_from(Uc, buf, cup[0] + 1, width, status)
            P[3 * e + 1] = chain_ending_at(Uc, end, 1, x_i, n - 1 - right[0], width, status)
            P[3 * e + 2] = right
            if status[0]:
                return P
        if S_mir[depth]:
            P = _reflect_pair(P, m)
        if not pair_ok(Uh, P, n):
            status[0] = 25
            return P
    return P


# -- pair to gon -----------------------------------------------------------


@njit(cache=True)
def _colliding(U, lab, c1, c2, n, width, status):
    G = np.zeros((2, width), np.int64)
    x = _last(c1)
    a = c1[c1[0] - 1]
    c = _last(c2)
    if lab[a, c2[2]] != 1:
        status[0] = 24
        return G
    buf = np.zeros(width + 1, np.int64)
    buf[0] = a
    for t in range(c2[0] - 1):
        buf[1 + t] = c2[2 + t]
    a_tail = _cup_from(U, buf, c2[0], width, status)
    if status[0]:
        return G
    if U[a, x, c] == 1:
        status[0] = 26
        return G
    G[0, 0] = 3
    G[0, 1] = a
    G[0, 2] = x
    G[0, 3] = c
    G[1] = a_tail
    return G


@njit(cache=True)
def _interweaved(U, lab, P, n, width, status):
    G = np.zeros((2, width), np.int64)
    p = _first(P[0])
    r = _last(P[0])
    q = _first(P[3])
    if lab[q, r] != 1:
        status[0] = 24
        return G
    if lab[p, q] == 1 or U[p, q, r] == 1:
        # the argument yields an n-cup here
        status[0] = 26
        return G
    G[0, 0] = 3
    G[0, 1] = p
    G[0, 2] = q
    G[0, 3] = r
    G[1] = P[0]
    return G


@njit(cache=True)
def _reflect_gon(G, m):
    out = np.zeros_like(G)
    out[0] = _reflect_chain(G[0], m)
    out[1] = _reflect_chain(G[1], m)
    return out


@njit(cache=True)
def gon_from_pair(U, m, lab, P, n, width, status):
    q = _first(P[3])
    r = _last(P[0])
    if q == r:
        c1 = P[0]
        c2 = P[3]
        if lab[c1[c1[0] - 1], c2[2]] == 2:
            G = _colliding(
                mirror_u(U, m), mirror_lab(lab, m), _reflect_chain(c2, m), _reflect_chain(c1, m), n, width, status
            )
            return _reflect_gon(G, m)
        return _colliding(U, lab, c1, c2, n, width, status)
    if lab[q, r] == 2:
        G = _interweaved(mirror_u(U, m), mirror_lab(lab, m), _reflect_pair(P, m), n, width, status)
        return _reflect_gon(G, m)
    return _interweaved(U, lab, P, n, width, status)


@njit(cache=True)
def find_gon(row, m, n, status):
    """Kernel twin of the reference ``find_gon`` for an input of exactly
    ``C(n-1, 2) + 2`` vertices.  Returns the two gon chains."""
    width = m + 1
    U = build_u(row, m)
    end, start = tables(U, m)
    G = np.zeros((2, width), np.int64)
    if longest(end, 0, m) >= 4:
        status[0] = 1
        return G
    if longest(end, 1, m) >= n:
        status[0] = 2
        return G
    lab = canonical_lab(start, m)
    if not lab_ok(U, lab, m):
        status[0] = 3
        return G
    P = find_pair(U, m, lab, n, width, status)
    if status[0]:
        return G
    if not pair_ok(U, P, n):
        status[0] = 25
        return G
    G = gon_from_pair(U, m, lab, P, n, width, status)
    if status[0]:
        return G
    if G[0, 0] != 3 or G[1, 0] != n - 1:
        status[0] = 27
        return G
    if not (
        _is_kind(U, G[0], 0)
        and _is_kind(U, G[1], 1)
        and _first(G[0]) == _first(G[1])
        and _last(G[0]) == _last(G[1])
    ):
        status[0] = 28
    return G


@njit(cache=True)
def find_gon_batch(rows, m, n, out_gons, keep_gons):
    """Run :func:`find_gon` on every row; returns per-status counts and the
    first row index per status."""
    counts = np.zeros(32, np.int64)
    first = np.full(32, -1, np.int64)
    status = np.zeros(1, np.int64)
    for r in range(rows.shape[0]):
        status[0] = 0
        G = find_gon(rows[r], m, n, status)
        s = status[0]
        counts[s] += 1
        if first[s] < 0:
            first[s] = r
        if keep_gons:
            out_gons[r] = G
    return counts, first


# -- families of mutually interweaved laced cups ---------------------------


@njit(cache=True)
def _source_sizes(U, m, x, kind):
    table = np.zeros((m, m), np.int64)
    for u in range(x + 1, m):
        table[x, u] = 4
    for v in range(x + 2, m):
        for u in range(x + 1, v):
            acc = 0
            for t in range(x, u):
                bits = table[t, u]
                if bits and U[t, u, v] == kind:
                    acc |= bits
            if acc:
                table[u, v] |= acc << 1
    return table


@njit(cache=True)
def laced_pairs(U, m, n):
    """Endpoint pairs of laced (n-1)-cups sorted by (start, end)."""
    end, start = tables(U, m)
    out = np.zeros((m * (m - 1) // 2, 2), np.int64)
    count = 0
    for p in range(m):
        left = longest_ending_at(end, 1, p)
        table = _source_sizes(U, m, p, 1)
        for r in range(p + 1, m):
            acc = 0
            for u in range(p, r):
                acc |= table[u, r]
            if (acc >> (n - 1)) & 1 and left + longest_starting_at(start, 1, r, m) >= n - 1:
                out[count, 0] = p
                out[count, 1] = r
                count += 1
    return out[:count]


@njit(cache=True)
def _popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit(cache=True)
def _lowest_bit(x):
    u = 0
    while not (x >> u) & 1:
        u += 1
    return u


@njit(cache=True)
def _clique(adj, k, chosen, full):
    """Branch and bound over successor bitsets; the first clique found in
    lexicographic order of pair indices."""
    if k == 0:
        return True
    cand = np.zeros(k + 1, np.int64)
    cand[0] = full
    depth = 0
    entering = True
    while True:
        if entering:
            if depth == k:
                return True
            if depth + _popcount(cand[depth]) < k:
                if depth == 0:
                    return False
                depth -= 1
                entering = False
                continue
        elif depth + 1 + _popcount(cand[depth]) < k:
            if depth == 0:
                return False
            depth -= 1
            continue
        if cand[depth] == 0:
            if depth == 0:
                return False
            depth -= 1
            entering = False
            continue
        u = _lowest_bit(cand[depth])
        cand[depth] ^= np.int64(1) << u
        chosen[depth] = u
        cand[depth + 1] = cand[depth] & adj[u]
        depth += 1
        entering = True


@njit(cache=True)
def family(U, m, n, k, chosen_out):
    """Whether ``k`` mutually interweaved laced (n-1)-cups exist; writes the
    chosen endpoint pairs into ``chosen_out``."""
    pairs = laced_pairs(U, m, n)
    count = pairs.shape[0]
    adj = np.zeros(count, np.int64)
    for u in range(count):
        for w in range(u + 1, count):
            if pairs[u, 0] < pairs[w, 0] <= pairs[u, 1] < pairs[w, 1]:
                adj[u] |= np.int64(1) << w
    chosen = np.zeros(max(k, 1), np.int64)
    full = (np.int64(1) << count) - 1 if count < 63 else np.int64(-1)
    if not _clique(adj, k, chosen, full):
        return False
    for t in range(k):
        chosen_out[t, 0] = pairs[chosen[t], 0]
        chosen_out[t, 1] = pairs[chosen[t], 1]
    return True


@njit(cache=True)
def family_batch(rows, m, n, k):
    """Number of rows with a k-family, and the index of the first without."""
    found = 0
    first_missing = -1
    chosen = np.zeros((max(k, 1), 2), np.int64)
    for r in range(rows.shape[0]):
        if family(build_u(rows[r], m), m, n, k, chosen):
            found += 1
        elif first_missing < 0:
            first_missing = r
    return found, first_missing


# -- random walk -----------------------------------------------------------


@njit(cache=True)
def free_walk(row, m, a, b, steps, seed):
    """Flip random triples of ``row`` in place, undoing every flip that
    creates an ``a``-cap or a ``b``-cup.  Returns the accepted flips."""
    np.random.seed(seed)
    n3 = row.shape[0]
    idx = np.zeros((n3, 3), np.int64)
    t = 0
    for i in range(m):
        for j in range(i + 1, m):
            for k in range(j + 1, m):
                idx[t, 0], idx[t, 1], idx[t, 2] = i, j, k
                t += 1
    U = build_u(row, m)
    accepted = 0
    for _ in range(steps):
        t = np.random.randint(n3)
        i, j, k = idx[t, 0], idx[t, 1], idx[t, 2]
        U[i, j, k] = 1 - U[i, j, k]
        end, _s = tables(U, m)
        if longest(end, 0, m) < a and longest(end, 1, m) < b:
            row[t] = U[i, j, k]
            accepted += 1
        else:
            U[i, j, k] = 1 - U[i, j, k]
    return accepted


# -- family cover ----------------------------------------------------------
#
# Fix the middle vertices 1..m-2 of an m-vertex configuration.  A chain uses
# at most one triple at vertex 0 and at most one at vertex m-1, a triple
# (0, x, m-1) lies on no chain longer than three, and laced pairs only grow
# when cap triples turn into cups.  So every completion of the middle
# contains a cup-minimal one (one cup per pair (0,i,j) / (i,j,m-1), caps on
# all (0,x,m-1)), and families only need checking there.


@njit(cache=True)
def _reach(Um, q, eidx, steps):
    """``out[e]``: bitmask of edges ``f`` reachable from ``e`` by a cup path
    of at least ``steps`` turns (``e`` itself when ``steps`` is 0)."""
    ne = q * (q - 1) // 2
    one = np.zeros(ne, np.int64)
    for v in range(q - 1, -1, -1):
        for u in range(v):
            acc = np.int64(0)
            for w in range(v + 1, q):
                if Um[u, v, w] == 1:
                    f = eidx[v, w]
                    acc |= (np.int64(1) << f) | one[f]
            one[eidx[u, v]] = acc
    cur = np.zeros(ne, np.int64)
    for e in range(ne):
        cur[e] = (np.int64(1) << e) | one[e]
    for _ in range(steps):
        nxt = np.zeros(ne, np.int64)
        for u in range(q):
            for v in range(u + 1, q):
                acc = np.int64(0)
                for w in range(v + 1, q):
                    if Um[u, v, w] == 1:
                        acc |= cur[eidx[v, w]]
                nxt[eidx[u, v]] = acc
        cur = nxt
    return cur


@njit(cache=True)
def family_cover(mids, q, n, k, stats, missing):
    """Settle the k-family question for every 4-cap, n-cup free completion
    of each ``q``-vertex middle row in ``mids``.

    ``stats`` accumulates ``[completions, minimal, with_family]``; rows of
    minimal completions without a family go to ``missing`` (as many as fit).
    Returns the number of such rows found.
    """
    m = q + 2
    ne = q * (q - 1) // 2
    eu = np.zeros(ne, np.int64)
    ev = np.zeros(ne, np.int64)
    eidx = np.zeros((q, q), np.int64)
    e = 0
    for u in range(q):
        for v in range(u + 1, q):
            eu[e], ev[e], eidx[u, v] = u, v, e
            e += 1
    steps = max(n - 4, 0)
    opt0 = np.zeros((ne, 3), np.int64)
    opt9 = np.zeros((ne, 3), np.int64)
    nopt = np.zeros(ne, np.int64)
    keep11 = np.zeros(ne, np.bool_)
    pick = np.zeros(ne, np.int64)
    chosen = np.zeros((max(k, 1), 2), np.int64)
    found_missing = 0
    for r in range(mids.shape[0]):
        Um = build_u(mids[r], q)
        end, start = tables(Um, q)
        dead = False
        for e in range(ne):
            u, v = eu[e], ev[e]
            cup0 = start[0, u, v] >= 3
            cap0 = start[1, u, v] >= n - 1
            cup9 = end[0, u, v] >= 3
            cap9 = end[1, u, v] >= n - 1
            c = 0
            for x, y in ((1, 0), (0, 1), (1, 1)):
                if (x == 0 and cup0) or (x == 1 and cap0) or (y == 0 and cup9) or (y == 1 and cap9):
                    continue
                opt0[e, c], opt9[e, c] = x, y
                c += 1
            nopt[e] = c
            keep11[e] = cup0 and cup9
            if c == 0:
                dead = True
        if dead:
            continue
        fwd = _reach(Um, q, eidx, steps)
        back = np.zeros(ne, np.int64)
        for e in range(ne):
            for f in range(ne):
                if (fwd[e] >> f) & 1:
                    back[f] |= np.int64(1) << e
        # iterative DFS over edges; forbidding masks are recomputed from
        # the chosen cups, which is cheap next to the family search
        t = 0
        pick[0] = -1
        while t >= 0:
            pick[t] += 1
            if pick[t] >= nopt[t]:
                t -= 1
                continue
            x, y = opt0[t, pick[t]], opt9[t, pick[t]]
            ok = True
            for s in range(t + 1):
                xs = opt0[s, pick[s]] if s < t else x
                ys = opt9[s, pick[s]] if s < t else y
                if x == 1 and ys == 1 and (fwd[t] >> s) & 1:
                    ok = False
                if y == 1 and xs == 1 and (back[t] >> s) & 1:
                    ok = False
            if not ok:
                continue
            if t + 1 < ne:
                t += 1
                pick[t] = -1
                continue
            stats[0] += np.int64(1) << q
            minimal = True
            for s in range(ne):
                if opt0[s, pick[s]] == 1 and opt9[s, pick[s]] == 1 and not keep11[s]:
                    minimal = False
                    break
            if not minimal:
                continue
            stats[1] += 1
            U = np.zeros((m, m, m), np.uint8)
            for i in range(q):
                for j in range(i + 1, q):
                    for l in range(j + 1, q):
                        U[i + 1, j + 1, l + 1] = Um[i, j, l]
            for s in range(ne):
                U[0, eu[s] + 1, ev[s] + 1] = opt0[s, pick[s]]
                U[eu[s] + 1, ev[s] + 1, m - 1] = opt9[s, pick[s]]
            if family(U, m, n, k, chosen):
                stats[2] += 1
            else:
                if found_missing < missing.shape[0]:
                    t3 = 0
                    for i in range(m):
                        for j in range(i + 1, m):
                            for l in range(j + 1, m):
                                missing[found_missing, t3] = U[i, j, l]
                                t3 += 1
                found_missing += 1
    return found_missing
