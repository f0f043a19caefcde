"""Brute-force reference implementations used only by the tests.

Everything here works straight from the triple string, by exhaustive
enumeration of vertex subsets, and shares no code with the package.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product


def triple_map(m: int, text: str) -> dict:
    """``{(i, j, k): 'A' | 'U'}`` from a lex-ordered triple string."""
    return dict(zip(combinations(range(m), 3), text))


def orientation(p, q, r) -> str:
    """'U' for a left turn, 'A' for a right turn, '0' when collinear."""
    (px, py), (qx, qy), (rx, ry) = (tuple(map(Fraction, t)) for t in (p, q, r))
    d = (qx - px) * (ry - py) - (qy - py) * (rx - px)
    return "U" if d > 0 else "A" if d < 0 else "0"


def config_string(points) -> str:
    pts = sorted(points, key=lambda t: Fraction(t[0]))
    return "".join(orientation(pts[i], pts[j], pts[k]) for i, j, k in combinations(range(len(pts)), 3))


def is_chain(tm: dict, vs, ch: str) -> bool:
    return all(tm[tuple(vs[t : t + 3])] == ch for t in range(len(vs) - 2))


def all_chains(m: int, tm: dict, ch: str, min_size: int = 1):
    for size in range(max(min_size, 1), m + 1):
        for vs in combinations(range(m), size):
            if is_chain(tm, vs, ch):
                yield vs


def longest(m: int, tm: dict, ch: str) -> int:
    best = min(m, 2)
    for size in range(3, m + 1):
        if any(is_chain(tm, vs, ch) for vs in combinations(range(m), size)):
            best = size
        else:
            # sub-chains of chains are chains, so sizes are downward closed
            break
    return best


def longest_ending_with(m: int, tm: dict, ch: str, u: int, v: int) -> int:
    best = 2
    for size in range(3, v + 2):
        for head in combinations(range(u), size - 2):
            if is_chain(tm, head + (u, v), ch):
                best = size
                break
    return best


def longest_starting_with(m: int, tm: dict, ch: str, u: int, v: int) -> int:
    best = 2
    for size in range(3, m - u + 1):
        for tail in combinations(range(v + 1, m), size - 2):
            if is_chain(tm, (u, v) + tail, ch):
                best = size
                break
    return best


def has_chain(m: int, tm: dict, ch: str, size: int) -> bool:
    if size <= 2:
        return m >= size
    return any(is_chain(tm, vs, ch) for vs in combinations(range(m), size))


def has_gon(m: int, tm: dict, a: int, b: int, strong: bool = False) -> bool:
    """An a-cap and a b-cup with common endpoints (disjoint interiors if
    ``strong``)."""
    for x, y in combinations(range(m), 2):
        inner = range(x + 1, y)
        caps = [c for c in combinations(inner, a - 2) if is_chain(tm, (x,) + c + (y,), "A")]
        if not caps:
            continue
        for c2 in combinations(inner, b - 2):
            if not is_chain(tm, (x,) + c2 + (y,), "U"):
                continue
            if not strong or any(not set(c) & set(c2) for c in caps):
                return True
    return False


def mirror_string(m: int, text: str) -> str:
    tm = triple_map(m, text)
    top = m - 1
    return "".join(tm[(top - k, top - j, top - i)] for i, j, k in combinations(range(m), 3))


def free_strings(m: int, a=None, b=None, gon=None, canonical: bool = True) -> list[str]:
    """Every triple string on ``m`` vertices avoiding the given patterns."""
    out = []
    n3 = len(list(combinations(range(m), 3)))
    for bits in product("AU", repeat=n3):
        text = "".join(bits)
        tm = triple_map(m, text)
        if a is not None and has_chain(m, tm, "A", a):
            continue
        if b is not None and has_chain(m, tm, "U", b):
            continue
        if gon is not None and has_gon(m, tm, gon[0], gon[1], gon[2] == "strong"):
            continue
        if canonical and text > mirror_string(m, text):
            continue
        out.append(text)
    return out


def laced_pairs(m: int, tm: dict, n: int) -> list[tuple[int, int]]:
    """Endpoints (p, r) of (n-1)-cups with a cup ending at p and one
    starting at r whose sizes add up to at least n-1."""
    out = set()
    ends = {v: max(len(c) for c in all_chains(m, tm, "U") if c[-1] == v) for v in range(m)}
    starts = {v: max(len(c) for c in all_chains(m, tm, "U") if c[0] == v) for v in range(m)}
    for c in combinations(range(m), n - 1):
        if is_chain(tm, c, "U") and ends[c[0]] + starts[c[-1]] >= n - 1:
            out.add((c[0], c[-1]))
    return sorted(out)


def has_k_family(m: int, tm: dict, n: int, k: int) -> bool:
    pairs = laced_pairs(m, tm, n)
    for group in combinations(pairs, k):
        if all(p < q <= r < s for (p, r), (q, s) in combinations(group, 2)):
            return True
    return False


def canonical_labels(m: int, tm: dict) -> dict:
    """Edge label = (longest cap starting with the edge) - 1."""
    return {(u, v): longest_starting_with(m, tm, "A", u, v) - 1 for u, v in combinations(range(m), 2)}


def alpha_tuples(m: int, tm: dict, labels: dict, width: int) -> list[tuple[int, ...]]:
    """Longest cup ending at p whose last edge has label <= i, per i."""
    out = []
    for p in range(m):
        row = []
        for i in range(1, width + 1):
            best = 1
            for c in all_chains(m, tm, "U", 2):
                if c[-1] == p and labels[(c[-2], p)] <= i:
                    best = max(best, len(c))
            row.append(best)
        out.append(tuple(row))
    return out
