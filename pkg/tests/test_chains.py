from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from capcup import (
    CAP,
    CUP,
    Chain,
    ChainTables,
    Configuration,
    PreconditionError,
    SourceSizes,
    find_forbidden,
    gon_search,
    is_chain,
)
from oracles import has_chain, has_gon, longest, longest_ending_with, longest_starting_with, triple_map

KIND = {CAP: "A", CUP: "U"}


def configs(min_m=2, max_m=8):
    return st.integers(min_m, max_m).flatmap(
        lambda m: st.text("AU", min_size=comb(m, 3), max_size=comb(m, 3)).map(lambda t: Configuration.from_string(m, t))
    )


def test_cfg6_longest_chains(cfg6):
    t = ChainTables(cfg6)
    assert t.longest(CAP) == 3 and t.longest(CUP) == 3
    assert find_forbidden(cfg6, 4, 4) is None
    assert find_forbidden(cfg6, 3, 4).kind is CAP


def test_chain_validation():
    with pytest.raises(PreconditionError):
        Chain(CUP, (2, 1))
    c = Configuration.from_string(4, "UUUU")
    assert is_chain(c, (0, 1, 2, 3), CUP)
    assert not is_chain(c, (0, 1, 3), CAP)


@settings(max_examples=120, deadline=None)
@given(configs())
def test_tables_match_oracle(c):
    m, tm = c.m, triple_map(c.m, c.to_string())
    t = ChainTables(c)
    for kind, ch in KIND.items():
        assert t.longest(kind) == longest(m, tm, ch)
        for u, v in combinations(range(m), 2):
            assert t.end[kind][u][v] == longest_ending_with(m, tm, ch, u, v)
            assert t.start[kind][u][v] == longest_starting_with(m, tm, ch, u, v)
        chain = t.longest_chain(kind)
        assert len(chain) == t.longest(kind) and is_chain(c, chain.vertices, kind)


@settings(max_examples=120, deadline=None)
@given(configs(), st.integers(3, 5), st.integers(3, 5))
def test_find_forbidden_matches_oracle(c, a, b):
    tm = triple_map(c.m, c.to_string())
    w = find_forbidden(c, a, b)
    expect = has_chain(c.m, tm, "A", a) or has_chain(c.m, tm, "U", b)
    assert (w is not None) == expect
    if w is not None:
        assert len(w) == (a if w.kind is CAP else b)
        assert is_chain(c, w.vertices, w.kind)


@settings(max_examples=100, deadline=None)
@given(configs(), st.integers(2, 4), st.integers(2, 5), st.sampled_from(["weak", "strong"]))
def test_gon_search_matches_oracle(c, a, b, strength):
    tm = triple_map(c.m, c.to_string())
    g = gon_search(c, a, b, strength)
    assert (g is not None) == has_gon(c.m, tm, a, b, strength == "strong")
    if g is not None:
        assert len(g.cap) == a and len(g.cup) == b
        assert (g.cap.start, g.cap.end) == (g.cup.start, g.cup.end)
        assert is_chain(c, g.cap.vertices, CAP) and is_chain(c, g.cup.vertices, CUP)
        if strength == "strong":
            assert g.strong


def test_gon_search_exhaustive_m5():
    for bits in range(1 << 10):
        c = Configuration.from_bits(5, [(bits >> t) & 1 for t in range(10)])
        tm = triple_map(5, c.to_string())
        for a, b in ((3, 3), (3, 4), (4, 3)):
            assert (gon_search(c, a, b) is not None) == has_gon(5, tm, a, b)


@settings(max_examples=60, deadline=None)
@given(configs(3, 8), st.data())
def test_source_sizes_exact_paths(c, data):
    x = data.draw(st.integers(0, c.m - 1))
    kind = data.draw(st.sampled_from([CAP, CUP]))
    ss = SourceSizes(c, x, kind)
    tm = triple_map(c.m, c.to_string())
    for y in range(x + 1, c.m):
        for size in range(2, y - x + 2):
            want = any(
                is_chain(c, (x,) + mid + (y,), kind) for mid in combinations(range(x + 1, y), size - 2)
            )
            assert bool(ss.sizes_to(y) >> size & 1) == want
            ch = ss.chain_to(y, size)
            assert (ch is not None) == want
            if ch is not None:
                assert ch.vertices[0] == x and ch.vertices[-1] == y and len(ch) == size


def test_reflected_chain_is_chain_in_mirror(cfg6):
    for kind in (CAP, CUP):
        ch = ChainTables(cfg6).longest_chain(kind)
        assert is_chain(cfg6.mirror(), ch.reflected(6).vertices, kind)
