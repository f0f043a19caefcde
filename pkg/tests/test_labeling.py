import random
from itertools import combinations
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from capcup import (
    CAP,
    AvoidanceSpec,
    CUP,
    ChainTables,
    Configuration,
    ForbiddenPatternError,
    GridSimplex,
    PreconditionError,
    SlopeLabeling,
    alpha_beta_plane,
    alpha_statistic,
    canonical_labeling,
    capcup_extremal_points,
    configuration_from_points,
    mirror_labeling,
    random_point_set,
    validate_labeling,
)
from capcup.search import iter_free_rows
from conftest import free_configs, sampled_free
from exhaustive_props import PROPS, check_rows
from oracles import alpha_tuples, canonical_labels, triple_map

A, B, C, D, E, F = range(6)
FIGURE_LABELS = {
    (A, B): 2, (A, C): 1, (A, D): 2, (A, E): 2, (B, C): 1, (B, E): 2, (B, F): 1,
    (C, F): 1, (D, E): 1, (D, F): 1, (E, F): 1,
    # caption
    (A, F): 1, (B, D): 2, (C, D): 2, (C, E): 2,
}
FIGURE_CELLS = [(1, 1), (1, 2), (2, 2), (1, 3), (2, 3), (3, 3)]


def small_free():
    """Exhaustive: every 4-cap, 4-cup free configuration, and every 4-cap,
    5-cup free one up to six vertices, in both orientations."""
    out = []
    for m in range(2, 7):
        for c in free_configs(m, 4, 5):
            out += [c, c.mirror()]
    return out


SMALL = small_free()
SAMPLED = sampled_free(7, 40, b=5) + sampled_free(8, 40, b=6)


def test_figure_labels(cfg6):
    lab = canonical_labeling(cfg6, 4)
    assert dict(lab.items()) == FIGURE_LABELS
    assert validate_labeling(cfg6, lab) == (True, None)


def test_figure_statistic(cfg6):
    stat = alpha_statistic(cfg6, canonical_labeling(cfg6, 4), 4)
    assert list(stat.values) == FIGURE_CELLS
    assert stat.alpha(F) == 3 and stat.beta(B) == 2


def test_single_edge_and_single_vertex():
    c2 = Configuration.from_string(2, "")
    assert dict(canonical_labeling(c2, 4).items()) == {(0, 1): 1}
    assert validate_labeling(c2, SlopeLabeling(4, 2, {(0, 1): 2})) == (True, None)
    c1 = Configuration.from_string(1, "")
    assert alpha_statistic(c1, canonical_labeling(c1, 4), 2).values == ((1, 1),)
    plane = alpha_beta_plane(c1, 2)
    assert plane.occupied == {(1, 1): 0} and plane.holes == ()


def test_tampered_label_is_caught(cfg6):
    labels = dict(canonical_labeling(cfg6, 4).items())
    labels[(A, B)] = 1
    assert validate_labeling(cfg6, SlopeLabeling(4, 6, labels)) == (False, (A, B, C))


def test_partial_labeling_rejected(cfg6):
    with pytest.raises(PreconditionError):
        validate_labeling(cfg6, SlopeLabeling(4, 6, {(0, 1): 1}))


def test_label_range_enforced():
    with pytest.raises(PreconditionError):
        SlopeLabeling(4, 2, {(0, 1): 3})


def test_four_cap_rejected():
    c = Configuration.from_string(4, "AAAA")
    with pytest.raises(ForbiddenPatternError) as exc:
        canonical_labeling(c, 4)
    assert len(exc.value.witness) == 4


def test_mirror_labeling(cfg6):
    lab = canonical_labeling(cfg6, 4)
    mir = mirror_labeling(lab)
    assert mirror_labeling(mir) == lab
    assert validate_labeling(cfg6.mirror(), mir) == (True, None)
    assert mir.get(5 - F, 5 - A) == 3 - lab.get(A, F)


def test_plane_full_and_with_hole(cfg6):
    lab = canonical_labeling(cfg6, 4)
    plane = alpha_beta_plane(cfg6, 4, lab)
    assert plane.holes == () and plane.row(3) == [D, E, F]
    sub, keep = cfg6.restrict(range(5))
    plane = alpha_beta_plane(sub, 4, lab.restrict(keep))
    assert plane.holes == ((3, 3),)


@pytest.mark.parametrize("a,b", [(2, 5), (3, 3), (4, 4), (4, 6), (5, 5), (6, 4)])
def test_grid_simplex(a, b):
    g = GridSimplex(a, b)
    assert len(g) == comb(a + b - 4, a - 2)
    subsets = {g.to_subset(c) for c in g.cells}
    assert len(subsets) == len(g)
    assert all(len(s) == a - 2 and s <= set(range(1, a + b - 3)) for s in subsets)
    assert all(g.from_subset(g.to_subset(c)) == c for c in g.cells)


def test_canonical_labeling_matches_oracle():
    for c in SMALL[::7] + SAMPLED[:20]:
        tm = triple_map(c.m, c.to_string())
        assert dict(canonical_labeling(c, 4).items()) == canonical_labels(c.m, tm)


def test_labeling_validates_everywhere():
    for c in SMALL + SAMPLED:
        lab = canonical_labeling(c, 4)
        assert validate_labeling(c, lab) == (True, None)
        assert validate_labeling(c.mirror(), mirror_labeling(lab)) == (True, None)
        assert mirror_labeling(mirror_labeling(lab)) == lab


def test_statistic_matches_oracle_and_invariants():
    for c in SMALL[::5] + SAMPLED[:20]:
        b = ChainTables(c).longest(CUP) + 1
        lab = canonical_labeling(c, 4)
        stat = alpha_statistic(c, lab, b)
        tm = triple_map(c.m, c.to_string())
        assert list(stat.values) == alpha_tuples(c.m, tm, dict(lab.items()), 2)
        assert len(set(stat.values)) == c.m
        assert c.m <= len(GridSimplex(4, b))
        for (x, y), i in lab.items():
            assert stat[x][i - 1] < stat[y][i - 1]


def test_prepend_and_append_rules():
    """A label-1 edge (p, q) extends every cup starting at q to the left;
    a label-2 edge (p, q) extends every cup ending at p to the right."""
    for c in SMALL + SAMPLED:
        lab = canonical_labeling(c, 4)
        t = ChainTables(c)
        for (p, q), s in lab.items():
            if s == 1:
                assert all(c.is_cup(p, q, r) for r in range(q + 1, c.m))
            else:
                assert all(c.is_cup(o, p, q) for o in range(p))
            if s == 1 and q + 1 < c.m:
                assert t.longest_starting_at(p, CUP) >= t.longest_starting_at(q, CUP) + 1
            if s == 2 and p > 0:
                assert t.longest_ending_at(q, CUP) >= t.longest_ending_at(p, CUP) + 1


def test_plane_row_and_column_rules():
    for c in SMALL + SAMPLED:
        n = ChainTables(c).longest(CUP) + 1
        plane = alpha_beta_plane(c, n)
        assert len(plane.occupied) + len(plane.holes) == comb(n, 2)
        assert sorted(plane.occupied.values()) == list(range(c.m))


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 12), st.integers(0, 10**6), st.data())
def test_restriction_keeps_labeling_valid(m, seed, data):
    n = data.draw(st.integers(4, 7))
    full = configuration_from_points(capcup_extremal_points(4, n))
    rng = random.Random(seed)
    keep = sorted(rng.sample(range(full.m), min(m, full.m)))
    sub, _ = full.restrict(keep)
    lab = canonical_labeling(full, 4)
    assert validate_labeling(sub, lab.restrict(keep)) == (True, None)
    sub2 = sorted(rng.sample(range(len(keep)), max(1, len(keep) // 2)))
    assert validate_labeling(sub.restrict(sub2)[0], lab.restrict(keep).restrict(sub2)) == (True, None)


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 12), st.integers(0, 10**6))
def test_realizable_four_cap_free_labelings(m, seed):
    c = configuration_from_points(random_point_set(m, seed=seed, coordinate_bound=100))
    if ChainTables(c).longest(CAP) >= 4:
        keep = [v for v in range(m) if v % 3 != 1]
        c = c.restrict(keep)[0]
        if ChainTables(c).longest(CAP) >= 4:
            return
    lab = canonical_labeling(c, 4)
    assert validate_labeling(c, lab) == (True, None)


@pytest.mark.parametrize("n,top", [(4, 6), (5, 7), (6, 6)])
def test_exhaustive_properties(n, top):
    # every 4-cap, n-cup free configuration (not just one per mirror pair)
    for m in range(3, top + 1):
        bad = np.zeros(len(PROPS), np.int64)
        for rows in iter_free_rows(m, AvoidanceSpec(4, n), canonical=False):
            check_rows(rows, m, n, bad)
        assert dict(zip(PROPS, bad.tolist())) == dict.fromkeys(PROPS, 0)


@settings(max_examples=80, deadline=None)
@given(st.integers(3, 8), st.integers(4, 6), st.integers(0, 10**6))
def test_compiled_twin_matches_reference(m, n, seed):
    from capcup import _fast, random_free_configuration
    from capcup.search import config_to_row, laced_endpoint_pairs

    c = random_free_configuration(m, AvoidanceSpec(4, n), seed=seed)
    if c is None:
        return
    U = _fast.build_u(config_to_row(c), m)
    end, start = _fast.tables(U, m)
    lab = _fast.canonical_lab(start, m)
    ref = canonical_labeling(c, 4)
    assert all(lab[u, v] == s for (u, v), s in ref.items())
    status = np.zeros(1, np.int64)
    al, be = _fast._statistic(U, lab, end, m, n, status)
    assert status[0] == 0
    assert list(zip(al.tolist(), be.tolist())) == list(alpha_statistic(c, ref, n).values)
    assert [tuple(p) for p in _fast.laced_pairs(U, m, n).tolist()] == laced_endpoint_pairs(c, n)
