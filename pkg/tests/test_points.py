from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from capcup import (
    CAP,
    CUP,
    DegenerateInputError,
    ParseError,
    PointSet,
    PreconditionError,
    configuration_from_points,
    format_points,
    orient_points,
    parse_points,
    random_point_set,
    shear_to_distinct_x,
)
from conftest import CFG6, FIG2_POINTS
from oracles import config_string


def test_orientation_basics():
    assert orient_points((0, 0), (1, 1), (2, 0)) is CAP
    assert orient_points((0, 0), (1, -1), (2, 0)) is CUP
    assert orient_points((0, 0), (1, 1), (2, 2)) is None


def test_figure_triangle_is_cap():
    assert orient_points((-4, 0), ("-3/2", -1), ("-1/2", -3)) is CAP


def test_orient_requires_increasing_x():
    with pytest.raises(PreconditionError):
        orient_points((1, 0), (0, 1), (2, 2))


def test_figure_configuration(fig2_points):
    assert configuration_from_points(fig2_points).to_string() == CFG6


def test_single_point_and_left_turn():
    assert configuration_from_points([(5, 5)]).m == 1
    assert configuration_from_points([(0, 0), (1, 0), (2, 1)]).to_string() == "U"


def test_degenerate_inputs_are_rejected():
    with pytest.raises(DegenerateInputError, match="duplicate x"):
        PointSet([(0, 0), (0, 1), (2, 5)])
    with pytest.raises(DegenerateInputError, match="collinear"):
        PointSet([(0, 0), (1, 1), (3, 3)])


def test_parse_and_format_round_trip():
    text = "# figure\n-4 0\n-3/2 -1\n-1/2 -3\n1/2 3\n3/2 1\n4 0\n"
    pts = parse_points(text)
    assert pts[1] == (Fraction(-3, 2), Fraction(-1))
    assert parse_points(format_points(pts)) == pts


@pytest.mark.parametrize("bad", ["1\n", "1 2 3\n", "a 1\n", "1/0 2\n"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_points(bad)


def test_shear_separates_duplicate_x():
    pts = shear_to_distinct_x([(0, 0), (0, 1), (2, 5)])
    assert len({p[0] for p in pts}) == 3
    PointSet(pts)


def test_random_point_set_is_deterministic():
    assert random_point_set(23, seed=7).points == random_point_set(23, seed=7).points
    assert len(random_point_set(3, seed=1)) == 3
    with pytest.raises(PreconditionError):
        random_point_set(10, coordinate_bound=2)


coords = st.lists(
    st.tuples(st.integers(-50, 50), st.integers(-50, 50)), min_size=1, max_size=9, unique_by=lambda p: p[0]
)


@settings(max_examples=150, deadline=None)
@given(coords)
def test_configuration_matches_oracle(pts):
    try:
        ps = PointSet(pts)
    except DegenerateInputError:
        return
    assert configuration_from_points(ps).to_string() == config_string(pts)


big = st.integers(-(10**12), 10**12)
rational = st.fractions(min_value=-5, max_value=5, max_denominator=40)


@settings(max_examples=150, deadline=None)
@given(st.one_of(
    st.lists(st.tuples(big, big), min_size=3, max_size=8, unique_by=lambda p: p[0]),
    st.lists(st.tuples(rational, rational), min_size=3, max_size=8, unique_by=lambda p: p[0]),
))
def test_large_and_rational_coordinates_match_oracle(pts):
    # exercises the Python-integer path and the common-denominator scaling
    try:
        ps = PointSet(pts)
    except DegenerateInputError as exc:
        p, q, r = exc.points
        assert orient_points(p, q, r) is None
        return
    assert configuration_from_points(ps).to_string() == config_string(pts)


@settings(max_examples=50, deadline=None)
@given(st.integers(3, 12), st.integers(0, 10**6))
def test_mirrored_points_give_mirrored_configuration(m, seed):
    ps = random_point_set(m, seed=seed, coordinate_bound=1000)
    flipped = [(-x, y) for x, y in ps]
    assert configuration_from_points(flipped) == configuration_from_points(ps).mirror()
