"""Point-set generators: the classic cups-caps extremal set and random sets."""

from __future__ import annotations

import math
import random
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .errors import DegenerateInputError, PreconditionError
from .points import PointSet


def _max_abs_slope(pts) -> Fraction:
    return max(
        (abs(Fraction(q[1] - p[1], q[0] - p[0])) for p, q in combinations(pts, 2)),
        default=Fraction(0),
    )


@lru_cache(maxsize=None)
def _extremal(a: int, b: int) -> tuple[tuple[int, int], ...]:
    if a == 2 or b == 2:
        return ((0, 0),)
    # the lower-left block may hold a cup of size b-2, extended by one point
    # of the upper block; the upper block may hold a cap of size a-2,
    # extended by one point of the lower block
    left = _extremal(a, b - 1)
    right = _extremal(a - 1, b)
    slope = max(_max_abs_slope(left), _max_abs_slope(right))
    lx_max = max(x for x, _ in left)
    lx_min = min(x for x, _ in left)
    rx_min = min(x for x, _ in right)
    rx_max = max(x for x, _ in right)
    dx = lx_max - rx_min + 1
    width = rx_max + dx - lx_min
    ly_max = max(y for _, y in left)
    ry_min = min(y for _, y in right)
    dy = math.ceil(slope * width) + ly_max - ry_min + 1
    return left + tuple((x + dx, y + dy) for x, y in right)


def capcup_extremal_points(a: int, b: int) -> PointSet:
    """``C(a+b-4, a-2)`` integer points with no ``a``-cap and no ``b``-cup."""
    if a < 2 or b < 2:
        raise PreconditionError("a and b must be at least 2")
    return PointSet(_extremal(a, b))


def random_point_set(m: int, seed: int = 0, coordinate_bound: int = 10**6, max_tries: int = 1000) -> PointSet:
    """Integer points in ``[-bound, bound]^2`` in general position.

    Rejection sampling with :class:`random.Random` seeded by ``seed``, so a
    given ``(m, seed, coordinate_bound)`` always gives the same set.
    """
    if m < 1:
        raise PreconditionError("m must be positive")
    if 2 * coordinate_bound + 1 < m:
        raise PreconditionError(
            f"coordinate bound {coordinate_bound} leaves fewer than {m} distinct x values"
        )
    rng = random.Random(seed)
    span = range(-coordinate_bound, coordinate_bound + 1)
    for _ in range(max_tries):
        xs = rng.sample(span, m)
        pts = [(x, rng.randint(-coordinate_bound, coordinate_bound)) for x in xs]
        try:
            return PointSet(pts)
        except DegenerateInputError:
            continue
    raise PreconditionError(f"no general-position sample in {max_tries} tries")
