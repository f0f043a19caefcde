"""Exact planar point sets and their configurations."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, islice
from math import lcm
from typing import Iterable, Optional, Sequence

import numpy as np

from .configuration import CAP, CUP, Configuration, Orientation
from .errors import DegenerateInputError, ParseError, PreconditionError

Point = tuple[Fraction, Fraction]


def as_point(p) -> Point:
    x, y = p
    return Fraction(x), Fraction(y)


def cross(p: Point, q: Point, r: Point) -> Fraction:
    """Exact cross product ``(q - p) x (r - q)``."""
    return (q[0] - p[0]) * (r[1] - q[1]) - (q[1] - p[1]) * (r[0] - q[0])


def orient_points(p, q, r) -> Optional[Orientation]:
    """Orientation of three points with increasing x.

    Returns ``CAP`` for a right turn, ``CUP`` for a left turn and ``None``
    when the points are collinear.
    """
    p, q, r = as_point(p), as_point(q), as_point(r)
    if not p[0] < q[0] < r[0]:
        raise PreconditionError(f"x-coordinates of {p}, {q}, {r} are not increasing")
    c = cross(p, q, r)
    if c > 0:
        return CUP
    if c < 0:
        return CAP
    return None


def triple_signs(pts: Sequence[Point]) -> np.ndarray:
    """Sign of :func:`cross` for every triple of ``pts`` (given in x order),
    in lexicographic triple order.

    Scaling each axis by a positive integer keeps every sign, so the points
    are first brought to integer coordinates.  Small integers go through
    vectorized int64 arithmetic, anything larger through Python integers.
    """
    m = len(pts)
    sx = lcm(*(p[0].denominator for p in pts)) if pts else 1
    sy = lcm(*(p[1].denominator for p in pts)) if pts else 1
    xs = [int(p[0] * sx) for p in pts]
    ys = [int(p[1] * sy) for p in pts]
    if m < 3:
        return np.zeros(0, np.int8)
    if max(map(abs, xs + ys)) < 1 << 29:
        # |differences| < 2^30, so each product stays below 2^60
        x = np.array(xs, np.int64)
        y = np.array(ys, np.int64)
        tri = np.array(list(combinations(range(m), 3)), np.int64)
        i, j, k = tri[:, 0], tri[:, 1], tri[:, 2]
        c = (x[j] - x[i]) * (y[k] - y[j]) - (y[j] - y[i]) * (x[k] - x[j])
        return np.sign(c).astype(np.int8)
    out = [
        (xs[j] - xs[i]) * (ys[k] - ys[j]) - (ys[j] - ys[i]) * (xs[k] - xs[j])
        for i, j, k in combinations(range(m), 3)
    ]
    return np.array([(v > 0) - (v < 0) for v in out], np.int8)


@dataclass(frozen=True)
class PointSet:
    """Points in general position, stored sorted by x."""

    points: tuple[Point, ...]

    def __init__(self, points: Iterable):
        pts = sorted(as_point(p) for p in points)
        for a, b in zip(pts, pts[1:]):
            if a[0] == b[0]:
                raise DegenerateInputError(
                    f"duplicate x-coordinate {_fmt(a[0])}: {_fmt_pt(a)} and {_fmt_pt(b)}",
                    (a, b),
                )
        signs = triple_signs(pts)
        flat = np.flatnonzero(signs == 0)
        if len(flat):
            t = int(flat[0])
            p, q, r = (pts[v] for v in next(islice(combinations(range(len(pts)), 3), t, None)))
            raise DegenerateInputError(
                f"collinear points {_fmt_pt(p)}, {_fmt_pt(q)}, {_fmt_pt(r)}",
                (p, q, r),
            )
        object.__setattr__(self, "points", tuple(pts))
        object.__setattr__(self, "_signs", signs)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]


def configuration_from_points(ps) -> Configuration:
    """Order points by x and record the cap/cup type of every triple."""
    if not isinstance(ps, PointSet):
        ps = PointSet(ps)
    pts = ps.points
    if not pts:
        raise PreconditionError("empty point set")

    return Configuration.from_bits(len(pts), ps._signs > 0)


def shear_to_distinct_x(points: Sequence) -> list[Point]:
    """Apply a tiny shear ``x -> x + eps*y`` so that all x become distinct.

    The shear has determinant one, so it keeps every turn direction; but
    points that shared an x-coordinate get ordered by y, which is a choice
    the original data did not make.  Collinear triples stay collinear.
    """
    pts = [as_point(p) for p in points]
    xs = sorted({p[0] for p in pts})
    gaps = [b - a for a, b in zip(xs, xs[1:])]
    span = max((abs(p[1] - q[1]) for p in pts for q in pts), default=Fraction(0))
    min_gap = min(gaps, default=Fraction(1))
    eps = min_gap / (2 * span + 1) / 2
    return [(x + eps * y, y) for x, y in pts]


# -- text format --------------------------------------------------------


def _fmt(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _fmt_pt(p: Point) -> str:
    return f"({_fmt(p[0])}, {_fmt(p[1])})"


def _parse_coord(tok: str, lineno: int) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"line {lineno}: bad coordinate {tok!r}") from None


def parse_points(text: str) -> list[Point]:
    """Parse ``x y`` lines; ``#`` starts a comment line."""
    pts = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        toks = line.split()
        if len(toks) != 2:
            raise ParseError(f"line {lineno}: expected 'x y', got {raw!r}")
        pts.append((_parse_coord(toks[0], lineno), _parse_coord(toks[1], lineno)))
    return pts


def format_points(points: Iterable) -> str:
    return "".join(f"{_fmt(x)} {_fmt(y)}\n" for x, y in map(as_point, points))
