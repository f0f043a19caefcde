"""Slope labelings, the alpha-statistic and the (alpha, beta)-plane."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement
from math import comb
from typing import Iterable, Iterator, Mapping, Optional

from .chains import CAP, CUP, ChainTables, find_forbidden
from .configuration import Configuration
from .errors import ForbiddenPatternError, PreconditionError, ProofInvariantError


class SlopeLabeling:
    """Integer labels in ``[1, a-2]`` on the edges ``u < v`` of ``m`` vertices."""

    __slots__ = ("a", "m", "_labels")

    def __init__(self, a: int, m: int, labels):
        if a < 3 and m > 1:
            raise PreconditionError("labels need a >= 3 when there are edges")
        self.a = a
        self.m = m
        grid = [[0] * m for _ in range(m)]
        if isinstance(labels, Mapping):
            items = labels.items()
        else:
            items = (((u, v), labels[u][v]) for u, v in combinations(range(m), 2))
        for (u, v), lab in items:
            if not 0 <= u < v < m:
                raise PreconditionError(f"edge ({u}, {v}) is not ascending within m={m}")
            if not 1 <= lab <= a - 2:
                raise PreconditionError(f"label {lab} of edge ({u}, {v}) outside [1, {a - 2}]")
            grid[u][v] = lab
        self._labels = tuple(tuple(row) for row in grid)

    def __getitem__(self, edge: tuple[int, int]) -> int:
        u, v = edge
        lab = self._labels[u][v] if 0 <= u < v < self.m else 0
        if not lab:
            raise KeyError(edge)
        return lab

    def get(self, u: int, v: int) -> int:
        """Unchecked lookup; 0 means unlabeled."""
        return self._labels[u][v]

    @property
    def is_total(self) -> bool:
        return all(self._labels[u][v] for u, v in combinations(range(self.m), 2))

    def items(self) -> Iterator[tuple[tuple[int, int], int]]:
        for u, v in combinations(range(self.m), 2):
            if self._labels[u][v]:
                yield (u, v), self._labels[u][v]

    def restrict(self, keep: Iterable[int]) -> "SlopeLabeling":
        keep = tuple(keep)
        return SlopeLabeling(
            self.a,
            len(keep),
            {(i, j): self._labels[keep[i]][keep[j]] for i, j in combinations(range(len(keep)), 2)},
        )

    def mirror(self) -> "SlopeLabeling":
        top = self.m - 1
        return SlopeLabeling(
            self.a,
            self.m,
            {(top - v, top - u): self.a - 1 - lab for (u, v), lab in self.items()},
        )

    def __eq__(self, other):
        if not isinstance(other, SlopeLabeling):
            return NotImplemented
        return (self.a, self.m, self._labels) == (other.a, other.m, other._labels)

    def __hash__(self):
        return hash((self.a, self.m, self._labels))

    def __repr__(self):
        return f"SlopeLabeling(a={self.a}, m={self.m})"


def canonical_labeling(config: Configuration, a: int = 4, tables: Optional[ChainTables] = None):
    """Label each edge by one less than the longest cap starting with it."""
    if a < 3:
        raise PreconditionError("a must be at least 3")
    if config.m < 2:
        return SlopeLabeling(a, config.m, {})
    tables = tables or ChainTables(config)
    if tables.longest(CAP) >= a:
        witness = find_forbidden(config, a, config.m + 2)
        raise ForbiddenPatternError(f"configuration contains an {a}-cap", witness)
    start = tables.start[CAP]
    m = config.m
    return SlopeLabeling(
        a, m, {(u, v): start[u][v] - 1 for u, v in combinations(range(m), 2)}
    )


def validate_labeling(config: Configuration, labeling: SlopeLabeling):
    """Check that ``s(xy) <= s(yz)`` forces ``xyz`` to be a cup.

    Returns ``(True, None)`` or ``(False, (x, y, z))`` for the first violation.
    """
    if labeling.m != config.m:
        raise PreconditionError("labeling and configuration sizes differ")
    if not labeling.is_total:
        raise PreconditionError("labeling is partial")
    get = labeling.get
    for x, y, z in combinations(range(config.m), 3):
        if get(x, y) <= get(y, z) and not config.is_cup(x, y, z):
            return False, (x, y, z)
    return True, None


def mirror_labeling(labeling: SlopeLabeling) -> SlopeLabeling:
    return labeling.mirror()


# -- alpha statistic -------------------------------------------------------


@dataclass(frozen=True)
class AlphaStatistic:
    a: int
    b: int
    values: tuple[tuple[int, ...], ...]

    def __getitem__(self, p: int) -> tuple[int, ...]:
        return self.values[p]

    def __len__(self):
        return len(self.values)

    # aliases used when a == 4
    def alpha(self, p: int) -> int:
        return self.values[p][0]

    def beta(self, p: int) -> int:
        return self.values[p][1]


def alpha_statistic(
    config: Configuration,
    labeling: SlopeLabeling,
    b: int,
    tables: Optional[ChainTables] = None,
) -> AlphaStatistic:
    """Per vertex ``p`` and label ``i``: longest cup ending at ``p`` whose
    last edge has label ``<= i`` (1 if there is none).

    The result is checked against its defining properties before returning:
    weakly increasing entries in ``[1, b-1]``, strict increase of ``alpha_i``
    along every edge labeled ``i``, and injectivity.
    """
    a = labeling.a
    if labeling.m != config.m:
        raise PreconditionError("labeling and configuration sizes differ")
    witness = find_forbidden(config, a, b)
    if witness is not None:
        raise ForbiddenPatternError(f"configuration is not {a}-cap and {b}-cup free", witness)
    m = config.m
    width = a - 2
    if m == 1:
        return AlphaStatistic(a, b, ((1,) * width,))
    tables = tables or ChainTables(config)
    cup_end = tables.end[CUP]
    values = []
    for p in range(m):
        best = [1] * width
        for u in range(p):
            lab = labeling.get(u, p)
            size = cup_end[u][p]
            for i in range(lab - 1, width):
                if size > best[i]:
                    best[i] = size
        values.append(tuple(best))
    stat = AlphaStatistic(a, b, tuple(values))
    check_alpha_statistic(stat, labeling)
    return stat


def check_alpha_statistic(stat: AlphaStatistic, labeling: SlopeLabeling) -> None:
    a, b = stat.a, stat.b
    for p, tup in enumerate(stat.values):
        if tup and not (1 <= tup[0] and tup[-1] <= b - 1):
            raise ProofInvariantError("alpha tuple outside [1, b-1]", vertex=p, value=tup)
        if any(x > y for x, y in zip(tup, tup[1:])):
            raise ProofInvariantError("alpha tuple not weakly increasing", vertex=p, value=tup)
    for (x, y), lab in labeling.items():
        if not stat.values[x][lab - 1] < stat.values[y][lab - 1]:
            raise ProofInvariantError(
                "alpha_i does not increase along an edge labeled i",
                edge=(x, y),
                label=lab,
                alpha_x=stat.values[x],
                alpha_y=stat.values[y],
            )
    if len(set(stat.values)) != len(stat.values):
        raise ProofInvariantError("alpha statistic is not injective", values=stat.values)
    bound = comb(a + b - 4, a - 2)
    if len(stat.values) > bound:
        raise ProofInvariantError("more vertices than grid cells", m=len(stat.values), bound=bound)


# -- grid simplex ----------------------------------------------------------


@dataclass(frozen=True)
class GridSimplex:
    """Weakly increasing tuples of length ``a-2`` with entries in ``[1, b-1]``."""

    a: int
    b: int
    cells: tuple[tuple[int, ...], ...] = field(init=False)

    def __post_init__(self):
        if self.a < 2 or self.b < 2:
            raise PreconditionError("a and b must be at least 2")
        cells = tuple(combinations_with_replacement(range(1, self.b), self.a - 2))
        object.__setattr__(self, "cells", cells)

    def __len__(self):
        return len(self.cells)

    def __contains__(self, cell) -> bool:
        cell = tuple(cell)
        return (
            len(cell) == self.a - 2
            and all(1 <= x <= self.b - 1 for x in cell)
            and all(x <= y for x, y in zip(cell, cell[1:]))
        )

    def to_subset(self, cell) -> frozenset[int]:
        """``(x_1, ..., x_k) -> {x_i + i - 1}``, an (a-2)-subset of ``[1, a+b-4]``."""
        return frozenset(x + i for i, x in enumerate(cell))

    def from_subset(self, subset) -> tuple[int, ...]:
        return tuple(x - i for i, x in enumerate(sorted(subset)))


def grid_simplex(a: int, b: int) -> GridSimplex:
    return GridSimplex(a, b)


# -- (alpha, beta)-plane ---------------------------------------------------


@dataclass(frozen=True)
class AlphaBetaPlane:
    n: int
    occupied: dict
    holes: tuple[tuple[int, int], ...]
    statistic: AlphaStatistic
    labeling: SlopeLabeling

    def vertex_at(self, alpha: int, beta: int):
        return self.occupied.get((alpha, beta))

    def row(self, beta: int) -> list[int]:
        """Vertices with the given beta, sorted by alpha (equivalently by index)."""
        return [v for (al, be), v in sorted(self.occupied.items()) if be == beta]


def alpha_beta_plane(
    config: Configuration, n: int, labeling: Optional[SlopeLabeling] = None
) -> AlphaBetaPlane:
    """Place each vertex of a 4-cap, ``n``-cup free configuration at
    ``(alpha_1, alpha_2)`` inside the triangle ``1 <= alpha <= beta <= n-1``."""
    tables = ChainTables(config) if config.m > 1 else None
    if labeling is None:
        labeling = canonical_labeling(config, 4, tables)
    if labeling.a != 4:
        raise PreconditionError("the (alpha, beta)-plane needs labels in {1, 2}")
    stat = alpha_statistic(config, labeling, n, tables)
    occupied = {stat[p]: p for p in range(config.m)}
    holes = tuple(c for c in GridSimplex(4, n).cells if c not in occupied)
    for p, q in combinations(range(config.m), 2):
        (ap, bp), (aq, bq) = stat[p], stat[q]
        if bp == bq and not (labeling.get(p, q) == 1 and ap < aq):
            raise ProofInvariantError("same-beta pair is not a label-1 edge ordered by alpha", p=p, q=q)
        if ap == aq and not (labeling.get(p, q) == 2 and bp < bq):
            raise ProofInvariantError("same-alpha pair is not a label-2 edge ordered by beta", p=p, q=q)
    return AlphaBetaPlane(n, occupied, holes, stat, labeling)
