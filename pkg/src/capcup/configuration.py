"""Ordered 3-uniform hypergraph bi-colorings ("configurations").

A configuration on ``m`` vertices ``0 < 1 < ... < m-1`` assigns every
ascending triple ``(i, j, k)`` either :attr:`Orientation.CAP` or
:attr:`Orientation.CUP`.  Internally each pair ``(i, j)`` owns an integer
bitmask whose bit ``k`` is set when ``(i, j, k)`` is a cup, which keeps
lookups constant-time and the object cheap to hash.
"""

from __future__ import annotations

import enum
from itertools import combinations
from math import comb
from typing import Callable, Iterable, Iterator, Sequence

from .errors import ParseError, PreconditionError


class Orientation(enum.Enum):
    CAP = "A"
    CUP = "U"

    @property
    def opposite(self) -> "Orientation":
        return Orientation.CUP if self is Orientation.CAP else Orientation.CAP

    @classmethod
    def parse(cls, word: str) -> "Orientation":
        word = word.strip().lower()
        if word in ("cap", "a"):
            return cls.CAP
        if word in ("cup", "u"):
            return cls.CUP
        raise ParseError(f"unknown orientation {word!r}")

    def __str__(self) -> str:
        return self.name.lower()


CAP = Orientation.CAP
CUP = Orientation.CUP


def iter_triples(m: int) -> Iterator[tuple[int, int, int]]:
    """Ascending triples of ``range(m)`` in lexicographic order."""
    return combinations(range(m), 3)


def _check_ascending(vs: Sequence[int], m: int) -> None:
    prev = -1
    for v in vs:
        if not 0 <= v < m:
            raise PreconditionError(f"vertex {v} out of range for m={m}")
        if v <= prev:
            raise PreconditionError(f"vertices {tuple(vs)} are not strictly ascending")
        prev = v


class Configuration:
    """Immutable configuration of ``m`` linearly ordered vertices."""

    __slots__ = ("m", "_cups", "_hash")

    def __init__(self, m: int, cup_masks: Sequence[Sequence[int]]):
        if m < 1:
            raise PreconditionError("a configuration needs at least one vertex")
        if len(cup_masks) != m or any(len(row) != m for row in cup_masks):
            raise PreconditionError("cup mask table must be m x m")
        rows = []
        for i, row in enumerate(cup_masks):
            clean = []
            for j, mask in enumerate(row):
                # only bits k > j are meaningful for an ascending triple
                clean.append(mask >> (j + 1) << (j + 1) & ((1 << m) - 1) if j > i else 0)
            rows.append(tuple(clean))
        self.m = m
        self._cups = tuple(rows)
        self._hash = None

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_function(
        cls, m: int, orient: Callable[[int, int, int], Orientation]
    ) -> "Configuration":
        masks = [[0] * m for _ in range(m)]
        for i, j, k in iter_triples(m):
            if orient(i, j, k) is CUP:
                masks[i][j] |= 1 << k
        return cls(m, masks)

    @classmethod
    def from_string(cls, m: int, text: str) -> "Configuration":
        """Build from the ``A``/``U`` string over lexicographic triples."""
        text = text.strip()
        if len(text) != comb(m, 3):
            raise ParseError(
                f"expected {comb(m, 3)} triple characters for m={m}, got {len(text)}"
            )
        masks = [[0] * m for _ in range(m)]
        for (i, j, k), ch in zip(iter_triples(m), text):
            if ch == "U":
                masks[i][j] |= 1 << k
            elif ch != "A":
                raise ParseError(f"triple character must be A or U, got {ch!r}")
        return cls(m, masks)

    @classmethod
    def from_bits(cls, m: int, bits: Iterable[int]) -> "Configuration":
        """Build from 0/1 values in lexicographic triple order (1 = cup)."""
        return cls.from_string(m, "".join("U" if b else "A" for b in bits))

    # -- queries --------------------------------------------------------

    def is_cup(self, i: int, j: int, k: int) -> bool:
        """Unchecked fast path; assumes ``i < j < k``."""
        return bool(self._cups[i][j] >> k & 1)

    def orientation(self, i: int, j: int, k: int) -> Orientation:
        if not (0 <= i < j < k < self.m):
            raise PreconditionError(
                f"triple ({i}, {j}, {k}) is not ascending within m={self.m}"
            )
        return CUP if self._cups[i][j] >> k & 1 else CAP

    def cup_mask(self, i: int, j: int) -> int:
        """Bitmask of all ``k`` such that ``(i, j, k)`` is a cup."""
        return self._cups[i][j]

    @property
    def num_triples(self) -> int:
        return comb(self.m, 3)

    def triples(self) -> Iterator[tuple[tuple[int, int, int], Orientation]]:
        for t in iter_triples(self.m):
            yield t, (CUP if self._cups[t[0]][t[1]] >> t[2] & 1 else CAP)

    def to_string(self) -> str:
        cups = self._cups
        return "".join(
            "U" if cups[i][j] >> k & 1 else "A" for i, j, k in iter_triples(self.m)
        )

    # -- transformations ------------------------------------------------

    def mirror(self) -> "Configuration":
        """Reverse the vertex order; vertex ``i`` becomes ``m-1-i``."""
        m = self.m
        top = m - 1
        return Configuration.from_function(
            m, lambda i, j, k: self.orientation(top - k, top - j, top - i)
        )

    def restrict(self, keep: Iterable[int]) -> tuple["Configuration", tuple[int, ...]]:
        """Induced sub-configuration on ``keep``.

        Returns the new configuration together with ``old_of_new``, where
        ``old_of_new[t]`` is the original index of new vertex ``t``.
        """
        keep = tuple(keep)
        if not keep:
            raise PreconditionError("cannot restrict to an empty vertex set")
        _check_ascending(keep, self.m)
        return (
            Configuration.from_function(
                len(keep), lambda i, j, k: self.orientation(keep[i], keep[j], keep[k])
            ),
            keep,
        )

    # -- dunder ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Configuration):
            return NotImplemented
        return self.m == other.m and self._cups == other._cups

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.m, self._cups))
        return self._hash

    def __repr__(self) -> str:
        if self.m <= 7:
            return f"Configuration({self.m}, {self.to_string()!r})"
        return f"Configuration(m={self.m})"


def mirror(config: Configuration) -> Configuration:
    return config.mirror()


def restrict(config: Configuration, keep: Iterable[int]):
    return config.restrict(keep)


def is_mirror_canonical(config: Configuration) -> bool:
    """True when the triple string is lexicographically <= its mirror's."""
    return config.to_string() <= config.mirror().to_string()


# -- file format --------------------------------------------------------


def format_configuration(config: Configuration) -> str:
    return f"configuration {config.m}\n{config.to_string()}\n"


def parse_configuration(text: str) -> Configuration:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty configuration file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "configuration":
        raise ParseError(f"expected 'configuration <m>', got {lines[0]!r}")
    try:
        m = int(head[1])
    except ValueError:
        raise ParseError(f"bad vertex count {head[1]!r}") from None
    if m < 1:
        raise ParseError("vertex count must be positive")
    body = lines[1] if len(lines) > 1 else ""
    if len(lines) > 2:
        raise ParseError("configuration file has trailing lines")
    return Configuration.from_string(m, body)
