"""Caps, cups and gons inside a configuration.

Chain lengths are computed by dynamic programming keyed on the *last edge*
``(u, v)``: whether a chain can be continued depends on its final two
vertices, not just the final one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .configuration import CAP, CUP, Configuration, Orientation, _check_ascending
from .errors import PreconditionError


@dataclass(frozen=True)
class Chain:
    kind: Orientation
    vertices: tuple[int, ...]

    def __post_init__(self):
        vs = tuple(self.vertices)
        object.__setattr__(self, "vertices", vs)
        if not vs:
            raise PreconditionError("a chain needs at least one vertex")
        if any(b <= a for a, b in zip(vs, vs[1:])):
            raise PreconditionError(f"chain vertices {vs} are not strictly ascending")

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def reflected(self, m: int) -> "Chain":
        """The same chain seen in the mirror configuration."""
        return Chain(self.kind, tuple(m - 1 - v for v in reversed(self.vertices)))

    def mapped(self, old_of_new: Sequence[int]) -> "Chain":
        """Translate indices of a restricted configuration back to the host."""
        return Chain(self.kind, tuple(old_of_new[v] for v in self.vertices))

    def __str__(self) -> str:
        return f"{self.kind} " + " ".join(map(str, self.vertices))


def cap(*vs) -> Chain:
    return Chain(CAP, vs)


def cup(*vs) -> Chain:
    return Chain(CUP, vs)


@dataclass(frozen=True)
class GonWitness:
    """A cap and a cup sharing both endpoints."""

    cap: Chain
    cup: Chain

    @property
    def a(self) -> int:
        return len(self.cap)

    @property
    def b(self) -> int:
        return len(self.cup)

    @property
    def n(self) -> int:
        return self.a + self.b - 2

    @property
    def strong(self) -> bool:
        shared = set(self.cap.vertices) & set(self.cup.vertices)
        return shared == {self.cap.start, self.cap.end}

    def reflected(self, m: int) -> "GonWitness":
        return GonWitness(self.cap.reflected(m), self.cup.reflected(m))

    def mapped(self, old_of_new) -> "GonWitness":
        return GonWitness(self.cap.mapped(old_of_new), self.cup.mapped(old_of_new))


def is_chain(config: Configuration, vs: Sequence[int], kind: Orientation) -> bool:
    _check_ascending(vs, config.m)
    want = kind is CUP
    return all(config.is_cup(*vs[t : t + 3]) == want for t in range(len(vs) - 2))


def first_violation(config: Configuration, chain: Chain) -> Optional[tuple[int, int, int]]:
    """The first consecutive triple whose orientation differs from the chain's kind."""
    vs = chain.vertices
    _check_ascending(vs, config.m)
    want = chain.kind is CUP
    for t in range(len(vs) - 2):
        if config.is_cup(*vs[t : t + 3]) != want:
            return vs[t], vs[t + 1], vs[t + 2]
    return None


class ChainTables:
    """Longest cap/cup through every edge of a configuration.

    ``end[kind][u][v]`` is the largest size of a chain of that kind whose last
    edge is ``(u, v)``; ``start[kind][u][v]`` the largest size of one whose
    first edge is ``(u, v)``.  Entries with ``u >= v`` are zero.
    """

    def __init__(self, config: Configuration):
        self.config = config
        m = config.m
        self.end = {CAP: _end_table(config, CAP), CUP: _end_table(config, CUP)}
        self.start = {CAP: _start_table(config, CAP), CUP: _start_table(config, CUP)}
        self.m = m

    def longest_ending_at(self, v: int, kind: Orientation) -> int:
        col = self.end[kind]
        return max([1] + [col[u][v] for u in range(v)])

    def longest_starting_at(self, u: int, kind: Orientation) -> int:
        return max([1] + self.start[kind][u][u + 1 :])

    def longest(self, kind: Orientation) -> int:
        if self.m == 1:
            return 1
        return max(max(row) for row in self.end[kind])

    def chain_ending_with(self, u: int, v: int, kind: Orientation, size=None) -> Chain:
        """A chain whose last edge is ``(u, v)``; longest unless ``size`` given.

        With ``size`` the longest chain is cut down by dropping its earliest
        vertices, which keeps it a chain with the same last edge.
        """
        end = self.end[kind]
        best = end[u][v]
        if size is None:
            size = best
        if not 2 <= size <= best:
            raise PreconditionError(f"no {kind} of size {size} ends with edge ({u}, {v})")
        conf = self.config
        want = kind is CUP
        rev = [v, u]
        while len(rev) < best:
            b, c = rev[-1], rev[-2]
            need = end[b][c] - 1
            for t in range(b):
                if conf.is_cup(t, b, c) == want and end[t][b] == need:
                    rev.append(t)
                    break
            else:  # pragma: no cover - table inconsistency
                raise AssertionError("chain table reconstruction failed")
        return Chain(kind, tuple(reversed(rev[:size])))

    def chain_starting_with(self, u: int, v: int, kind: Orientation, size=None) -> Chain:
        start = self.start[kind]
        best = start[u][v]
        if size is None:
            size = best
        if not 2 <= size <= best:
            raise PreconditionError(f"no {kind} of size {size} starts with edge ({u}, {v})")
        conf = self.config
        want = kind is CUP
        seq = [u, v]
        while len(seq) < best:
            a, b = seq[-2], seq[-1]
            need = start[a][b] - 1
            for t in range(b + 1, self.m):
                if conf.is_cup(a, b, t) == want and start[b][t] == need:
                    seq.append(t)
                    break
            else:  # pragma: no cover
                raise AssertionError("chain table reconstruction failed")
        return Chain(kind, tuple(seq[:size]))

    def chain_ending_at(self, v: int, kind: Orientation, size=None) -> Chain:
        """A chain ending at vertex ``v`` (longest, or exactly ``size``)."""
        best = self.longest_ending_at(v, kind)
        if size is None:
            size = best
        if not 1 <= size <= best:
            raise PreconditionError(f"no {kind} of size {size} ends at {v}")
        if size == 1:
            return Chain(kind, (v,))
        col = self.end[kind]
        u = next(u for u in range(v) if col[u][v] == best)
        return self.chain_ending_with(u, v, kind, size)

    def chain_starting_at(self, u: int, kind: Orientation, size=None) -> Chain:
        best = self.longest_starting_at(u, kind)
        if size is None:
            size = best
        if not 1 <= size <= best:
            raise PreconditionError(f"no {kind} of size {size} starts at {u}")
        if size == 1:
            return Chain(kind, (u,))
        row = self.start[kind][u]
        v = next(v for v in range(u + 1, self.m) if row[v] == best)
        return self.chain_starting_with(u, v, kind, size)

    def longest_chain(self, kind: Orientation) -> Chain:
        if self.m == 1:
            return Chain(kind, (0,))
        best = self.longest(kind)
        end = self.end[kind]
        for v in range(self.m):
            for u in range(v):
                if end[u][v] == best:
                    return self.chain_ending_with(u, v, kind)
        raise AssertionError("unreachable")  # pragma: no cover


def _end_table(config: Configuration, kind: Orientation) -> list[list[int]]:
    m = config.m
    want = kind is CUP
    end = [[0] * m for _ in range(m)]
    for v in range(m):
        for u in range(v):
            best = 2
            for t in range(u):
                if config.is_cup(t, u, v) == want and end[t][u] + 1 > best:
                    best = end[t][u] + 1
            end[u][v] = best
    return end


def _start_table(config: Configuration, kind: Orientation) -> list[list[int]]:
    m = config.m
    want = kind is CUP
    start = [[0] * m for _ in range(m)]
    for u in range(m - 1, -1, -1):
        for v in range(m - 1, u, -1):
            best = 2
            for w in range(v + 1, m):
                if config.is_cup(u, v, w) == want and start[v][w] + 1 > best:
                    best = start[v][w] + 1
            start[u][v] = best
    return start


def chain_tables(config: Configuration) -> ChainTables:
    if config.m < 2:
        raise PreconditionError("chain tables need at least two vertices")
    return ChainTables(config)


def find_forbidden(config: Configuration, a: int, b: int) -> Optional[Chain]:
    """An ``a``-cap or ``b``-cup (caps checked first), or ``None``."""
    if a < 2 or b < 2:
        raise PreconditionError("a and b must be at least 2")
    if config.m < 2:
        return None
    tables = ChainTables(config)
    for kind, size in ((CAP, a), (CUP, b)):
        if tables.longest(kind) >= size:
            c = tables.longest_chain(kind)
            return Chain(kind, c.vertices[:size])
    return None


# -- exact-size chains between fixed endpoints -----------------------------


class SourceSizes:
    """Achievable chain sizes from a fixed start vertex ``x``.

    ``table[u][v]`` is a bitmask: bit ``s`` is set when some chain of the
    given kind from ``x`` has size ``s`` and last edge ``(u, v)``.
    """

    def __init__(self, config: Configuration, x: int, kind: Orientation):
        m = config.m
        want = kind is CUP
        table = [[0] * m for _ in range(m)]
        for u in range(x + 1, m):
            table[x][u] = 1 << 2
        for v in range(x + 2, m):
            for u in range(x + 1, v):
                acc = 0
                for t in range(x, u):
                    bits = table[t][u]
                    if bits and config.is_cup(t, u, v) == want:
                        acc |= bits
                if acc:
                    table[u][v] |= acc << 1
        self.config = config
        self.x = x
        self.kind = kind
        self.table = table

    def sizes_to(self, y: int) -> int:
        """Bitmask of sizes of chains from ``x`` to ``y``."""
        if y == self.x:
            return 1 << 1
        acc = 0
        for u in range(self.x, y):
            acc |= self.table[u][y]
        return acc

    def chains_to(self, y: int, size: int) -> Iterator[Chain]:
        """Every chain from ``x`` to ``y`` of exactly ``size`` vertices."""
        if size == 1:
            if y == self.x:
                yield Chain(self.kind, (y,))
            return
        for u in range(self.x, y):
            if self.table[u][y] >> size & 1:
                for head in self._paths(u, y, size):
                    yield Chain(self.kind, head)

    def chain_to(self, y: int, size: int) -> Optional[Chain]:
        return next(self.chains_to(y, size), None)

    def _paths(self, u, v, size):
        if size == 2:
            if u == self.x:
                yield (u, v)
            return
        want = self.kind is CUP
        for t in range(self.x, u):
            if self.table[t][u] >> (size - 1) & 1 and self.config.is_cup(t, u, v) == want:
                for head in self._paths(t, u, size - 1):
                    yield head + (v,)


def gon_search(
    config: Configuration, a: int, b: int, strength: str = "weak"
) -> Optional[GonWitness]:
    """Find an ``a``-cap and ``b``-cup sharing both endpoints.

    ``strength="strong"`` additionally requires the two chains to meet only in
    their endpoints.
    """
    if a < 2 or b < 2:
        raise PreconditionError("a and b must be at least 2")
    if strength not in ("weak", "strong"):
        raise PreconditionError(f"strength must be 'weak' or 'strong', got {strength!r}")
    m = config.m
    if strength == "strong" and m < a + b - 2:
        return None
    for x in range(m):
        caps = SourceSizes(config, x, CAP)
        cups = SourceSizes(config, x, CUP)
        for y in range(x + 1, m):
            if not (caps.sizes_to(y) >> a & 1 and cups.sizes_to(y) >> b & 1):
                continue
            if strength == "weak":
                return GonWitness(caps.chain_to(y, a), cups.chain_to(y, b))
            cup_list = list(cups.chains_to(y, b))
            for c in caps.chains_to(y, a):
                inner = set(c.vertices[1:-1])
                for d in cup_list:
                    if inner.isdisjoint(d.vertices[1:-1]):
                        return GonWitness(c, d)
    return None
