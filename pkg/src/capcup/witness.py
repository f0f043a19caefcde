"""Constructive extraction of interweaved laced cups and (3, n-1)-gons.

Every routine here follows a case analysis on edge labels of a fixed slope
labeling.  Where the argument says "reflect if necessary", the routine runs
on the mirrored configuration and mirrored labeling, then reflects its
result back.  Results are re-verified before they leave this module; a
failed check raises :class:`~capcup.errors.ProofInvariantError`.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Optional, Union

from .certificate import (
    Certificate,
    InterweavedPair,
    LacedCup,
    _check_laced,
    is_interweaved,
    verify_certificate,
)
from .chains import CAP, CUP, Chain, ChainTables, GonWitness, find_forbidden, is_chain
from .configuration import Configuration
from .errors import ForbiddenPatternError, PreconditionError, ProofInvariantError
from .labeling import (
    AlphaStatistic,
    SlopeLabeling,
    alpha_beta_plane,
    alpha_statistic,
    canonical_labeling,
    validate_labeling,
)

__all__ = [
    "BoundaryData",
    "Rows",
    "boundary_points",
    "find_gon",
    "find_interweaved_laced_pair",
    "full_grid_family",
    "gon_from_colliding_cups",
    "gon_from_interweaved_pair",
    "is_interweaved",
    "lacing_witness",
    "pair_from_special",
    "rows_and_leftmost",
]


def _require_cup(config: Configuration, chain: Chain, size: int, name: str) -> None:
    if chain.kind is not CUP or len(chain) != size or not is_chain(config, chain.vertices, CUP):
        raise PreconditionError(f"{name} must be a {size}-cup, got {chain}")


def _require_labeling(config: Configuration, labeling: SlopeLabeling) -> None:
    if labeling.a != 4 or labeling.m != config.m:
        raise PreconditionError("expected a {1, 2} slope labeling of this configuration")


def _cup(config: Configuration, vs, what: str, **context) -> Chain:
    """Build a cup the argument claims exists, checking the claim."""
    vs = tuple(vs)
    if not is_chain(config, vs, CUP):
        raise ProofInvariantError(f"{what} is not a cup", vertices=vs, **context)
    return Chain(CUP, vs)


def _check_pair(config: Configuration, pair: InterweavedPair, n: int, where: str) -> None:
    reason = _check_laced(config, pair.first, n) or _check_laced(config, pair.second, n)
    if not reason and not is_interweaved(pair.first.cup, pair.second.cup):
        reason = "cups are not interweaved"
    if reason:
        raise ProofInvariantError(f"{where} produced an invalid pair: {reason}", pair=pair, n=n)


# -- lacing ---------------------------------------------------------------


def lacing_witness(
    config: Configuration, cup_chain: Chain, n: int, tables: Optional[ChainTables] = None
) -> Optional[LacedCup]:
    """Lace an ``(n-1)``-cup if possible.

    Takes the longest cup ending at its start and the longest cup starting
    at its end; if their sizes reach ``n-1`` they are cut down (earliest
    vertices of the left one, latest of the right one) to sum exactly
    ``n-1``.
    """
    _require_cup(config, cup_chain, n - 1, "cup")
    if n < 3:
        raise PreconditionError("lacing needs n >= 3")
    if config.m == 1:
        return None
    tables = tables or ChainTables(config)
    p, r = cup_chain.start, cup_chain.end
    left_max = tables.longest_ending_at(p, CUP)
    right_max = tables.longest_starting_at(r, CUP)
    if left_max + right_max < n - 1:
        return None
    left_size = min(left_max, n - 2)
    return LacedCup(
        cup_chain,
        tables.chain_ending_at(p, CUP, left_size),
        tables.chain_starting_at(r, CUP, n - 1 - left_size),
    )


# -- two colliding / interweaved cups force a gon -------------------------


def gon_from_colliding_cups(
    config: Configuration, labeling: SlopeLabeling, c1: Chain, c2: Chain, n: int
) -> Union[GonWitness, Chain]:
    """``c1`` ends where ``c2`` starts: return a (3, n-1)-gon, or the n-cup
    that would exist otherwise."""
    if n < 3:
        raise PreconditionError("n must be at least 3")
    _require_labeling(config, labeling)
    _require_cup(config, c1, n - 1, "C1")
    _require_cup(config, c2, n - 1, "C2")
    if c1.end != c2.start:
        raise PreconditionError(f"C1 ends at {c1.end} but C2 starts at {c2.start}")
    a, b = c1.vertices[-2], c2.vertices[1]
    if labeling.get(a, b) == 2:
        m = config.m
        res = _colliding(config.mirror(), labeling.mirror(), c2.reflected(m), c1.reflected(m), n)
        return res.reflected(m)
    return _colliding(config, labeling, c1, c2, n)


def _colliding(config, labeling, c1, c2, n):
    x = c1.end
    a = c1.vertices[-2]
    tail = c2.vertices[1:]
    c = tail[-1]
    if labeling.get(a, tail[0]) != 1:
        raise ProofInvariantError("reflection did not make edge ab label 1", a=a, b=tail[0])
    a_tail = _cup(config, (a,) + tail, "a.Q", a=a)
    if config.is_cup(a, x, c):
        return _cup(config, c1.vertices + (c,), "C1 extended by c")
    return GonWitness(Chain(CAP, (a, x, c)), a_tail)


def gon_from_interweaved_pair(
    config: Configuration, labeling: SlopeLabeling, pair: InterweavedPair, n: int
) -> Union[GonWitness, Chain]:
    """Turn interweaved laced (n-1)-cups into a (3, n-1)-gon (or an n-cup)."""
    if n < 3:
        raise PreconditionError("n must be at least 3")
    _require_labeling(config, labeling)
    reason = _check_laced(config, pair.first, n) or _check_laced(config, pair.second, n)
    if reason:
        raise PreconditionError(f"pair is not laced: {reason}")
    if not is_interweaved(pair.first.cup, pair.second.cup):
        raise PreconditionError("pair is not interweaved")
    q, r = pair.second.start, pair.first.end
    if q == r:
        return gon_from_colliding_cups(config, labeling, pair.first.cup, pair.second.cup, n)
    if labeling.get(q, r) == 2:
        m = config.m
        res = _interweaved(config.mirror(), labeling.mirror(), pair.reflected(m), n)
        return res.reflected(m)
    return _interweaved(config, labeling, pair, n)


def _interweaved(config, labeling, pair, n):
    p, r = pair.first.start, pair.first.end
    q = pair.second.start
    if labeling.get(q, r) != 1:
        raise ProofInvariantError("reflection did not make edge qr label 1", q=q, r=r)
    if labeling.get(p, q) == 1:
        # C2 would extend to the left by p
        return _cup(config, (p,) + pair.second.cup.vertices, "p.C2")
    if not config.is_cup(p, q, r):
        return GonWitness(Chain(CAP, (p, q, r)), pair.first.cup)
    return _cup(
        config,
        pair.first.left.vertices + (q,) + pair.first.right.vertices,
        "Cp.q.Cr",
    )


# -- the special configuration --------------------------------------------


def pair_from_special(
    config: Configuration,
    labeling: SlopeLabeling,
    c: Chain,
    cx: Chain,
    cy: Chain,
    n: int,
) -> InterweavedPair:
    """An (n-1)-cup from x to y, an (n-2)-cup ending at x and an (n-2)-cup
    starting at y give a pair of interweaved laced (n-1)-cups."""
    if n < 4:
        raise PreconditionError("this construction needs n >= 4")
    _require_labeling(config, labeling)
    _require_cup(config, c, n - 1, "C")
    _require_cup(config, cx, n - 2, "Cx")
    _require_cup(config, cy, n - 2, "Cy")
    if cx.end != c.start or cy.start != c.end:
        raise PreconditionError("Cx must end at the start of C and Cy start at its end")
    if labeling.get(c.start, c.end) == 2:
        m = config.m
        res = _special(
            config.mirror(), labeling.mirror(), c.reflected(m), cy.reflected(m), cx.reflected(m), n
        )
        pair = res.reflected(m)
    else:
        pair = _special(config, labeling, c, cx, cy, n)
    _check_pair(config, pair, n, "pair_from_special")
    return pair


def _special(config, labeling, c, cx, cy, n):
    x, y = c.start, c.end
    if labeling.get(x, y) != 1:
        raise ProofInvariantError("reflection did not make edge xy label 1", x=x, y=y)
    p_part = cx.vertices[:-1]
    q_part = c.vertices[1:-1]
    r_part = cy.vertices[1:]
    a, b, last = p_part[-1], q_part[0], r_part[-1]
    single = lambda v: Chain(CUP, (v,))  # noqa: E731
    x_y_r = LacedCup(_cup(config, (x, y) + r_part, "x.y.R"), cx, single(last))
    if labeling.get(a, b) == 1:
        first = LacedCup(_cup(config, (a,) + q_part + (y,), "a.Q.y"), single(a), cy)
        return InterweavedPair(first, x_y_r)
    if labeling.get(b, y) == 1:
        second = LacedCup(
            _cup(config, (b, y) + r_part, "b.y.R"),
            _cup(config, p_part + (b,), "P.b"),
            single(last),
        )
        return InterweavedPair(LacedCup(c, cx, single(y)), second)
    first = LacedCup(_cup(config, p_part + (b, y), "P.b.y"), single(p_part[0]), cy)
    return InterweavedPair(first, x_y_r)


# -- boundary points and rows ---------------------------------------------


@dataclass(frozen=True)
class BoundaryData:
    """Left/right endpoints of all (n-1)-cups and their extreme members."""

    left: frozenset
    right: frozenset
    p: int
    q: int


def boundary_points(
    config: Configuration,
    n: int,
    labeling: Optional[SlopeLabeling] = None,
    tables: Optional[ChainTables] = None,
) -> BoundaryData:
    """Endpoint sets of the (n-1)-cups; ``p`` is the rightmost left endpoint,
    ``q`` the leftmost right endpoint.  ``labeling`` is accepted for
    symmetry with the other routines; the result does not depend on it."""
    if config.m < 2:
        raise ProofInvariantError("no (n-1)-cup in a one-vertex configuration", n=n)
    tables = tables or ChainTables(config)
    left = frozenset(v for v in range(config.m) if tables.longest_starting_at(v, CUP) >= n - 1)
    right = frozenset(v for v in range(config.m) if tables.longest_ending_at(v, CUP) >= n - 1)
    if not left or not right:
        raise ProofInvariantError("configuration has no (n-1)-cup", n=n, m=config.m)
    data = BoundaryData(left, right, max(left), min(right))
    if data.p > data.q:
        raise ProofInvariantError("rightmost left endpoint lies after leftmost right endpoint", p=data.p, q=data.q)
    return data


@dataclass(frozen=True)
class Rows:
    """``leftmost[i-1]`` is the leftmost vertex with beta = i, for i = 1..n-1."""

    rows: tuple[tuple[int, ...], ...]
    leftmost: tuple[int, ...]

    @property
    def delta(self) -> tuple[int, ...]:
        return self.leftmost[:-1]


def rows_and_leftmost(
    config: Configuration,
    labeling: SlopeLabeling,
    n: int,
    stat: Optional[AlphaStatistic] = None,
) -> Rows:
    if stat is None:
        stat = alpha_statistic(config, labeling, n)
    rows = tuple(
        tuple(p for p in range(config.m) if stat.beta(p) == i) for i in range(1, n)
    )
    for i, row in enumerate(rows, 1):
        if not row:
            raise ProofInvariantError("empty row in the (alpha, beta)-plane", row=i, n=n, m=config.m)
    leftmost = tuple(row[0] for row in rows)
    if any(u >= v for u, v in zip(leftmost, leftmost[1:])):
        raise ProofInvariantError("leftmost row vertices are not increasing", leftmost=leftmost)
    return Rows(rows, leftmost)


# -- interweaved laced pair by induction ----------------------------------


def find_interweaved_laced_pair(
    config: Configuration, n: int, labeling: Optional[SlopeLabeling] = None
) -> InterweavedPair:
    """A pair of interweaved laced (n-1)-cups in a 4-cap, n-cup free
    configuration of size ``C(n-1, 2) + 2``.

    Raises :class:`ForbiddenPatternError` (carrying the chain) if the
    configuration has a 4-cap or an n-cup.
    """
    if n < 3:
        raise PreconditionError("n must be at least 3")
    need = comb(n - 1, 2) + 2
    if config.m != need:
        raise PreconditionError(f"expected {need} vertices for n={n}, got {config.m}")
    witness = find_forbidden(config, 4, n)
    if witness is not None:
        raise ForbiddenPatternError(f"configuration contains a {len(witness)}-{witness.kind}", witness)
    if labeling is None:
        labeling = canonical_labeling(config, 4)
    _require_labeling(config, labeling)
    ok, bad = validate_labeling(config, labeling)
    if not ok:
        raise PreconditionError(f"labeling violates the cup rule at triple {bad}")
    pair = _pair(config, labeling, n)
    _check_pair(config, pair, n, "find_interweaved_laced_pair")
    return pair


def _pair(config: Configuration, labeling: SlopeLabeling, n: int) -> InterweavedPair:
    if n == 3:
        one = lambda v: Chain(CUP, (v,))  # noqa: E731
        return InterweavedPair(
            LacedCup(Chain(CUP, (0, 1)), one(0), one(1)),
            LacedCup(Chain(CUP, (1, 2)), one(1), one(2)),
        )
    tables = ChainTables(config)
    bd = boundary_points(config, n, tables=tables)
    ends_at_p = tables.longest_ending_at(bd.p, CUP) >= n - 2
    starts_at_q = tables.longest_starting_at(bd.q, CUP) >= n - 2
    if ends_at_p and starts_at_q:
        pair = _both_extendable(config, labeling, n, tables, bd)
    elif starts_at_q:
        m = config.m
        pair = _induction_step(config.mirror(), labeling.mirror(), n).reflected(m)
    else:
        pair = _induction_step(config, labeling, n, tables, bd)
    _check_pair(config, pair, n, f"induction level n={n}")
    return pair


def _both_extendable(config, labeling, n, tables, bd):
    c_left = tables.chain_ending_at(bd.q, CUP, n - 1)
    c_right = tables.chain_starting_at(bd.p, CUP, n - 1)
    cx = tables.chain_ending_at(bd.p, CUP, n - 2)
    cy = tables.chain_starting_at(bd.q, CUP, n - 2)
    if c_left.start == bd.p:
        return pair_from_special(config, labeling, c_left, cx, cy, n)
    if c_right.end == bd.q:
        return pair_from_special(config, labeling, c_right, cx, cy, n)
    return InterweavedPair(
        LacedCup(c_left, Chain(CUP, (c_left.start,)), cy),
        LacedCup(c_right, cx, Chain(CUP, (c_right.end,))),
    )


def _induction_step(config, labeling, n, tables=None, bd=None):
    tables = tables or ChainTables(config)
    bd = bd or boundary_points(config, n, tables=tables)
    q_s = bd.q
    if tables.longest_starting_at(q_s, CUP) >= n - 2:
        raise ProofInvariantError("q_S starts an (n-2)-cup after reflection", q_S=q_s, n=n)
    stat = alpha_statistic(config, labeling, n, tables)
    rows = rows_and_leftmost(config, labeling, n, stat)
    if rows.leftmost[-1] != q_s:
        raise ProofInvariantError("leftmost vertex of the top row is not q_S", x=rows.leftmost[-1], q_S=q_s)
    delta = set(rows.delta)
    keep = tuple(v for v in range(config.m) if v not in delta)
    sub, old = config.restrict(keep)
    sub_labeling = labeling.restrict(keep)
    ok, bad = validate_labeling(sub, sub_labeling)
    if not ok:
        raise ProofInvariantError("restricted labeling is not a slope labeling", triple=bad)
    sub_tables = ChainTables(sub)
    if sub_tables.longest(CUP) >= n - 1:
        raise ProofInvariantError("reduced configuration has an (n-1)-cup", n=n, m=sub.m)

    for v in range(sub.m):
        if sub_tables.longest_starting_at(v, CUP) >= n - 2:
            c = sub_tables.chain_starting_at(v, CUP, n - 2).mapped(old)
            _check_starts(config, labeling, stat, rows, q_s, c, n)

    inner = _pair(sub, sub_labeling, n - 1).mapped(old)
    lifted = []
    for lc in (inner.first, inner.second):
        p = lc.start
        i = stat.beta(p)
        x_i = rows.leftmost[i - 1]
        z = lc.left.start
        if not (stat.beta(z) < n - 1 and stat.alpha(z) >= 2):
            raise ProofInvariantError("start of the left lacing is not extendable", z=z, stat=stat[z])
        if len(lc.left) + 1 > i:
            raise ProofInvariantError("left lacing too long for beta(p)", p=p, beta=i, left=lc.left)
        new_cup = _cup(config, (x_i,) + lc.cup.vertices, "x_i.C", p=p, i=i)
        left = tables.chain_ending_at(x_i, CUP, n - 1 - len(lc.right))
        lifted.append(LacedCup(new_cup, left, lc.right))
    return InterweavedPair(*lifted)


def _check_starts(config, labeling, stat, rows, q_s, c, n):
    """Runtime check of the four facts about a start x of an (n-2)-cup in S'."""
    x = c.start
    i = stat.beta(x)
    ctx = dict(x=x, beta=i, q_S=q_s, n=n)
    if not x < q_s:
        raise ProofInvariantError("(**) 1: x < q_S fails", **ctx)
    if not i <= n - 2:
        raise ProofInvariantError("(**) 2: beta(x) <= n-2 fails", **ctx)
    x_i = rows.leftmost[i - 1]
    if not (x_i < x and labeling.get(x_i, x) == 1):
        raise ProofInvariantError("(**) 3: x_i < x with label 1 fails", x_i=x_i, **ctx)
    _cup(config, (x_i,) + c.vertices, "(**) 3: x_i.C", **ctx)
    if not (stat.alpha(x_i) == 1 and stat.alpha(x) == 2):
        raise ProofInvariantError(
            "(**) 4: alpha(x_i) = 1 and alpha(x) = 2 fails",
            alpha_x_i=stat.alpha(x_i),
            alpha_x=stat.alpha(x),
            **ctx,
        )


# -- main pipeline --------------------------------------------------------


def find_gon(config: Configuration, n: int) -> Certificate:
    """A verified 4-cap, n-cup or (3, n-1)-gon in a configuration of at
    least ``C(n-1, 2) + 2`` vertices."""
    if n < 3:
        raise PreconditionError("n must be at least 3")
    need = comb(n - 1, 2) + 2
    if config.m < need:
        raise PreconditionError(f"need at least {need} vertices for n={n}, got {config.m}")
    witness = find_forbidden(config, 4, n)
    if witness is not None:
        kind = "cap-witness" if witness.kind is CAP else "cup-witness"
        cert = Certificate(kind, witness, n, 4, n)
    else:
        sub, old = config.restrict(range(need))
        labeling = canonical_labeling(sub, 4)
        pair = find_interweaved_laced_pair(sub, n, labeling)
        res = gon_from_interweaved_pair(sub, labeling, pair, n)
        if not isinstance(res, GonWitness):
            raise ProofInvariantError("n-free configuration produced an n-cup", cup=res, n=n)
        if len(res.cap) != 3 or len(res.cup) != n - 1:
            raise ProofInvariantError("gon has the wrong shape", gon=res, n=n)
        cert = Certificate("gon", res.mapped(old), n, 4, n)
    ok, reason = verify_certificate(config, cert)
    if not ok:
        raise ProofInvariantError(f"find_gon produced an invalid certificate: {reason}", n=n)
    return cert


def full_grid_family(
    config: Configuration, n: int, labeling: Optional[SlopeLabeling] = None
) -> tuple[LacedCup, ...]:
    """The n-1 mutually interweaved laced cups of a fully occupied
    (alpha, beta)-plane, read off as L-shaped paths."""
    if config.m != comb(n, 2):
        raise PreconditionError(f"a full plane for n={n} has {comb(n, 2)} vertices, got {config.m}")
    plane = alpha_beta_plane(config, n, labeling)
    if plane.holes:
        raise PreconditionError(f"(alpha, beta)-plane has holes at {list(plane.holes)}")
    at = plane.occupied
    family = []
    for k in range(1, n):
        path = [(al, k) for al in range(1, k + 1)] + [(k, be) for be in range(k + 1, n)]
        c = _cup(config, (at[cell] for cell in path), f"path C_{k}")
        d = _cup(config, (at[(1, be)] for be in range(1, k + 1)), f"column D_{k}")
        e = _cup(config, (at[(al, n - 1)] for al in range(k, n)), f"row E_{k}")
        if len(d) > 1:
            d = Chain(CUP, d.vertices[1:])
        else:
            e = Chain(CUP, e.vertices[:-1])
        family.append(LacedCup(c, d, e))
    for t, lc in enumerate(family):
        reason = _check_laced(config, lc, n)
        if reason:
            raise ProofInvariantError(f"grid path {t + 1} is not laced: {reason}")
        for other in family[t + 1 :]:
            if not is_interweaved(lc.cup, other.cup):
                raise ProofInvariantError("grid paths are not interweaved", first=lc.cup, second=other.cup)
    return tuple(family)
