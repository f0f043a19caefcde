"""Self-contained witnesses and their independent verification.

A certificate only references vertex indices of a configuration; the
verifier re-checks every claim against the configuration's triples and never
calls back into the search or construction code.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Union

from .chains import CAP, CUP, Chain, GonWitness, first_violation
from .configuration import Configuration, Orientation
from .errors import ParseError, PreconditionError

KINDS = ("cap-witness", "cup-witness", "gon", "laced-pair", "k-family")


@dataclass(frozen=True)
class LacedCup:
    """A cup plus a cup ending at its start and a cup starting at its end."""

    cup: Chain
    left: Chain
    right: Chain

    @property
    def start(self) -> int:
        return self.cup.start

    @property
    def end(self) -> int:
        return self.cup.end

    def reflected(self, m: int) -> "LacedCup":
        return LacedCup(self.cup.reflected(m), self.right.reflected(m), self.left.reflected(m))

    def mapped(self, old_of_new) -> "LacedCup":
        return LacedCup(
            self.cup.mapped(old_of_new), self.left.mapped(old_of_new), self.right.mapped(old_of_new)
        )


@dataclass(frozen=True)
class InterweavedPair:
    first: LacedCup
    second: LacedCup

    def reflected(self, m: int) -> "InterweavedPair":
        return InterweavedPair(self.second.reflected(m), self.first.reflected(m))

    def mapped(self, old_of_new) -> "InterweavedPair":
        return InterweavedPair(self.first.mapped(old_of_new), self.second.mapped(old_of_new))


def is_interweaved(c1: Chain, c2: Chain) -> bool:
    """``c1`` from p to r and ``c2`` from q to s with ``p < q <= r < s``."""
    if c1.kind is not CUP or c2.kind is not CUP:
        raise PreconditionError("interweaving is defined for cups")
    return c1.start < c2.start <= c1.end < c2.end


Payload = Union[Chain, GonWitness, InterweavedPair, tuple]


@dataclass(frozen=True)
class Certificate:
    kind: str
    payload: Payload
    n: int
    a: int = 4
    b: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise PreconditionError(f"unknown certificate kind {self.kind!r}")
        if not self.b:
            object.__setattr__(self, "b", self.n)

    def mapped(self, old_of_new) -> "Certificate":
        p = self.payload
        if isinstance(p, tuple):
            p = tuple(x.mapped(old_of_new) for x in p)
        else:
            p = p.mapped(old_of_new)
        return Certificate(self.kind, p, self.n, self.a, self.b)


# -- verification ----------------------------------------------------------


def _check_chain(config: Configuration, chain: Chain, kind: Orientation, size=None):
    if chain.kind is not kind:
        return f"expected a {kind}, got a {chain.kind}"
    if any(not 0 <= v < config.m for v in chain.vertices):
        return f"vertex out of range in {chain}"
    bad = first_violation(config, chain)
    if bad is not None:
        return f"not a {kind}: triple {bad[0]} {bad[1]} {bad[2]} is a {kind.opposite}"
    if size is not None and len(chain) != size:
        return f"{kind} has size {len(chain)}, expected {size}"
    return None


def _check_laced(config: Configuration, lc: LacedCup, n: int):
    reason = (
        _check_chain(config, lc.cup, CUP, n - 1)
        or _check_chain(config, lc.left, CUP)
        or _check_chain(config, lc.right, CUP)
    )
    if reason:
        return reason
    if lc.left.end != lc.cup.start:
        return f"left lacing ends at {lc.left.end}, cup starts at {lc.cup.start}"
    if lc.right.start != lc.cup.end:
        return f"right lacing starts at {lc.right.start}, cup ends at {lc.cup.end}"
    if len(lc.left) + len(lc.right) != n - 1:
        return f"lacing sum {len(lc.left) + len(lc.right)} != {n - 1}"
    return None


def verify_certificate(config: Configuration, cert: Certificate):
    """Re-check a certificate from scratch.  Returns ``(ok, reason)``."""
    kind, p = cert.kind, cert.payload
    if kind == "cap-witness":
        reason = _check_chain(config, p, CAP, cert.a)
    elif kind == "cup-witness":
        reason = _check_chain(config, p, CUP, cert.b)
    elif kind == "gon":
        reason = _check_chain(config, p.cap, CAP) or _check_chain(config, p.cup, CUP)
        if not reason and (p.cap.start, p.cap.end) != (p.cup.start, p.cup.end):
            reason = "cap and cup do not share endpoints"
        if not reason and len(p.cap) + len(p.cup) != cert.n + 2:
            reason = f"gon sizes {len(p.cap)}+{len(p.cup)} do not give an {cert.n}-gon"
    elif kind == "laced-pair":
        reason = _check_laced(config, p.first, cert.n) or _check_laced(config, p.second, cert.n)
        if not reason and not is_interweaved(p.first.cup, p.second.cup):
            reason = "cups are not interweaved"
    else:
        reason = None
        for lc in p:
            reason = reason or _check_laced(config, lc, cert.n)
        if not reason:
            for x, y in combinations(p, 2):
                if not is_interweaved(x.cup, y.cup):
                    reason = f"cups {x.cup} and {y.cup} are not interweaved"
                    break
    return (reason is None), reason


# -- text format -----------------------------------------------------------


def _chain_line(c: Chain) -> str:
    return f"{c.kind} " + " ".join(map(str, c.vertices))


def _laced_lines(lc: LacedCup) -> list[str]:
    return ["laced", _chain_line(lc.cup), _chain_line(lc.left), _chain_line(lc.right)]


def format_chain(c: Chain) -> str:
    return _chain_line(c) + "\n"


def format_gon(g: GonWitness) -> str:
    return f"gon {'strong' if g.strong else 'weak'} {g.a} {g.b}\n{_chain_line(g.cap)}\n{_chain_line(g.cup)}\n"


def format_certificate(cert: Certificate) -> str:
    lines = [f"certificate {cert.kind} n {cert.n} a {cert.a} b {cert.b}"]
    p = cert.payload
    if cert.kind in ("cap-witness", "cup-witness"):
        lines.append(_chain_line(p))
    elif cert.kind == "gon":
        lines.append(format_gon(p).rstrip("\n"))
    elif cert.kind == "laced-pair":
        lines += _laced_lines(p.first) + _laced_lines(p.second)
    else:
        lines.append(f"family {len(p)}")
        for lc in p:
            lines += _laced_lines(lc)
    return "\n".join(lines) + "\n"


def parse_chain(line: str) -> Chain:
    toks = line.split()
    if not toks or toks[0] not in ("cap", "cup"):
        raise ParseError(f"expected a chain line, got {line!r}")
    try:
        vs = tuple(int(t) for t in toks[1:])
        return Chain(Orientation.parse(toks[0]), vs)
    except (ValueError, PreconditionError) as exc:
        raise ParseError(f"bad chain line {line!r}: {exc}") from None


def parse_certificate(text: str) -> Certificate:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty certificate")
    head = lines[0].split()
    if len(head) != 8 or head[0] != "certificate" or head[2::2] != ["n", "a", "b"]:
        raise ParseError(f"bad certificate header {lines[0]!r}")
    kind = head[1]
    if kind not in KINDS:
        raise ParseError(f"unknown certificate kind {kind!r}")
    try:
        n, a, b = int(head[3]), int(head[5]), int(head[7])
    except ValueError:
        raise ParseError(f"bad certificate parameters in {lines[0]!r}") from None
    body = lines[1:]

    def laced_blocks(rows):
        if len(rows) % 4:
            raise ParseError("laced blocks need four lines each")
        out = []
        for t in range(0, len(rows), 4):
            if rows[t] != "laced":
                raise ParseError(f"expected 'laced', got {rows[t]!r}")
            out.append(LacedCup(*(parse_chain(r) for r in rows[t + 1 : t + 4])))
        return out

    if kind in ("cap-witness", "cup-witness"):
        if len(body) != 1:
            raise ParseError("witness certificate needs exactly one chain line")
        payload = parse_chain(body[0])
    elif kind == "gon":
        if len(body) != 3 or not body[0].startswith("gon "):
            raise ParseError("gon certificate needs a 'gon' line and two chains")
        payload = GonWitness(parse_chain(body[1]), parse_chain(body[2]))
    elif kind == "laced-pair":
        blocks = laced_blocks(body)
        if len(blocks) != 2:
            raise ParseError("laced-pair needs two laced blocks")
        payload = InterweavedPair(*blocks)
    else:
        if not body or not body[0].startswith("family "):
            raise ParseError("k-family certificate needs a 'family <k>' line")
        payload = tuple(laced_blocks(body[1:]))
        if len(payload) != int(body[0].split()[1]):
            raise ParseError("family size does not match its blocks")
    return Certificate(kind, payload, n, a, b)
