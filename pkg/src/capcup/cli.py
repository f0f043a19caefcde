"""Command-line front end: ``capcup <subcommand> ...``.

Exit status is 0 on success, 1 on a domain error (one ``error: <kind>:
<message>`` line on stderr) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import sys
from math import comb
from pathlib import Path
from typing import Optional, Sequence

from .certificate import Certificate, format_certificate, parse_certificate, verify_certificate
from .configuration import Configuration, format_configuration, parse_configuration
from .errors import CapCupError, ParseError
from .generators import capcup_extremal_points, random_point_set
from .labeling import alpha_beta_plane, alpha_statistic, canonical_labeling
from .points import PointSet, configuration_from_points, format_points, parse_points, shear_to_distinct_x
from .render import render_ascii, render_svg
from .search import AvoidanceSpec, check_conjecture_k, check_main_theorem, enumerate_free, max_free_size
from .witness import find_gon, find_interweaved_laced_pair


class _Usage(Exception):
    pass


def _read(path: Optional[str]) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _emit(args, text: str) -> None:
    if getattr(args, "output", None):
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def load_configuration(text: str, shear: bool = False) -> Configuration:
    """A configuration file, or a point file (ingested on the fly)."""
    first = next((ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")), "")
    if first.startswith("configuration"):
        return parse_configuration(text)
    pts = parse_points(text)
    if shear:
        pts = shear_to_distinct_x(pts)
    return configuration_from_points(PointSet(pts))


def _need(args, name: str, low: int, high: Optional[int] = None) -> int:
    value = getattr(args, name)
    if value is None:
        raise _Usage(f"--{name} is required")
    if value < low or (high is not None and value > high):
        bound = f"[{low}, {high}]" if high is not None else f">= {low}"
        raise _Usage(f"--{name} must be {bound}, got {value}")
    return value


def _spec(args) -> AvoidanceSpec:
    gon = None
    if args.gon is not None:
        parts = args.gon.split(",")
        if len(parts) != 3 or not parts[0].isdigit() or not parts[1].isdigit():
            raise _Usage(f"--gon expects CAP,CUP,weak|strong, got {args.gon!r}")
        gon = (int(parts[0]), int(parts[1]), parts[2])
        if gon[2] not in ("weak", "strong") or min(gon[:2]) < 2:
            raise _Usage(f"--gon expects CAP,CUP,weak|strong with sizes >= 2, got {args.gon!r}")
    for name in ("a", "b"):
        v = getattr(args, name)
        if v is not None and v < 2:
            raise _Usage(f"--{name} must be >= 2, got {v}")
    if args.a is None and args.b is None and gon is None:
        raise _Usage("give at least one of --a, --b, --gon")
    return AvoidanceSpec(args.a, args.b, gon)


# -- subcommands -----------------------------------------------------------


def cmd_ingest(args) -> int:
    _emit(args, format_configuration(load_configuration(_read(args.input), args.shear)))
    return 0


def cmd_label(args) -> int:
    a = _need(args, "a", 3)
    config = load_configuration(_read(args.input), args.shear)
    lab = canonical_labeling(config, a)
    _emit(args, "".join(f"{u} {v} -> {s}\n" for (u, v), s in lab.items()))
    return 0


def cmd_alpha(args) -> int:
    a = _need(args, "a", 3)
    b = _need(args, "b", 2)
    config = load_configuration(_read(args.input), args.shear)
    stat = alpha_statistic(config, canonical_labeling(config, a), b)
    _emit(args, "".join(f"{v} -> ({','.join(map(str, t))})\n" for v, t in enumerate(stat.values)))
    return 0


def cmd_render(args) -> int:
    n = _need(args, "n", 2)
    config = load_configuration(_read(args.input), args.shear)
    plane = alpha_beta_plane(config, n)
    _emit(args, render_svg(plane) if args.format == "svg" else render_ascii(plane))
    return 0


def cmd_find_gon(args) -> int:
    n = _need(args, "n", 3)
    config = load_configuration(_read(args.input), args.shear)
    _emit(args, format_certificate(find_gon(config, n)))
    return 0


def cmd_extract_pair(args) -> int:
    n = _need(args, "n", 3)
    config = load_configuration(_read(args.input), args.shear)
    pair = find_interweaved_laced_pair(config, n)
    _emit(args, format_certificate(Certificate("laced-pair", pair, n, 4, n)))
    return 0


def cmd_verify_cert(args) -> int:
    config = load_configuration(_read(args.config))
    cert = parse_certificate(_read(args.certificate))
    ok, reason = verify_certificate(config, cert)
    if not ok:
        print(f"error: invalid-certificate: {reason}", file=sys.stderr)
        return 1
    _emit(args, "ok\n")
    return 0


def cmd_enumerate(args) -> int:
    m = _need(args, "m", 1)
    spec = _spec(args)
    if args.limit is not None and args.limit < 1:
        raise _Usage("--limit must be >= 1")
    report = enumerate_free(m, spec, args.budget, args.threads, args.limit, max_witnesses=args.witnesses)
    _emit(args, report.to_text(timing=args.timing))
    return 0


def cmd_max_size(args) -> int:
    limit = _need(args, "limit", 1)
    report = max_free_size(_spec(args), limit, args.budget)
    _emit(args, report.to_text(timing=args.timing))
    return 0


def cmd_check_theorem(args) -> int:
    n = _need(args, "n", 3)
    report = check_main_theorem(n, args.mode, args.trials, args.seed, args.budget, args.threads)
    _emit(args, report.to_text(timing=args.timing))
    return 0


def cmd_check_conjecture(args) -> int:
    n = _need(args, "n", 3)
    k = _need(args, "k", 1, n - 1)
    report = check_conjecture_k(n, k, args.mode, args.budget, args.trials, args.seed, args.threads, method=args.method)
    _emit(args, report.to_text(timing=args.timing))
    return 0


def cmd_gen_extremal(args) -> int:
    a = _need(args, "a", 2)
    b = _need(args, "b", 2)
    if comb(a + b - 4, a - 2) > 5000:
        raise _Usage("construction would exceed 5000 points")
    _emit(args, format_points(capcup_extremal_points(a, b)))
    return 0


def cmd_gen_random(args) -> int:
    m = _need(args, "m", 1)
    if args.bound < 1:
        raise _Usage("--bound must be >= 1")
    _emit(args, format_points(random_point_set(m, args.seed, args.bound)))
    return 0


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="capcup", description="Caps, cups and gons in ordered configurations.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_text, input_arg=True, **flags):
        p = sub.add_parser(name, help=help_text, description=help_text)
        if input_arg:
            p.add_argument("input", nargs="?", help="point or configuration file (default: stdin)")
            p.add_argument(
                "--shear",
                action="store_true",
                help="shear duplicate x-coordinates apart before ingesting (lossy: ties are broken by y)",
            )
        for flag, kw in flags.items():
            p.add_argument(f"--{flag}", **kw)
        p.add_argument("--output", "-o", help="write to this file instead of stdout")
        p.set_defaults(func=func)
        return p

    int_opt = lambda h: {"type": int, "help": h}  # noqa: E731
    search_opts = {
        "budget": {"type": float, "help": "wall-clock budget in seconds"},
        "threads": {"type": int, "default": 1, "help": "worker processes (default 1)"},
        "timing": {"action": "store_true", "help": "include the elapsed time in the report"},
    }
    avoid = {
        "a": int_opt("forbidden cap size"),
        "b": int_opt("forbidden cup size"),
        "gon": {"help": "forbidden gon as CAP,CUP,weak|strong"},
    }

    add("ingest", cmd_ingest, "convert a point file to a configuration file")
    add("label", cmd_label, "canonical slope labeling, one edge per line", a=int_opt("cap bound (labels in 1..a-2)"))
    add("alpha", cmd_alpha, "alpha statistic, one vertex per line", a=int_opt("cap bound"), b=int_opt("cup bound"))
    add(
        "render",
        cmd_render,
        "draw the (alpha, beta)-plane",
        n=int_opt("cup bound"),
        format={"choices": ("ascii", "svg"), "default": "ascii", "help": "output format (default ascii)"},
    )
    add("find-gon", cmd_find_gon, "certificate for a 4-cap, n-cup or (3, n-1)-gon", n=int_opt("cup bound"))
    add("extract-pair", cmd_extract_pair, "certificate for two interweaved laced (n-1)-cups", n=int_opt("cup bound"))
    p = add("verify-cert", cmd_verify_cert, "check a certificate against a configuration", input_arg=False)
    p.add_argument("config", help="configuration or point file")
    p.add_argument("certificate", help="certificate file")
    add(
        "enumerate",
        cmd_enumerate,
        "enumerate free configurations (one per mirror pair)",
        input_arg=False,
        m=int_opt("number of vertices"),
        limit=int_opt("stop after this many"),
        witnesses={"type": int, "default": 1, "help": "configurations to print (default 1)"},
        **avoid,
        **search_opts,
    )
    add(
        "max-size",
        cmd_max_size,
        "largest free configuration up to --limit",
        input_arg=False,
        limit=int_opt("largest size to try"),
        **avoid,
        budget=search_opts["budget"],
        timing=search_opts["timing"],
    )
    mode = {"choices": ("exhaustive", "random"), "default": "exhaustive", "help": "search mode"}
    trials = {"type": int, "default": 100, "help": "samples in random mode (default 100)"}
    seed = {"type": int, "default": 0, "help": "random seed (default 0)"}
    add(
        "check-theorem",
        cmd_check_theorem,
        "verify the 4-cap / n-cup / (3, n-1)-gon theorem",
        input_arg=False,
        n=int_opt("cup bound"),
        mode=mode,
        trials=trials,
        seed=seed,
        **search_opts,
    )
    add(
        "check-conjecture",
        cmd_check_conjecture,
        "search for k mutually interweaved laced (n-1)-cups",
        input_arg=False,
        n=int_opt("cup bound"),
        k=int_opt("family size"),
        mode=mode,
        method={
            "choices": ("cover", "sweep"),
            "default": "cover",
            "help": "exhaustive method: settle completions of each middle (cover) or test every configuration (sweep)",
        },
        trials=trials,
        seed=seed,
        **search_opts,
    )
    add("gen-extremal", cmd_gen_extremal, "point set with no a-cap and no b-cup", input_arg=False,
        a=int_opt("cap bound"), b=int_opt("cup bound"))
    add(
        "gen-random",
        cmd_gen_random,
        "random integer point set in general position",
        input_arg=False,
        m=int_opt("number of points"),
        seed=seed,
        bound={"type": int, "default": 10**6, "help": "coordinate bound (default 10^6)"},
    )
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", 1) is not None and getattr(args, "threads", 1) < 1:
        parser.error("--threads must be >= 1")
    if getattr(args, "budget", None) is not None and args.budget <= 0:
        parser.error("--budget must be positive")
    try:
        return args.func(args)
    except _Usage as exc:
        parser.error(str(exc))
    except CapCupError as exc:
        message = " ".join(str(exc).split())
        print(f"error: {type(exc).__name__}: {message}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
