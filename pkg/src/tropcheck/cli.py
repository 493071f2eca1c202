"""Command-line front end.

    tropcheck analyze  MAP.trop           exit 0 Isomorphism, 1 NotIsomorphism, 2 Unknown
    tropcheck pieces   MAP.trop
    tropcheck eval     MAP.trop POINT
    tropcheck preimage MAP.trop POINT
    tropcheck clarke   MAP.trop POINT
    tropcheck invert   MAP.trop
    tropcheck plot     MAP.trop --out cells.svg

Usage and input errors exit with 64.  ``MAP.trop`` may also be ``@name`` to
load a bundled fixture (``@example1``, ``@example2``, ``@g2d``, ...).
Points are comma-separated rationals, optionally parenthesised: ``"(1/2,-3)"``.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Optional, Sequence

from tropcheck.analysis import (
    Verdict,
    clarke_at,
    clarke_to_dict,
    decide_isomorphism,
    plane_fast_path,
    preimage,
    report_to_dict,
)
from tropcheck.analysis.decide import DEFAULT_RETRIES
from tropcheck.pieces import decomposition_to_dict, enumerate_pieces, piece_to_dict
from tropcheck.plot import render_svg
from tropcheck.syntax import ParseError, TropicalMap, eval_expr, parse_map

EXIT_ISO, EXIT_NOT_ISO, EXIT_UNKNOWN, EXIT_USAGE = 0, 1, 2, 64
VERDICT_EXIT = {Verdict.ISOMORPHISM: EXIT_ISO, Verdict.NOT_ISOMORPHISM: EXIT_NOT_ISO, Verdict.UNKNOWN: EXIT_UNKNOWN}


_NEGATIVE_POINT = re.compile(r"-[\d/.,\s()-]+")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    input: str
    seed: int = 0
    retries: int = DEFAULT_RETRIES
    format: str = "json"
    out: Optional[str] = None
    point: Optional[str] = None
    params: dict[str, Fraction] = field(default_factory=dict)
    viewport: tuple[Fraction, ...] = (Fraction(-4), Fraction(4), Fraction(-4), Fraction(4))


def parse_point(text: str, n: int) -> tuple[Fraction, ...]:
    body = text.strip().replace("−", "-")
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    try:
        pt = tuple(Fraction(tok.strip()) for tok in body.split(",") if tok.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse point {text!r}")
    if len(pt) != n:
        raise UsageError(f"point has dimension {len(pt)}, map takes {n}")
    return pt


def load_map(cfg: RunConfig) -> TropicalMap:
    path = cfg.input
    if path.startswith("@"):
        name = path[1:] if path.endswith(".trop") else path[1:] + ".trop"
        res = resources.files("tropcheck.fixtures") / name
        if not res.is_file():
            raise UsageError(f"no bundled fixture {name!r}")
        text = res.read_text(encoding="utf-8")
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}")
    try:
        return parse_map(text, cfg.params)
    except ParseError as exc:
        raise UsageError(f"{path}: {exc}")


def _vec(v) -> list[str]:
    return [str(x) for x in v]


def _emit(cfg: RunConfig, payload: dict, text: str) -> None:
    out = json.dumps(payload, indent=2) + "\n" if cfg.format == "json" else text
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _fmt(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def cmd_analyze(cfg: RunConfig) -> int:
    f = load_map(cfg)
    if not f.square:
        raise UsageError(f"map {f.name} is {f.n} -> {f.m}; analysis needs a square map")
    d = enumerate_pieces(f)
    report = decide_isomorphism(f, seed=cfg.seed, retries=cfg.retries, decomposition=d)
    report.fast_path = plane_fast_path(f, d)
    if report.fast_path is not None and report.fast_path is not report.verdict:
        report.diagnostics = (f"planar fast path says {report.fast_path.value} but the fibre count says "
                              f"{report.verdict.value}")
        report.verdict = Verdict.UNKNOWN
    payload = {"map": f.name, **report_to_dict(report, f.variables)}
    lines = [f"map {f.name}: {report.verdict.value}"]
    if report.reason is not None:
        lines.append(f"  reason: {report.reason.value} {list(report.reason_pieces) or ''}".rstrip())
    lines.append(f"  pieces: {report.n_pieces}  signs: +{report.signs.pos} -{report.signs.neg} 0:{report.signs.zero}")
    if report.regular_value is not None:
        lines.append(f"  regular value: {_fmt(report.regular_value.y0)}  degree: {report.degree}")
        for w in report.witnesses:
            lines.append(f"  preimage: {_fmt(w)}")
    if report.fast_path is not None:
        lines.append(f"  planar fast path: {report.fast_path.value}")
    if report.diagnostics:
        lines.append(f"  note: {report.diagnostics}")
    _emit(cfg, payload, "\n".join(lines) + "\n")
    return VERDICT_EXIT[report.verdict]


def cmd_pieces(cfg: RunConfig) -> int:
    f = load_map(cfg)
    d = enumerate_pieces(f)
    lines = [f"map {f.name}: {d.N} pieces"]
    for p in d.pieces:
        cons = "; ".join(c.format(f.variables) for c in p.cell.constraints) or "everywhere"
        lines.append(f"  {p.id}: M={[_vec(r) for r in p.matrix]} c={_vec(p.offset)} jac={p.jac}  on {cons}")
    _emit(cfg, decomposition_to_dict(d), "\n".join(lines) + "\n")
    return 0


def cmd_eval(cfg: RunConfig) -> int:
    f = load_map(cfg)
    x = parse_point(cfg.point, f.n)
    y = eval_expr(f, x)
    _emit(cfg, {"map": f.name, "point": _vec(x), "value": _vec(y)}, _fmt(y) + "\n")
    return 0


def cmd_preimage(cfg: RunConfig) -> int:
    f = load_map(cfg)
    if not f.square:
        raise UsageError("preimages need a square map")
    y = parse_point(cfg.point, f.m)
    d = enumerate_pieces(f)
    fibre = preimage(f, d, y)
    payload = {
        "map": f.name,
        "value": _vec(y),
        "points": [{"point": _vec(x), "pieces": list(ids)} for x, ids in fibre],
        "degenerate_pieces": fibre.degenerate,
    }
    lines = [f"{_fmt(x)}  in pieces {list(ids)}" for x, ids in fibre]
    if fibre.degenerate:
        lines.append(f"degenerate fibre in singular pieces {fibre.degenerate}")
    _emit(cfg, payload, "\n".join(lines) + "\n")
    return 0


def cmd_clarke(cfg: RunConfig) -> int:
    f = load_map(cfg)
    if not f.square:
        raise UsageError("the Clarke test needs a square map")
    x = parse_point(cfg.point, f.n)
    c = clarke_at(enumerate_pieces(f), x)
    block = clarke_to_dict(c)
    text = f"{c.verdict.value} at {_fmt(x)} (pieces {list(c.piece_ids)})"
    if c.weights is not None:
        text += "\n  weights: " + ", ".join(f"piece {i}: {w}" for i, w in c.weights.items())
    if c.note:
        text += f"\n  note: {c.note}"
    _emit(cfg, {"map": f.name, "clarke": block}, text + "\n")
    return 0


def cmd_invert(cfg: RunConfig) -> int:
    f = load_map(cfg)
    if not f.square:
        raise UsageError("inversion needs a square map")
    report = decide_isomorphism(f, seed=cfg.seed, retries=cfg.retries)
    if report.verdict is not Verdict.ISOMORPHISM:
        payload = {"map": f.name, "verdict": report.verdict.value, "inverse_pieces": None}
        _emit(cfg, payload, f"map {f.name} is not invertible: {report.verdict.value}\n")
        return VERDICT_EXIT[report.verdict]
    payload = {"map": f.name, "verdict": report.verdict.value,
               "inverse_pieces": [piece_to_dict(p, f.variables) for p in report.inverse]}
    lines = [f"inverse of {f.name}: {len(report.inverse)} pieces"]
    for p in report.inverse:
        cons = "; ".join(c.format(f.variables) for c in p.cell.constraints) or "everywhere"
        lines.append(f"  {p.id}: M={[_vec(r) for r in p.matrix]} c={_vec(p.offset)} on {cons}")
    _emit(cfg, payload, "\n".join(lines) + "\n")
    return 0


def cmd_plot(cfg: RunConfig) -> int:
    f = load_map(cfg)
    if f.n != 2:
        raise UsageError(f"plotting needs a map of the plane; {f.name} has n = {f.n}")
    svg = render_svg(enumerate_pieces(f), cfg.viewport)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(svg)
    else:
        sys.stdout.write(svg)
    return 0


COMMANDS = {
    "analyze": cmd_analyze,
    "pieces": cmd_pieces,
    "eval": cmd_eval,
    "preimage": cmd_preimage,
    "clarke": cmd_clarke,
    "invert": cmd_invert,
    "plot": cmd_plot,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tropcheck", description="Exact analysis of tropical rational maps.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("input", help="map file, or @name for a bundled fixture")
        if name in ("eval", "preimage", "clarke"):
            p.add_argument("point", help='comma-separated rationals, e.g. "(1,1/2)"')
        p.add_argument("--seed", type=int, default=None, help="regular-value sampler seed (env TROPCHECK_SEED)")
        p.add_argument("--retries", type=int, default=DEFAULT_RETRIES)
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--out", default=None, help="write output here instead of stdout")
        p.add_argument("--param", action="append", default=[], metavar="NAME=VALUE",
                       help="bind a constant used in the map file")
        p.add_argument("--viewport", default="-4,4,-4,4", metavar="XMIN,XMAX,YMIN,YMAX")
    return parser


def make_config(argv: Optional[Sequence[str]] = None) -> RunConfig:
    argv = list(sys.argv[1:] if argv is None else argv)
    # keep points such as "-1,-1,8" from being read as options
    argv = [" " + a if _NEGATIVE_POINT.fullmatch(a) else a for a in argv]
    args = build_parser().parse_args(argv)
    seed = args.seed
    if seed is None:
        env = os.environ.get("TROPCHECK_SEED")
        try:
            seed = int(env) if env else 0
        except ValueError:
            raise UsageError(f"TROPCHECK_SEED must be an integer, got {env!r}")
    params = {}
    for item in args.param:
        name, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--param expects NAME=VALUE, got {item!r}")
        try:
            params[name.strip()] = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"--param {name}: {value!r} is not a rational")
    try:
        viewport = tuple(Fraction(v) for v in args.viewport.split(","))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad viewport {args.viewport!r}")
    if len(viewport) != 4 or viewport[0] >= viewport[1] or viewport[2] >= viewport[3]:
        raise UsageError("viewport must be XMIN,XMAX,YMIN,YMAX with XMIN < XMAX and YMIN < YMAX")
    if args.retries < 1:
        raise UsageError("--retries must be positive")
    return RunConfig(
        command=args.command,
        input=args.input,
        seed=seed,
        retries=args.retries,
        format=args.format,
        out=args.out,
        point=getattr(args, "point", None),
        params=params,
        viewport=viewport,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        cfg = make_config(argv)
        return COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"tropcheck: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
