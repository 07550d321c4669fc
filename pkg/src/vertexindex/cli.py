"""Command-line front end.

Every report starts with the engine version and the run configuration.  JSON
is the lossless format; CSV evaluates series coefficients at ``--at`` for
spreadsheet use.  Exit status: 0 success, 1 an identity did not hold,
2 invalid input or an engine error on that input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction

from . import __version__
from .charalg import LaurentCharacter, QSeries, RationalCharacter, SlopeFunctional, format_character
from .degzero import dt0_lhs, dt0_rhs, random_t_point
from .errors import EngineError
from .localcurve import LocalCurveSetup, compare_local_curve
from .oracles import (SEED, balance_campaign, duality_campaign, lincl_campaign, macmahon_campaign,
                      tpref_campaign)
from .partitions import parse_legs
from .vertices import default_threads, full_vertex, index_vertex, wall_crossing_report

SUITES = ("balance", "lincl", "duality", "tpref", "macmahon")
DEFAULT_AT = ("2/3", "5/7", "11/4")


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    legs: str = ";;"
    order: int = 3
    slope: tuple = ("1", "-1", "0")
    tiebreak: tuple = ("1", "1", "-2")
    sign: int = 1
    seed: int = SEED
    format: str = "json"
    threads: int = 1
    output: str | None = None
    point: tuple | None = None
    degrees: tuple | None = None
    suite: str | None = None
    max_extra: int = 6
    count: int = 200
    at: tuple = DEFAULT_AT

    def sigma(self) -> SlopeFunctional:
        return SlopeFunctional(tuple(Fraction(x) for x in self.slope),
                               tuple(Fraction(x) for x in self.tiebreak), self.sign)

    def header(self) -> dict:
        # the thread count never changes a result, so it stays out of the header
        cfg = asdict(self)
        del cfg["threads"]
        return {"engine": "vertexindex", "version": __version__,
                "config": {k: list(v) if isinstance(v, tuple) else v for k, v in cfg.items()}}


@dataclass
class Report:
    result: dict
    rows: list
    ok: bool = True


# -- argument types ----------------------------------------------------------


def _rationals(n: int | None = None, zero_sum: bool = False):
    def parse(text: str) -> tuple:
        try:
            vals = tuple(Fraction(x.strip()) for x in text.split(","))
        except (ValueError, ZeroDivisionError):
            raise argparse.ArgumentTypeError(f"expected comma-separated rationals p/q, got {text!r}")
        if n is not None and len(vals) != n:
            raise argparse.ArgumentTypeError(f"expected {n} values, got {len(vals)}")
        if zero_sum and sum(vals) != 0:
            raise argparse.ArgumentTypeError("weights must sum to zero")
        return tuple(str(v) for v in vals)
    return parse


def _legs(text: str) -> str:
    try:
        parse_legs(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))
    return text


def _integers(n: int):
    def parse(text: str) -> tuple:
        try:
            vals = tuple(int(x) for x in text.split(","))
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected {n} comma-separated integers, got {text!r}")
        if len(vals) != n:
            raise argparse.ArgumentTypeError(f"expected {n} values, got {len(vals)}")
        return vals
    return parse


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def _sign(text: str) -> int:
    if text not in ("1", "-1", "+1"):
        raise argparse.ArgumentTypeError("tiebreak sign is 1 or -1")
    return int(text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", type=_nonneg, default=3, help="highest power of q")
    common.add_argument("--seed", type=int, default=SEED)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--threads", type=int, default=None,
                        help="worker threads (default: VERTEXINDEX_THREADS or 1)")
    common.add_argument("--output", default=None, help="write the report here instead of stdout")
    common.add_argument("--at", type=_rationals(3), default=DEFAULT_AT,
                        help="u1,u2,u3 with t_i = u_i^2 for CSV evaluation")

    sloped = argparse.ArgumentParser(add_help=False)
    sloped.add_argument("--legs", type=_legs, default=";;", help='e.g. "2,1;;1"')
    sloped.add_argument("--slope", type=_rationals(3, zero_sum=True), default=("1", "-1", "0"))
    sloped.add_argument("--tiebreak", type=_rationals(3, zero_sum=True), default=("1", "1", "-2"))
    sloped.add_argument("--sign", type=_sign, default=1)

    p = argparse.ArgumentParser(prog="vertexindex", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"vertexindex {__version__}")
    sub = p.add_subparsers(dest="subcommand", required=True)
    sub.add_parser("vertex", parents=[common, sloped], help="full K-theoretic vertex")
    sub.add_parser("index-vertex", parents=[common, sloped], help="index vertex")
    sub.add_parser("wall-crossing", parents=[common, sloped],
                   help="index vertices on both sides of the tiebreak wall")
    dz = sub.add_parser("degree-zero", parents=[common], help="point series against its product formula")
    dz.add_argument("--point", type=_rationals(3), default=None, help="u1,u2,u3 with t_i = u_i^2")
    lc = sub.add_parser("local-curve", parents=[common], help="local curve M2 and PT series")
    lc.add_argument("--degrees", type=_integers(4), required=True, help="d1,d2,d3,d4 summing to -2")
    lc.add_argument("--point", type=_rationals(3), default=None, help="u1,u2,u3 with t_i = u_i^2")
    v = sub.add_parser("verify", parents=[common], help="run an invariant campaign")
    v.add_argument("--suite", choices=SUITES, required=True)
    v.add_argument("--max-extra", type=_nonneg, default=6)
    v.add_argument("--count", type=_nonneg, default=200)
    return p


def config_from_args(args: argparse.Namespace) -> RunConfig:
    kw = {k: v for k, v in vars(args).items() if v is not None}
    kw["threads"] = args.threads or default_threads()
    if "degrees" in kw:
        kw["degrees"] = tuple(kw["degrees"])
    return RunConfig(**kw)


# -- commands ----------------------------------------------------------------


def _point4(u) -> tuple:
    return tuple(Fraction(x) for x in u) + (Fraction(1),)


def _text(v) -> str:
    if isinstance(v, RationalCharacter):
        return f"({format_character(v.num)}) / ({format_character(v.den)})"
    if isinstance(v, LaurentCharacter):
        return format_character(v)
    return str(v)


def _series_rows(name: str, S: QSeries, at) -> list:
    rows = []
    for k in S.orders():
        v = S[k]
        val = v.evaluate(_point4(at)) if hasattr(v, "evaluate") else Fraction(v)
        rows.append({"series": name, "order": str(k), "value": str(val), "text": _text(v)})
    return rows


def _vertex(cfg: RunConfig) -> Report:
    S = full_vertex(parse_legs(cfg.legs), cfg.sigma(), cfg.order, cfg.threads)
    return Report({"series": S.to_json()}, _series_rows("vertex", S, cfg.at))


def _index_vertex(cfg: RunConfig) -> Report:
    S = index_vertex(parse_legs(cfg.legs), cfg.sigma(), cfg.order, cfg.threads)
    return Report({"series": S.to_json()}, _series_rows("index_vertex", S, cfg.at))


def _wall_crossing(cfg: RunConfig) -> Report:
    rep = wall_crossing_report(parse_legs(cfg.legs), cfg.sigma(), cfg.order, cfg.threads)
    rows = [r for name in ("plus", "minus", "difference") for r in _series_rows(name, rep[name], cfg.at)]
    return Report({name: S.to_json() for name, S in rep.items()}, rows)


def _degree_zero(cfg: RunConfig) -> Report:
    u = tuple(Fraction(x) for x in cfg.point) if cfg.point else random_t_point(random.Random(cfg.seed))
    lhs, rhs = dt0_lhs(u, cfg.order), dt0_rhs(u, cfg.order)
    rows = [{"order": str(n), "lhs": str(lhs[n]), "rhs": str(rhs[n]), "match": lhs[n] == rhs[n]}
            for n in range(cfg.order + 1)]
    ok = all(r["match"] for r in rows)
    return Report({"point": [str(x) for x in u], "lhs": lhs.to_json(), "rhs": rhs.to_json(),
                   "verdict": "match" if ok else "mismatch"}, rows, ok)


def _local_curve(cfg: RunConfig) -> Report:
    setup = LocalCurveSetup(cfg.degrees) if cfg.point is None else LocalCurveSetup(cfg.degrees, cfg.point)
    rows = compare_local_curve(setup, cfg.order)
    ok = all(r["match"] for r in rows)
    orders = {str(r["order"]): {"q_exponent": str(r["q_exponent"]), "m2": str(r["m2"]),
                                "pt": str(r["pt"]), "match": r["match"]} for r in rows}
    flat = [{"order": k, **v} for k, v in orders.items()]
    return Report({"setup": setup.to_json(), "orders": orders,
                   "verdict": "match" if ok else "mismatch"}, flat, ok)


def _verify(cfg: RunConfig) -> Report:
    if cfg.suite == "tpref":
        board = tpref_campaign(cfg.max_extra, cfg.threads)
    elif cfg.suite == "duality":
        board = duality_campaign(cfg.max_extra, cfg.threads)
    elif cfg.suite == "balance":
        board = balance_campaign(cfg.count, cfg.seed, cfg.threads)
    elif cfg.suite == "lincl":
        board = lincl_campaign(cfg.count, cfg.seed, cfg.threads)
    else:
        board = macmahon_campaign(cfg.order)
    rows = [{k: v for k, v in board.items() if k in ("suite", "cases", "passed", "failed")}]
    return Report({"scoreboard": board}, rows, board["failed"] == 0)


COMMANDS = {"vertex": _vertex, "index-vertex": _index_vertex, "wall-crossing": _wall_crossing,
            "degree-zero": _degree_zero, "local-curve": _local_curve, "verify": _verify}


# -- rendering ---------------------------------------------------------------


def render(cfg: RunConfig, report: Report) -> str:
    head = cfg.header()
    if cfg.format == "json":
        return json.dumps({**head, "result": report.result}, sort_keys=True, indent=2, default=str) + "\n"
    lines = [f"# vertexindex {head['version']}",
             "# config " + json.dumps(head["config"], sort_keys=True, default=str)]
    if cfg.format == "csv":
        buf = io.StringIO()
        fields = list(report.rows[0]) if report.rows else []
        w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        w.writerows(report.rows)
        return "\n".join(lines) + "\n" + buf.getvalue()
    for r in report.rows:
        lines.append("  ".join(f"{k}={v}" for k, v in r.items()))
    if "verdict" in report.result:
        lines.append(f"verdict: {report.result['verdict']}")
    return "\n".join(lines) + "\n"


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute ``cfg``; returns the exit status and the rendered report."""
    report = COMMANDS[cfg.subcommand](cfg)
    return (0 if report.ok else 1), render(cfg, report)


def _error_json(exc: EngineError) -> str:
    return json.dumps({"error": type(exc).__name__, "message": exc.args[0] if exc.args else "",
                       "object": exc.obj}, sort_keys=True, default=str)


VECTOR_FLAGS = ("--degrees", "--slope", "--tiebreak", "--at", "--point", "--legs")


def _attach_values(argv: list) -> list:
    """Join ``--slope -1,1,0`` into ``--slope=-1,1,0`` so argparse keeps the value."""
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in VECTOR_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") \
                and not argv[i + 1].startswith("--"):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
        else:
            out.append(a)
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(_attach_values(list(sys.argv[1:] if argv is None else argv)))
    try:
        cfg = config_from_args(args)
        cfg.sigma()
    except ValueError as exc:
        parser.error(f"--tiebreak: {exc}")
    try:
        status, text = run(cfg)
    except EngineError as exc:
        print(_error_json(exc), file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"vertexindex: error: {exc}", file=sys.stderr)
        return 2
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
