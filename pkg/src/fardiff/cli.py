"""Command-line front end: ``fardiff {decompose,verify,stats,gaps,constants}``.

Options may come from a JSON file given with ``--config``; flags on the
command line win. Numbers are printed with 12 significant digits so repeated
runs produce byte-identical output.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Optional

from . import gap_analysis, spectral, summand_stats
from .decomposer import (DecompositionFailure, brute_force_decompositions, decompose,
                         oracle_range, search_decomposition)
from .sequences import Kind, SequenceFamily, check_interval_identity, fixture

PRECISION = ".12g"


class UsageError(Exception):
    pass


# -- parsing helpers ---------------------------------------------------------

def parse_int(text) -> int:
    try:
        return int(str(text).strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def parse_pair(text) -> tuple[int, int]:
    if isinstance(text, (list, tuple)):
        parts = list(text)
    else:
        parts = str(text).split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected s,d but got {text!r}")
    s, d = (parse_int(p) for p in parts)
    if s < 1 or d < 1:
        raise argparse.ArgumentTypeError("s and d must be positive")
    return s, d


def _range_piece(piece: str) -> list[int]:
    if ":" not in piece:
        return [parse_int(piece)]
    parts = [parse_int(p) for p in piece.split(":")]
    if len(parts) not in (2, 3):
        raise argparse.ArgumentTypeError(f"bad range {piece!r}")
    step = parts[2] if len(parts) == 3 else 1
    if step < 1:
        raise argparse.ArgumentTypeError("range step must be positive")
    return list(range(parts[0], parts[1] + 1, step))


def parse_range(text) -> list[int]:
    """Comma-separated integers and inclusive ``lo:hi[:step]`` ranges, or a JSON list."""
    if isinstance(text, int):
        values = [text]
    elif isinstance(text, (list, tuple)):
        values = [parse_int(v) for v in text]
    else:
        values = []
        for piece in str(text).split(","):
            if piece.strip():
                values += _range_piece(piece.strip())
    if not values:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    if min(values) < 1:
        raise argparse.ArgumentTypeError("n values must be positive")
    return sorted(set(values))


def _num(v):
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, float):
        if math.isnan(v) or math.isinf(v):
            return None
        return float(format(v, PRECISION))
    return v


def _text(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return "nan" if math.isnan(v) else format(v, PRECISION)
    return str(v)


def dump_json(obj) -> str:
    def clean(o):
        if isinstance(o, dict):
            return {str(k): clean(v) for k, v in o.items()}
        if isinstance(o, (list, tuple)):
            return [clean(v) for v in o]
        return _num(o)
    return json.dumps(clean(obj), indent=2, sort_keys=True) + "\n"


def render_table(columns: list, rows: list) -> str:
    cells = [[_text(r.get(c)) for c in columns] for r in rows]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(columns)]
    lines = ["  ".join(c.rjust(w) for c, w in zip(columns, widths))]
    lines += ["  ".join(v.rjust(w) for v, w in zip(row, widths)) for row in cells]
    return "\n".join(lines) + "\n"


def render_csv(columns: list, rows: list) -> str:
    lines = [",".join(columns)]
    lines += [",".join(_text(r.get(c)) for c in columns) for r in rows]
    return "\n".join(lines) + "\n"


# -- family selection -------------------------------------------------------

def family_from_args(args) -> SequenceFamily:
    chosen = [name for name in ("k", "sd", "fixture") if getattr(args, name, None) is not None]
    if len(chosen) != 1:
        raise UsageError("give exactly one of --k, --sd, --fixture")
    if args.k is not None:
        if args.k < 0:
            raise UsageError("--k must be non-negative")
        return SequenceFamily.skipponacci(args.k)
    if args.sd is not None:
        return SequenceFamily.standard_sd(*parse_pair(args.sd))
    try:
        return fixture(args.fixture)
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def _require_k(args) -> int:
    if getattr(args, "sd", None) is not None or getattr(args, "fixture", None) is not None:
        raise UsageError(f"{args.command} only supports k-Skipponacci families (--k)")
    if args.k is None or args.k < 0:
        raise UsageError("--k is required and must be non-negative")
    return args.k


# -- commands ------------------------------------------------------------------

def _decomposition_for(x: int, fam: SequenceFamily):
    try:
        return decompose(x, fam)
    except DecompositionFailure:
        if fam.kind is not Kind.EXPLICIT:
            raise
        return search_decomposition(x, fam)


def cmd_decompose(args) -> tuple[str, int]:
    fam = family_from_args(args)
    if not args.values:
        raise UsageError("no integers given")
    decs = [(x, _decomposition_for(x, fam)) for x in args.values]
    if args.format == "json":
        payload = [{"x": x, "symbolic": d.symbolic(), "numeric": d.numeric(),
                    "terms": [[i, e] for i, e in d.terms]} for x, d in decs]
        return dump_json(payload if len(payload) > 1 else payload[0]), 0
    lines = []
    for _, d in decs:
        lines.append("(empty)" if not d.terms else f"{d.symbolic()} = {d.numeric()}")
    return "\n".join(lines) + "\n", 0


def verify_family(fam: SequenceFamily, bound: int) -> dict:
    """Uniqueness oracle over |x| <= oracle_range and interval identities up to ``bound``."""
    limit = oracle_range(fam, bound)
    bad = []
    for x in range(-limit, limit + 1):
        found = brute_force_decompositions(x, fam, bound)
        if len(found) != 1:
            bad.append((x, f"{len(found)} decompositions"))
        elif x:
            dec = _decomposition_for(x, fam)
            if dec.terms != found[0].terms:
                bad.append((x, f"greedy {dec.symbolic()} != search {found[0].symbolic()}"))
        if len(bad) >= 10:
            break
    if fam.kind is Kind.EXPLICIT:
        identity = None  # not expected to hold for hand-picked term lists
    else:
        identity = all(check_interval_identity(fam, n) for n in range(1, bound + 1))
    return {"family": repr(fam), "bound": bound, "checked_up_to": limit,
            "uniqueness_failures": bad, "interval_identity": identity,
            "ok": not bad and identity is not False}


def cmd_verify(args) -> tuple[str, int]:
    fam = family_from_args(args)
    if args.n is None or args.n < 1:
        raise UsageError("--n must be a positive integer")
    report = verify_family(fam, args.n)
    if args.format == "json":
        return dump_json(report), 0 if report["ok"] else 1
    ident = {None: "n/a", True: "ok", False: "FAIL"}[report["interval_identity"]]
    lines = [f"family {report['family']}, index bound {args.n}",
             f"uniqueness for |x| <= {report['checked_up_to']}: "
             + ("ok" if not report["uniqueness_failures"] else "FAIL"),
             f"interval identity: {ident}"]
    lines += [f"  x={x}: {why}" for x, why in report["uniqueness_failures"]]
    lines.append("PASS" if report["ok"] else "FAIL")
    return "\n".join(lines) + "\n", 0 if report["ok"] else 1


STATS_COLUMNS = summand_stats.CSV_COLUMNS + ["mean_step", "variance_step"]


def cmd_stats(args) -> tuple[str, int]:
    k = _require_k(args)
    ns = parse_range(args.n)
    a, b = args.a, args.b
    if a < 0 or b < 0 or (a == 0 and b == 0):
        raise UsageError("weights must be non-negative and not both zero")
    table = summand_stats.build_count_table(k, max(ns))
    diag = summand_stats.gaussian_diagnostics(table, a, b, ns)
    rows = []
    for s in diag.summaries:
        row = s.as_row()
        if s.n > 1:
            prev = summand_stats.moments(table, s.n - 1, a, b)
            row["mean_step"] = s.mean - prev.mean
            row["variance_step"] = s.variance - prev.variance
        rows.append(row)
    if args.format == "csv":
        return render_csv(STATS_COLUMNS, rows), 0
    const = spectral.growth_constants(k, a, b)
    fits = {"mean_slope": diag.mean_fit.slope, "mean_intercept": diag.mean_fit.intercept,
            "variance_slope": diag.variance_fit.slope,
            "variance_intercept": diag.variance_fit.intercept,
            "fit_points": diag.mean_fit.n_points, "A_spectral": const.A_ab, "C_spectral": const.C_ab}
    if args.format == "json":
        return dump_json({"k": k, "a": a, "b": b, "rows": rows, "fit": fits}), 0
    tail = "".join(f"{key} = {_text(v)}\n" for key, v in fits.items())
    return render_table(STATS_COLUMNS, rows) + tail, 0


def cmd_gaps(args) -> tuple[str, int]:
    k = _require_k(args)
    ns = parse_range(args.n)
    j_max = args.j_max if args.j_max is not None else 4 * k + 8
    if j_max < 1:
        raise UsageError("--j-max must be positive")
    threads = args.threads or 1
    if threads < 1:
        raise UsageError("--threads must be positive")
    rows = []
    for n in ns:
        rows += gap_analysis.gap_rows(k, n, j_max, empirical=not args.no_empirical,
                                      workers=threads)
    cols = gap_analysis.CSV_COLUMNS
    if args.format == "csv":
        return render_csv(cols, rows), 0
    if args.format == "json":
        return dump_json(rows), 0
    return render_table(cols, rows), 0


def cmd_constants(args) -> tuple[str, int]:
    k = _require_k(args)
    try:
        const = spectral.growth_constants(k, args.a, args.b)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return const.to_json() + "\n", 0


COMMANDS = {"decompose": cmd_decompose, "verify": cmd_verify, "stats": cmd_stats,
            "gaps": cmd_gaps, "constants": cmd_constants}

# fallbacks applied after the config file, so that config values can fill gaps
DEFAULTS = {
    "decompose": {"format": "text"},
    "verify": {"format": "text"},
    "stats": {"a": 1.0, "b": 0.0, "format": "csv"},
    "gaps": {"format": "csv", "threads": 1, "no_empirical": False},
    "constants": {"a": 1.0, "b": 0.0},
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fardiff",
                                     description="Far-difference representation experiments.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, families=True):
        if families:
            p.add_argument("--k", type=parse_int, help="k-Skipponacci family")
            p.add_argument("--sd", help="standard (s,d) family, e.g. 2,3")
            p.add_argument("--fixture", help="named explicit family, e.g. example5.1a or b_k:2")
        p.add_argument("--config", help="JSON file with default option values")
        p.add_argument("--output", "-o", help="write to this file instead of stdout")

    p = sub.add_parser("decompose", help="far-difference decomposition of integers")
    common(p)
    p.add_argument("values", nargs="*", type=parse_int, metavar="X")
    p.add_argument("--format", choices=["text", "json"])

    p = sub.add_parser("verify", help="uniqueness oracle and interval identities")
    common(p)
    p.add_argument("--n", type=parse_int, help="index bound")
    p.add_argument("--format", choices=["text", "json"])

    p = sub.add_parser("stats", help="moments of a*K_n + b*L_n from the exact count table")
    common(p)
    p.add_argument("--n", help="n values: lo:hi[:step] or a,b,c")
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--format", choices=["csv", "json", "table"])

    p = sub.add_parser("gaps", help="gap distributions: empirical, counting, limit")
    common(p)
    p.add_argument("--n", help="n values: lo:hi[:step] or a,b,c")
    p.add_argument("--j-max", type=parse_int, dest="j_max")
    p.add_argument("--threads", type=parse_int, help="worker processes for enumeration")
    p.add_argument("--no-empirical", action="store_const", const=True, dest="no_empirical",
                   help="skip the enumeration column")
    p.add_argument("--format", choices=["csv", "json", "table"])

    p = sub.add_parser("constants", help="spectral growth constants as JSON")
    common(p)
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    return parser


def _apply_config(args, parser) -> None:
    values = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                values = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            parser.error(f"cannot read config {args.config}: {exc}")
        if not isinstance(values, dict):
            parser.error("config file must hold a JSON object")
    for key, value in values.items():
        key = key.replace("-", "_")
        if key in ("command", "config"):
            continue
        if not hasattr(args, key):
            parser.error(f"unknown config key {key!r} for {args.command}")
        if getattr(args, key) in (None, []):
            if key == "k" or key == "j_max" or key == "threads":
                value = parse_int(value)
            elif key == "values":
                value = [parse_int(v) for v in value]
            setattr(args, key, value)
    for key, value in DEFAULTS.get(args.command, {}).items():
        if getattr(args, key, None) is None:
            setattr(args, key, value)


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_config(args, parser)
        text, code = COMMANDS[args.command](args)
    except (UsageError, argparse.ArgumentTypeError) as exc:
        parser.error(str(exc))
    except gap_analysis.IntervalTooLarge as exc:
        print(f"fardiff: {exc}", file=sys.stderr)
        return 2
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
