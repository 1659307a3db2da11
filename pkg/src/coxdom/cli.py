"""Command-line front end.

Subcommands are thin wrappers over single library operations and emit a
deterministic report document: identical datum and options produce
byte-identical JSON (keys sorted, roots sorted by depth then coefficients,
no wall-clock timestamp unless explicitly requested).

Exit codes: 0 success, 1 usage error, 2 invalid datum, 3 limit exceeded,
4 law-check failure.
"""

from __future__ import annotations

import argparse
import csv
import datetime
import io
import json
import os
import sys
from fractions import Fraction

from . import __version__, dihedral, dominance, oracle, roots as roots_mod
from .datum import CoxeterDatum, load_datum
from .errors import (
    ConsistencyError,
    CoxdomError,
    LimitError,
    ParseError,
    ValidationError,
)
from .scalar import format_scalar, parse_scalar

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATUM = 2
EXIT_LIMIT = 3
EXIT_CHECK = 4

_TABULAR_COMMANDS = {"roots", "elementary", "hierarchy", "classify"}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def build_parser() -> _Parser:
    parser = _Parser(prog="coxdom", description=__doc__)
    parser.add_argument("--version", action="version", version=f"coxdom {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("datum", help="path to a datum file")
        p.add_argument("--tolerance", type=float, default=1e-9)
        mode = p.add_mutually_exclusive_group()
        mode.add_argument("--exact", dest="exact", action="store_true", default=None)
        mode.add_argument("--approx", dest="exact", action="store_false")
        p.add_argument("--format", choices=("json", "csv", "table"), default="json")
        p.add_argument("--output", default=None, help="write the report here instead of stdout")
        p.add_argument("--threads", type=int, default=None,
                       help="worker count (falls back to COXDOM_THREADS; currently advisory)")
        p.add_argument("--timestamp", action="store_true",
                       help="stamp the report with the current UTC time (breaks byte determinism)")

    p = sub.add_parser("validate", help="parse and validate a datum file")
    common(p)

    p = sub.add_parser("roots", help="enumerate positive roots by depth")
    common(p)
    p.add_argument("--max-depth", type=int, default=8)
    p.add_argument("--size-cap", type=int, default=roots_mod.DEFAULT_LAYER_CAP)

    p = sub.add_parser("elementary", help="compute the elementary roots")
    common(p)
    p.add_argument("--size-cap", type=int, default=dominance.DEFAULT_LEVEL_CAP)

    p = sub.add_parser("hierarchy", help="compute dominance hierarchy levels")
    common(p)
    p.add_argument("--levels", type=int, default=3)
    p.add_argument("--depth-cap", type=int, default=dominance.DEFAULT_DEPTH_CAP)
    p.add_argument("--size-cap", type=int, default=dominance.DEFAULT_LEVEL_CAP)

    p = sub.add_parser("classify", help="dominated set of one positive root")
    common(p)
    p.add_argument("--x", required=True, help="comma-separated coefficients, rationals allowed")

    p = sub.add_parser("dominates", help="decide dominance between two roots")
    common(p)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--oracle", type=int, default=None, metavar="RADIUS",
                   help="confirm with a Cayley-ball search of this radius")

    p = sub.add_parser("dihedral", help="verify the rank-2 structure of a dominance pair")
    common(p)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)

    p = sub.add_parser("check", help="run the law suite (and optional oracle agreement)")
    common(p)
    p.add_argument("--levels", type=int, default=3)
    p.add_argument("--depth-cap", type=int, default=8)
    p.add_argument("--oracle", type=int, default=None, metavar="RADIUS")

    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        print(f"coxdom: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        d = _load(args)
    except (ParseError, ValidationError, OSError) as exc:
        print(f"coxdom: invalid datum: {exc}", file=sys.stderr)
        return EXIT_DATUM

    try:
        results, code = _dispatch(args, d)
    except _UsageError as exc:
        print(f"coxdom: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except LimitError as exc:
        print(f"coxdom: limit exceeded: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except ConsistencyError as exc:
        print(f"coxdom: consistency check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except CoxdomError as exc:
        print(f"coxdom: {exc}", file=sys.stderr)
        return EXIT_USAGE

    report = {
        "version": __version__,
        "command": args.command,
        "datum": d.to_dict(),
        "options": _echo_options(args),
        "results": results,
        "timestamp": (
            datetime.datetime.now(datetime.timezone.utc).isoformat()
            if args.timestamp
            else None
        ),
    }
    try:
        _emit(args, report)
    except _UsageError as exc:
        print(f"coxdom: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return code


def _load(args) -> CoxeterDatum:
    return load_datum(args.datum, tolerance=args.tolerance, exact=args.exact)


def _threads(args) -> int:
    if args.threads is not None:
        return args.threads
    return int(os.environ.get("COXDOM_THREADS", "1"))


def _echo_options(args) -> dict:
    skip = {"command", "datum", "output", "format", "timestamp"}
    out = {}
    for key, value in sorted(vars(args).items()):
        if key in skip:
            continue
        out[key] = value
    out["threads"] = _threads(args)
    return out


def _parse_root(d: CoxeterDatum, text: str):
    parts = [p for p in text.split(",")]
    if len(parts) != d.rank:
        raise _UsageError(f"root needs {d.rank} coefficients, got {len(parts)} in {text!r}")
    coeffs = []
    for part in parts:
        try:
            value = parse_scalar(part)
        except ParseError as exc:
            raise _UsageError(str(exc)) from exc
        coeffs.append(value if d.exact else float(value))
    if d.exact:
        coeffs = [Fraction(c) if c.denominator != 1 else c.numerator for c in coeffs]
    return tuple(coeffs)


def _root_payload(d: CoxeterDatum, x, n=None, dominated=None) -> dict:
    payload = {
        "coeffs": [format_scalar(c) for c in x],
        "depth": roots_mod.depth(d, x) if roots_mod.root_sign(d, x) == 1 else None,
    }
    if n is not None:
        payload["n"] = n
    if dominated is not None:
        payload["dominated"] = [[format_scalar(c) for c in b] for b in sorted(dominated)]
    return payload


def _dispatch(args, d: CoxeterDatum):
    command = args.command
    if command == "validate":
        return {"valid": True, "rank": d.rank, "exact": d.exact, "labels": list(d.labels)}, EXIT_OK

    if command == "roots":
        layers = roots_mod.enumerate_roots(d, args.max_depth, layer_cap=args.size_cap)
        return {
            "layers": [
                {"depth": k + 1, "roots": [_root_payload(d, x) for x in layer]}
                for k, layer in enumerate(layers)
            ],
            "total": sum(len(layer) for layer in layers),
        }, EXIT_OK

    if command == "elementary":
        members = dominance.elementary_roots(d, size_cap=args.size_cap)
        ordered = sorted(members, key=lambda x: (roots_mod.depth(d, x), x))
        return {
            "count": len(members),
            "roots": [_root_payload(d, x, n=0, dominated=()) for x in ordered],
        }, EXIT_OK

    if command == "hierarchy":
        levels = dominance.hierarchy(
            d, args.levels, depth_cap=args.depth_cap,
            level_cap=args.size_cap, size_cap=args.size_cap,
        )
        return {
            "levels": [
                {
                    "n": lvl.n,
                    "size": len(lvl.records),
                    "roots": [
                        _root_payload(d, rec.root, n=rec.n, dominated=rec.dominated)
                        for rec in sorted(
                            lvl.records, key=lambda r: (roots_mod.depth(d, r.root), r.root)
                        )
                    ],
                }
                for lvl in levels
            ]
        }, EXIT_OK

    if command == "classify":
        x = _parse_root(d, args.x)
        rec = dominance.dominated_set(d, x)
        return {"root": _root_payload(d, x, n=rec.n, dominated=rec.dominated)}, EXIT_OK

    if command == "dominates":
        x = _parse_root(d, args.x)
        y = _parse_root(d, args.y)
        verdict = dominance.dominates(d, x, y)
        results = {"dominates": verdict}
        if args.oracle is not None:
            oracle_verdict = oracle.dominance_oracle(d, x, y, args.oracle)
            results["oracle"] = {
                "radius": args.oracle,
                "consistent": oracle_verdict.consistent,
                "witness": (
                    [d.labels[a] for a in oracle_verdict.witness.word]
                    if oracle_verdict.witness is not None
                    else None
                ),
            }
        return results, EXIT_OK

    if command == "dihedral":
        x = _parse_root(d, args.x)
        y = _parse_root(d, args.y)
        if not dominance.dominates(d, x, y) or roots_mod.root_key(d, x) == roots_mod.root_key(d, y):
            raise _UsageError("dihedral verification needs a strict dominance pair x, y")
        report = dihedral.verify_dominance_pair(d, x, y)
        results = {
            "frame": {
                "alpha": [format_scalar(c) for c in report.frame.alpha],
                "beta": [format_scalar(c) for c in report.frame.beta],
                "q": format_scalar(report.frame.q),
            },
            "x_position": {"index": report.x_position.index, "family": report.x_position.family},
            "y_position": {"index": report.y_position.index, "family": report.y_position.family},
            "inner_matches": report.inner_matches,
            "consecutive": report.consecutive,
            "passed": report.passed,
        }
        return results, EXIT_OK if report.passed else EXIT_CHECK

    if command == "check":
        levels = dominance.hierarchy(d, args.levels)
        checks = dominance.check_laws(d, levels, depth_cap=args.depth_cap)
        if args.oracle is not None:
            checks = list(checks) + list(
                _oracle_agreement(d, args.oracle, min(args.depth_cap, args.oracle))
            )
        results = {
            "laws": [
                {
                    "name": c.name,
                    "passed": c.passed,
                    "checked": c.checked,
                    "failures": list(c.failures),
                }
                for c in checks
            ],
            "passed": all(c.passed for c in checks),
        }
        return results, EXIT_OK if results["passed"] else EXIT_CHECK

    raise _UsageError(f"unknown command {command!r}")


def _oracle_agreement(d: CoxeterDatum, radius: int, depth_cap: int):
    """Depth and dominance agreement between the fast paths and the ball."""
    sample = roots_mod.positive_roots_upto(d, min(depth_cap, radius))
    depth_failures = []
    for x in sample:
        found = oracle.depth_oracle(d, x, radius)
        if found != roots_mod.depth(d, x):
            depth_failures.append(f"{x!r}: oracle {found}")
    yield dominance.LawCheck(
        name="oracle_depth_agreement",
        passed=not depth_failures,
        checked=len(sample),
        failures=tuple(depth_failures[:3]),
    )
    dom_failures = []
    checked = 0
    ball = oracle.cayley_ball(d, radius)
    masks = oracle.negativity_masks(d, ball, sample)
    for x in sample:
        mx = masks[roots_mod.root_key(d, x)]
        for y in sample:
            checked += 1
            my = masks[roots_mod.root_key(d, y)]
            fast = dominance.dominates(d, x, y)
            if fast and mx & ~my:
                dom_failures.append(f"refuted: {x!r} vs {y!r}")
            elif not fast and not (mx & ~my):
                dom_failures.append(f"no witness: {x!r} vs {y!r}")
    yield dominance.LawCheck(
        name="oracle_dominance_agreement",
        passed=not dom_failures,
        checked=checked,
        failures=tuple(dom_failures[:3]),
    )


def _emit(args, report):
    fmt = args.format
    if fmt == "json":
        text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    elif fmt == "csv":
        text = _to_csv(args.command, report)
    else:
        text = _to_table(report)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _iter_root_rows(command, results):
    if command == "roots":
        for layer in results["layers"]:
            for root in layer["roots"]:
                yield root
    elif command == "elementary":
        yield from results["roots"]
    elif command == "hierarchy":
        for level in results["levels"]:
            yield from level["roots"]
    elif command == "classify":
        root = results["root"]
        for coeffs in root.get("dominated", []):
            yield {"coeffs": coeffs, "depth": None, "n": None}
        yield root


def _to_csv(command, report) -> str:
    if command not in _TABULAR_COMMANDS:
        raise _UsageError(f"csv output is only available for {sorted(_TABULAR_COMMANDS)}")
    results = report["results"]
    rows = list(_iter_root_rows(command, results))
    index_of = {tuple(r["coeffs"]): i for i, r in enumerate(rows)}
    buf = io.StringIO()
    writer = csv.writer(buf)
    labels = report["datum"]["labels"]
    writer.writerow(
        ["depth", "n"] + [f"coeff_{lab}" for lab in labels] + ["dominated_count", "dominated_indices"]
    )
    for row in rows:
        dominated = row.get("dominated")
        writer.writerow(
            [row.get("depth", ""), row.get("n", "")]
            + list(row["coeffs"])
            + (
                [len(dominated), ";".join(str(index_of.get(tuple(b), "")) for b in dominated)]
                if dominated is not None
                else ["", ""]
            )
        )
    return buf.getvalue()


def _to_table(report, indent=0) -> str:
    lines = []

    def walk(node, pad):
        if isinstance(node, dict):
            for key in sorted(node):
                value = node[key]
                if isinstance(value, (dict, list)):
                    lines.append(" " * pad + f"{key}:")
                    walk(value, pad + 2)
                else:
                    lines.append(" " * pad + f"{key}: {value}")
        elif isinstance(node, list):
            for item in node:
                if isinstance(item, (dict, list)):
                    lines.append(" " * pad + "-")
                    walk(item, pad + 2)
                else:
                    lines.append(" " * pad + f"- {item}")

    walk(report, indent)
    return "\n".join(lines) + "\n"


if __name__ == "__main__":
    sys.exit(main())
