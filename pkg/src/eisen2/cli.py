"""Command-line front end: verify identities, export series and tables.

Exit status is 0 exactly when every requested check passes.  Default output
carries no timings, so two runs with identical flags print identical bytes;
JSON reports include per-check elapsed milliseconds.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from typing import Optional

from . import arith, checks
from .catalog import SeriesCatalog, series_D
from .graded import decompose_modular, e_star_poly
from .qseries import rational_str

__all__ = ["main", "UnknownName"]


class UnknownName(KeyError):
    """The export name matches no series, table, or polynomial."""


_SERIES_FIXED = ("delta", "theta3", "C", "D")


def _export_values(name: str, order: int) -> list[str]:
    """Resolve an export name to its exact-rational value strings.

    Series names: E<2k>, E<2k>star, delta, theta3, C, D.
    Table names: tau, delta8, r<s>, sigma<odd s>, sigma<odd s>star.
    """
    if name in _SERIES_FIXED or re.fullmatch(r"E\d+(star)?", name):
        cat = SeriesCatalog(order)
        try:
            return cat.by_name(name).to_strings()
        except KeyError as exc:
            raise UnknownName(name) from exc
    if name == "tau":
        return [rational_str(v) for v in arith.tau_table(order).values]
    if name == "delta8":
        return [rational_str(v) for v in series_D(order + 1).coeffs[1:]]
    m = re.fullmatch(r"r(\d+)", name)
    if m and int(m.group(1)) >= 1:
        return [rational_str(v) for v in arith.r_count(int(m.group(1)), order).values]
    m = re.fullmatch(r"sigma(\d+)(star)?", name)
    if m and int(m.group(1)) % 2 == 1:
        s = int(m.group(1))
        fn = arith.sigma_star if m.group(2) else arith.sigma
        return [rational_str(fn(s, n)) for n in range(order + 1)]
    raise UnknownName(name)


def _format_table(name: str, order: int, values: list[str], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(
            {"name": name, "order": order, "coefficients": values}, indent=2
        ) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "value"])
    for n, v in enumerate(values):
        writer.writerow([n, v])
    return buf.getvalue()


def _format_records(name: str, weight: int, records, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(
            {"name": name, "weight": weight, "terms": [list(r) for r in records]},
            indent=2,
        ) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["a", "b", "c", "value"])
    for rec in records:
        writer.writerow(rec)
    return buf.getvalue()


def _cmd_verify(args) -> int:
    try:
        ids = checks.resolve_ids(args.target)
    except checks.UnknownTheoremId:
        print(f"unknown check id {args.target!r}; see `list`", file=sys.stderr)
        return 2
    reports = checks.run_all(
        order=args.order,
        nmax=args.nmax,
        mmax=args.mmax,
        parallel=args.parallel,
        ids=ids,
    )
    if args.json == "-":
        json.dump([r.to_json_dict() for r in reports], sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        for r in reports:
            line = r.line()
            if args.timings:
                line += f"  [{r.elapsed_ms} ms]"
            print(line)
        failed = sum(r.status != "pass" for r in reports)
        print(f"{len(reports) - failed}/{len(reports)} checks passed")
        if args.json:
            with open(args.json, "w", encoding="utf-8") as fh:
                json.dump([r.to_json_dict() for r in reports], fh, indent=2)
                fh.write("\n")
    return 0 if all(r.status == "pass" for r in reports) else 1


def _default_order(name: str) -> int:
    # identity-sized series default to 64; the long arithmetic tables to 1000
    if name == "tau" or re.fullmatch(r"r\d+", name):
        return 1000
    return 64


def _cmd_export(args) -> int:
    m = re.fullmatch(r"E(\d+)star_poly", args.name)
    order = args.order if args.order is not None else _default_order(args.name)
    try:
        if m:
            weight = int(m.group(1))
            if weight < 4 or weight % 2:
                raise UnknownName(args.name)
            poly = e_star_poly(weight // 2)
            text = _format_records(args.name, weight, poly.to_records(), args.format)
        else:
            values = _export_values(args.name, order)
            text = _format_table(args.name, order, values, args.format)
    except UnknownName:
        print(f"unknown export name {args.name!r}; see `list`", file=sys.stderr)
        return 2
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_decompose(args) -> int:
    order = args.order if args.order is not None else max(64, args.weight // 2 + 8)
    cat = SeriesCatalog(order)
    try:
        series = cat.by_name(args.name)
    except KeyError:
        print(f"unknown series name {args.name!r}", file=sys.stderr)
        return 2
    dec = decompose_modular(series, args.weight, cat)
    text = _format_records(args.name, args.weight, dec.to_records(), args.format)
    sys.stdout.write(text)
    return 0


def _cmd_list(_args) -> int:
    print("checks:")
    for id in checks.registry_ids():
        print(f"  {id:18} {checks.REGISTRY[id].description}")
    print()
    print("exports:")
    print("  series  E<2k>, E<2k>star, delta, theta3, C, D")
    print("  tables  tau, delta8, r<s>, sigma<odd s>, sigma<odd s>star")
    print("  polys   E<2m>star_poly")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eisen2",
        description="exact verification of Eisenstein-series identities "
        "(levels 1 and 2) over rational q-expansions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run one check, a family, or all")
    p_verify.add_argument("target", help='check id, family prefix, or "all"')
    p_verify.add_argument("--order", type=int, default=64,
                          help="series truncation order (default 64)")
    p_verify.add_argument("--nmax", type=int, default=200,
                          help="index range for convolution identities (default 200)")
    p_verify.add_argument("--mmax", type=int, default=20,
                          help="largest half-weight for the positivity check (default 20)")
    p_verify.add_argument("--parallel", action="store_true",
                          help="run checks on a thread pool")
    p_verify.add_argument("--timings", action="store_true",
                          help="append elapsed milliseconds to each line")
    p_verify.add_argument("--json", metavar="PATH",
                          help='write the JSON report to PATH ("-" for stdout)')
    p_verify.set_defaults(fn=_cmd_verify)

    p_export = sub.add_parser("export", help="print a series or table")
    p_export.add_argument("name")
    p_export.add_argument("--order", type=int, default=None,
                          help="truncation order (default 64; 1000 for the "
                          "tau and r<s> tables)")
    p_export.add_argument("--format", choices=("json", "csv"), default="json")
    p_export.add_argument("--output", metavar="FILE")
    p_export.set_defaults(fn=_cmd_export)

    p_dec = sub.add_parser(
        "decompose", help="coordinates of a series over the modular monomial basis"
    )
    p_dec.add_argument("name")
    p_dec.add_argument("--weight", type=int, required=True)
    p_dec.add_argument("--order", type=int, default=None)
    p_dec.add_argument("--format", choices=("json", "csv"), default="json")
    p_dec.set_defaults(fn=_cmd_decompose)

    p_list = sub.add_parser("list", help="known check ids and export names")
    p_list.set_defaults(fn=_cmd_list)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
