"""Command-line front end.

Subcommands: count, enumerate, classify, info, census, spectrum, verify,
con-count.  Lattice inputs come from an expression string (--expr) or a JSON
file (--file) holding {"n": ..., "covers": [[i, j], ...]}.  Exit status is 0
on success, 1 when a verification check fails (the counterexample is in the
report), 2 on input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import census as census_mod
from . import congruence as con_mod
from . import structure
from .core import Lattice, LatticeError, build_expression, from_covers
from .subuniverse import count_subuniverses, enumerate_subuniverses


def normalized_count(count: int, n: int) -> Optional[str]:
    """Render a count as 'q*2^(n-5)' with q an exact decimal, for n >= 5."""
    if n < 5:
        return None
    k = n - 5
    digits = str(count * 5**k)
    if k:
        digits = digits.rjust(k + 1, "0")
        whole, frac = digits[:-k], digits[-k:].rstrip("0")
        q = whole + ("." + frac if frac else "")
    else:
        q = digits
    return f"{q}*2^({n}-5)"


def load_lattice_file(path: str) -> Lattice:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict) or "n" not in data or "covers" not in data:
        raise LatticeError(f"{path}: expected an object with 'n' and 'covers'")
    return from_covers(data["n"], [tuple(pair) for pair in data["covers"]])


def lattice_json(lat: Lattice) -> dict:
    return {"n": lat.n, "covers": [list(c) for c in lat.covers]}


def _input_lattice(args) -> Lattice:
    if args.expr is not None:
        return build_expression(args.expr)
    return load_lattice_file(args.file)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_payload(payload: dict, args) -> None:
    if getattr(args, "format", "json") == "table":
        lines = []
        for key, value in payload.items():
            lines.append(f"{key}: {json.dumps(value)}")
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _emit(json.dumps(payload, indent=2) + "\n", args.out)


def _add_input_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--expr", help="lattice expression, e.g. '(C2xC3)+C2'")
    group.add_argument("--file", help="path to a lattice JSON file")


def _add_output_flags(parser: argparse.ArgumentParser, formats=("json", "table")) -> None:
    parser.add_argument("--out", help="write output to this path instead of stdout")
    parser.add_argument("--format", choices=formats, default=formats[0])


def cmd_count(args) -> int:
    lat = _input_lattice(args)
    count = count_subuniverses(lat)
    payload = {"n": lat.n, "sub_count": count}
    norm = normalized_count(count, lat.n)
    if norm:
        payload["normalized"] = norm
    _emit_payload(payload, args)
    return 0


def cmd_con_count(args) -> int:
    lat = _input_lattice(args)
    count = con_mod.count_congruences(lat)
    payload = {"n": lat.n, "con_count": count}
    norm = normalized_count(count, lat.n)
    if norm:
        payload["normalized"] = norm
    _emit_payload(payload, args)
    return 0


def cmd_enumerate(args) -> int:
    lat = _input_lattice(args)
    subs = [list(s.members) for s in enumerate_subuniverses(lat)]
    if args.format == "jsonl":
        _emit("".join(json.dumps(s) + "\n" for s in subs), args.out)
    elif args.format == "table":
        rows = [f"size {len(s)}: {' '.join(map(str, s)) or '-'}" for s in subs]
        _emit("\n".join(rows) + "\n", args.out)
    else:
        _emit_payload({"n": lat.n, "count": len(subs), "subuniverses": subs}, args)
    return 0


def cmd_classify(args) -> int:
    lat = _input_lattice(args)
    cls = structure.classify(lat)
    payload = {"n": lat.n, "class": cls.tag, "predicted_count": cls.predicted_count}
    if cls.core is not None:
        payload["chain_prefix"] = cls.prefix
        payload["chain_suffix"] = cls.suffix
        payload["core_size"] = cls.core.n
    if cls.predicted_count is not None:
        norm = normalized_count(cls.predicted_count, lat.n)
        if norm:
            payload["normalized"] = norm
    _emit_payload(payload, args)
    return 0


def cmd_info(args) -> int:
    lat = _input_lattice(args)
    if args.emit_json:
        _emit(json.dumps(lattice_json(lat)) + "\n", args.out)
        return 0
    antichain = structure.find_antichain(lat, 3)
    payload = {
        "n": lat.n,
        "covers": [list(c) for c in lat.covers],
        "bottom": 0,
        "top": lat.n - 1,
        "is_chain": structure.is_chain(lat),
        "class": structure.classify(lat).tag,
        "doubly_irreducible": list(structure.doubly_irreducibles(lat)),
        "isolated_elements": list(structure.isolated_elements(lat)),
        "isolated_edges": [list(e) for e in structure.isolated_edges(lat)],
        "antichain3": list(antichain) if antichain else None,
    }
    _emit_payload(payload, args)
    return 0


def cmd_census(args) -> int:
    records = census_mod.census_records(args.size, jobs=args.jobs)
    if args.with_con:
        records = con_mod.with_con_counts(records)
    if args.format == "table":
        rows = [
            f"{rec.canon}  sub={rec.sub_count}"
            + (f" con={rec.con_count}" if rec.con_count is not None else "")
            + f"  {rec.classification}"
            + ("  3-antichain" if rec.has_antichain3 else "")
            for rec in records
        ]
        _emit("\n".join(rows) + "\n", args.out)
    else:
        _emit(census_mod.census_jsonl(records), args.out)
    return 0


def cmd_spectrum(args) -> int:
    if args.kind == "con":
        report = con_mod.con_spectrum(args.size)
    else:
        report = census_mod.spectrum(args.size)
    if args.format == "table":
        rows = [f"{value}: {len(ws)} classes" for value, ws in report.witnesses]
        _emit("\n".join(rows) + "\n", args.out)
    else:
        _emit(json.dumps(report.to_json_dict(), indent=2) + "\n", args.out)
    return 0


def cmd_verify(args) -> int:
    if args.size is not None:
        sizes = [args.size]
    elif args.max_n is not None:
        sizes = list(range(5, args.max_n + 1))
    else:
        raise LatticeError("verify needs --size or --max-n")
    reports = []
    for n in sizes:
        if args.theorem == "main":
            reports.append(census_mod.verify_top_three(n))
        elif args.theorem == "corollary":
            reports.append(census_mod.verify_gap(n))
        elif args.theorem == "lemma4":
            reports.append(census_mod.verify_antichain_bound(n))
        else:
            reports.append(con_mod.verify_congruence_spectrum(n))
    if len(reports) == 1:
        payload = reports[0].to_json_dict()
    else:
        payload = {
            "passed": all(r.passed for r in reports),
            "reports": [r.to_json_dict() for r in reports],
        }
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    if all(r.passed for r in reports):
        return 0
    for report in reports:
        for line in report.failures:
            print(f"FAIL n={report.n}: {line}", file=sys.stderr)
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latcensus",
        description="Count lattice subuniverses and verify extremal-count "
        "classifications over an exhaustive census of small lattices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="number of subuniverses of one lattice")
    _add_input_flags(p)
    _add_output_flags(p)
    p.set_defaults(fn=cmd_count)

    p = sub.add_parser("con-count", help="number of congruences of one lattice")
    _add_input_flags(p)
    _add_output_flags(p)
    p.set_defaults(fn=cmd_con_count)

    p = sub.add_parser("enumerate", help="list all subuniverses (n <= 20)")
    _add_input_flags(p)
    _add_output_flags(p, formats=("json", "jsonl", "table"))
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("classify", help="match against the extremal-count shapes")
    _add_input_flags(p)
    _add_output_flags(p)
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("info", help="structural facts about one lattice")
    _add_input_flags(p)
    _add_output_flags(p)
    p.add_argument(
        "--emit-json",
        action="store_true",
        help="print the lattice in the JSON file format and nothing else",
    )
    p.set_defaults(fn=cmd_info)

    p = sub.add_parser("census", help="all isomorphism classes of a given size")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1, help="parallel analysis workers")
    p.add_argument("--with-con", action="store_true", help="include congruence counts")
    _add_output_flags(p, formats=("jsonl", "table"))
    p.set_defaults(fn=cmd_census)

    p = sub.add_parser("spectrum", help="distinct count values with witnesses")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--kind", choices=("sub", "con"), default="sub")
    _add_output_flags(p)
    p.set_defaults(fn=cmd_spectrum)

    p = sub.add_parser("verify", help="run an exhaustive verification check")
    p.add_argument(
        "--theorem",
        choices=("main", "lemma4", "corollary", "remark1"),
        required=True,
        help="main: top-three counts and witness shapes; lemma4: the "
        "3-antichain bound; corollary: gaps between the top counts; "
        "remark1: largest congruence counts and shapes",
    )
    p.add_argument("--size", type=int, help="single census size to check")
    p.add_argument("--max-n", type=int, help="check every size from 5 up to this")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_verify)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except LatticeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
