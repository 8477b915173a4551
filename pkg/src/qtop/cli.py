"""Command-line front end.

Exit status: 0 success, 1 domain error, 2 size limit, 64 usage error.
Errors are also written to stderr as a one-line JSON object.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import catalog, coverbasis, freetop, report, suspension
from .errors import BadInput, QtopError, SizeLimit
from .finspace import (
    FinSpace,
    Partition,
    bits,
    identity_map,
    is_quotient_map,
    open_masks,
    path_components,
    pi0_top,
    quotient_space,
    separation,
    space_from_opens,
    space_from_upset,
)

EXIT_DOMAIN = 1
EXIT_SIZE = 2
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def load_space(path: str) -> FinSpace:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise BadInput(f"cannot read {path}: {exc}") from exc
    return parse_space(data)


def parse_space(data) -> FinSpace:
    if not isinstance(data, dict) or "labels" not in data:
        raise BadInput("space description must be an object with 'labels'")
    has_opens, has_upset = "opens" in data, "upset" in data
    if has_opens == has_upset:
        raise BadInput("exactly one of 'opens' and 'upset' must be present")
    labels = data["labels"]
    try:
        if has_opens:
            return space_from_opens(labels, data["opens"])
        return space_from_upset(labels, data["upset"])
    except (TypeError, ValueError) as exc:
        raise BadInput(f"malformed space description: {exc}") from exc


def parse_partition(text: str, n: int) -> Partition:
    """``0,1|2`` -> blocks {0, 1} and {2}."""
    try:
        blocks = [[int(p) for p in chunk.split(",") if p.strip()] for chunk in text.split("|")]
    except ValueError as exc:
        raise BadInput(f"bad partition {text!r}") from exc
    p = Partition.of(blocks)
    p.validate(n)
    return p


def _input_space(args) -> FinSpace:
    if args.builtin:
        return catalog.builtin(args.builtin)
    return load_space(args.input)


def _set_name(args) -> str:
    return args.builtin if args.builtin else Path(args.input).name


def cmd_analyze(args) -> dict:
    x = _input_space(args)
    r = suspension.analyze(x, args.level, args.size_limit)
    out = report.suspension_to_dict(r, "analyze")
    out["input_name"] = _set_name(args)
    return out


def cmd_analyze_direct(args) -> dict:
    y = _input_space(args)
    r = suspension.analyze_direct(y, args.level, args.size_limit)
    out = report.suspension_to_dict(r, "analyze-direct")
    out["input_name"] = _set_name(args)
    return out


def cmd_fr_group(args) -> dict:
    y = _input_space(args)
    g = freetop.build_reduced_group(y, args.level, args.size_limit)
    wit = freetop.t1_witness(g)
    e = freetop.identity(y.n)
    out = report.header("fr-group", args.level)
    out["input_name"] = _set_name(args)
    out.update(freetop.group_to_dict(g))
    out["t1"] = freetop.t1_at_level(g)
    out["t1_witness"] = [g.word_text(w) for w in wit] if wit else None
    out["closure_of_e"] = sorted(
        (g.word_text(w) for w in freetop.closure_of(g, [e])), key=lambda t: (len(t), t)
    )
    out["inversion_continuous"] = freetop.inversion_map(g).continuous
    if args.format != "json":
        out["rows"] = [
            {
                "index": i,
                "word": g.word_text(w),
                "minimal_open": [g.word_text(v) for v in g.minimal_open(w)],
            }
            for i, w in enumerate(g.words)
        ]
        del out["words"], out["minimal_opens"]
    return out


def _projection(args, x: FinSpace):
    if args.partition:
        _, q = quotient_space(x, parse_partition(args.partition, x.n))
        return q
    _, q = pi0_top(x)
    return q


def cmd_check_powers(args) -> dict:
    x = _input_space(args)
    q = _projection(args, x)
    n = args.level
    psi = freetop.psi_level_check(x, n, q, args.size_limit)
    out = report.header("check-powers", n)
    out["input_name"] = _set_name(args)
    out["codomain"] = list(q.codomain.labels)
    out["table"] = list(q.table)
    out["powers_quotient"] = psi.powers_quotient
    out["psi_iso"] = psi.psi_iso
    out["induced_map_quotient"] = freetop.induced_map_quotient(q, n, args.size_limit)
    out["rows"] = [
        {"power": i, "quotient": freetop.powers_quotient(q, i, args.size_limit)}
        for i in range(1, n + 1)
    ]
    return out


def cmd_cover_basis(args) -> dict:
    x = _input_space(args)
    if args.partition:
        _, q = quotient_space(x, parse_partition(args.partition, x.n))
    else:
        q = identity_map(x)
    cover = coverbasis.minimal_cover(x) if args.cover == "minimal" else coverbasis.maximal_cover(x)
    z_labels = q.codomain.labels
    out = report.header("cover-basis", None)
    out["input_name"] = _set_name(args)
    out["cover"] = args.cover
    out["codomain"] = list(z_labels)
    out["quotient_map"] = is_quotient_map(q)
    rows = []
    for z in range(q.codomain.n):
        chain = coverbasis.neighborhood_chain(q, z, cover)
        rows.append(
            {
                "point": z_labels[z],
                "neighborhood": [z_labels[i] for i in bits(chain[-1])],
                "iterations": len(chain) - 1,
            }
        )
    out["separated_pairs"] = [
        [z_labels[a], z_labels[b]]
        for a in range(q.codomain.n)
        for b in range(a + 1, q.codomain.n)
        if coverbasis.separated_by_cover(q, a, b, cover)
    ]
    out["rows"] = rows
    return out


def _minimal_opens_text(s: FinSpace) -> str:
    return " ".join(
        f"{s.labels[x]}:{{{','.join(s.labels[y] for y in bits(u))}}}" for x, u in enumerate(s.ups)
    )


def cmd_enumerate(args) -> dict:
    spaces = catalog.enumerate_topologies(args.points, args.up_to_homeo)
    out = report.header("enumerate", None)
    out["points"] = args.points
    out["up_to_homeo"] = args.up_to_homeo
    out["count"] = len(spaces)
    out["rows"] = [
        {
            "index": i,
            "opens": len(open_masks(s)),
            "t0": separation(s).t0,
            "components": len(path_components(s).blocks),
            "minimal_opens": _minimal_opens_text(s),
        }
        for i, s in enumerate(spaces)
    ]
    return out


def cmd_classify(args) -> dict:
    if args.builtin:
        spaces = [(name, catalog.builtin(name)) for name in args.builtin]
    elif args.input:
        spaces = [(Path(p).name, load_space(p)) for p in args.input]
    else:
        found = catalog.enumerate_topologies(args.points, args.up_to_homeo)
        spaces = [(f"#{i}", s) for i, s in enumerate(found)]
    out = report.header("classify", args.level)
    out["rows"] = catalog.classify(spaces, args.level, args.size_limit)
    return out


def cmd_catalog(args) -> dict:
    out = report.header("catalog", None)
    out["builtin_names"] = list(catalog.BUILTIN_NAMES)
    rows = []
    for entry in catalog.standard_catalog():
        s = entry.space
        sep = separation(s)
        rows.append(
            {
                "name": entry.name,
                "points": s.n,
                "opens": len(open_masks(s)),
                "t0": sep.t0,
                "t1": sep.t1,
                "h_prime": sep.h_prime,
                "components": len(path_components(s).blocks),
                "notes": entry.notes,
            }
        )
    out["rows"] = rows
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qtop", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def common(p, level_default=3, with_input=True):
        if with_input:
            src = p.add_mutually_exclusive_group(required=True)
            src.add_argument("--builtin", help="builtin space, e.g. sierpinski or discrete(3)")
            src.add_argument("--input", help="JSON space description")
        p.add_argument("--level", type=int, default=level_default)
        p.add_argument("--format", choices=sorted(report.RENDERERS), default="json")
        p.add_argument("--size-limit", type=int, default=None)

    for name, fn, helptext in (
        ("analyze", cmd_analyze, "suspension report via the refined route"),
        ("analyze-direct", cmd_analyze_direct, "reduction-topology report on the input"),
        ("fr-group", cmd_fr_group, "one level of the reduction-topology free group"),
    ):
        p = sub.add_parser(name, help=helptext)
        common(p)
        p.set_defaults(func=fn)

    p = sub.add_parser("check-powers", help="quotient powers and the comparison bijection")
    common(p)
    p.add_argument("--partition", help="q = projection onto these blocks, e.g. '0,1|2'")
    p.set_defaults(func=cmd_check_powers)

    p = sub.add_parser("cover-basis", help="neighbourhoods generated by a pointwise cover")
    common(p)
    p.add_argument("--partition", help="q = projection onto these blocks (default identity)")
    p.add_argument("--cover", choices=("minimal", "maximal"), default="minimal")
    p.set_defaults(func=cmd_cover_basis)

    p = sub.add_parser("enumerate", help="all topologies on a few points")
    common(p, with_input=False)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--up-to-homeo", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("classify", help="separation and free-group verdict table")
    common(p, level_default=2, with_input=False)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--points", type=int)
    src.add_argument("--builtin", action="append")
    src.add_argument("--input", action="append")
    p.add_argument("--up-to-homeo", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("catalog", help="list builtin spaces")
    common(p, with_input=False)
    p.set_defaults(func=cmd_catalog)
    return parser


def _fail(code: str, message: str, status: int) -> int:
    sys.stderr.write(json.dumps({"error": code, "message": message}) + "\n")
    return status


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required")
        if getattr(args, "level", 0) is not None and args.level < 0:
            raise UsageError("--level must be nonnegative")
        out = args.func(args)
    except UsageError as exc:
        sys.stderr.write(parser.format_usage())
        return _fail("UsageError", str(exc), EXIT_USAGE)
    except SizeLimit as exc:
        return _fail(exc.code, str(exc), EXIT_SIZE)
    except QtopError as exc:
        return _fail(exc.code, str(exc), EXIT_DOMAIN)
    sys.stdout.write(report.render(out, args.format))
    return 0


if __name__ == "__main__":
    sys.exit(main())
