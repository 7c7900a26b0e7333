"""Batch command line interface.

Subcommands::

    braidcomm verify --group {gvb|sg|all} --n 3,4,5,6 --window 5 \
        [--claims FILTER] [--format {table|json-lines}]
    braidcomm export-presentation --group GROUP --n N
    braidcomm replay --script NAME --window M [--transcript PATH]

``verify`` exits nonzero exactly when some claim is refuted.
"""

from __future__ import annotations

import argparse
import sys

from . import registry, replays
from .catalog import FAMILIES, catalog
from .derived import raw_derived, simplified_derived
from .grammar import emit_presentation

EXPORTABLE = tuple(f.lower() for f in FAMILIES) + (
    "gvb-derived", "sg-derived", "gvb-derived-raw", "sg-derived-raw",
)


def _int_list(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part]


def cmd_verify(args) -> int:
    report = registry.run(claim_filter=args.claims, groups=args.group,
                          ns=_int_list(args.n), window=args.window)
    if args.format == "json-lines":
        for result in report.results:
            print(result.json_line())
    else:
        print(registry.emit_claims(report))
        print(registry.emit_table(report))
    return report.exit_status


def cmd_export(args) -> int:
    name = args.group.lower()
    if name not in EXPORTABLE:
        print(f"unknown group {args.group!r}; choose from {', '.join(EXPORTABLE)}",
              file=sys.stderr)
        return 2
    if name.endswith("-derived-raw"):
        pres = raw_derived(name.split("-")[0].upper(), args.n)
    elif name.endswith("-derived"):
        pres = simplified_derived(name.split("-")[0].upper(), args.n)
    else:
        pres = catalog(name.upper(), args.n)
    sys.stdout.write(emit_presentation(pres))
    return 0


def cmd_replay(args) -> int:
    if args.script not in replays.SCRIPTS:
        print(f"unknown script {args.script!r}; choose from "
              f"{', '.join(sorted(replays.SCRIPTS))}", file=sys.stderr)
        return 2
    p = replays.SCRIPTS[args.script](args.window)
    text = p.transcript_text()
    survivors = sorted(p.surviving_interior(replays.MARGIN))
    from .words import fmt_gen

    summary = (f"interior survivors ({len(survivors)}): "
               + ", ".join(fmt_gen(g) for g in survivors) + "\n")
    if args.transcript:
        with open(args.transcript, "w") as handle:
            handle.write(text + summary)
        print(f"transcript written to {args.transcript}")
    else:
        sys.stdout.write(text + summary)
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="braidcomm",
        description="verify commutator-subgroup structure of braid-like groups",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run claims and report verdicts")
    verify.add_argument("--group", choices=("gvb", "sg", "all"), default="all")
    verify.add_argument("--n", default="3,4,5,6", help="comma-separated strand counts")
    verify.add_argument("--window", type=int, default=4, help="truncation bound")
    verify.add_argument("--claims", default="", help="substring filter on claim ids")
    verify.add_argument("--format", choices=("table", "json-lines"), default="table")
    verify.set_defaults(func=cmd_verify)

    export = sub.add_parser("export-presentation", help="print a presentation file")
    export.add_argument("--group", required=True)
    export.add_argument("--n", type=int, required=True)
    export.set_defaults(func=cmd_export)

    replay = sub.add_parser("replay", help="run a named elimination script")
    replay.add_argument("--script", required=True)
    replay.add_argument("--window", type=int, required=True)
    replay.add_argument("--transcript", default="")
    replay.set_defaults(func=cmd_replay)
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
