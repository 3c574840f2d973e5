"""
Command-line front end.

Exit codes: 0 success / true / pass, 1 property false or verification
failure, 2 usage error, 3 parse or validation error.
"""

from __future__ import annotations

import argparse
import sys

from . import analysis as an
from .core import LIMITS, are_isomorphic
from .errors import E_RANGE, E_UNKNOWN_NAME, LatticeError
from .families import KINDS, FamilySpec, make_family
from .io import export_dot, parse_lattice, to_json, write_lattice
from .suites import SUITES, CampaignSpec, run_campaign

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_INVALID = 0, 1, 2, 3

CHECKS = {
    "chain": an.is_chain,
    "distributive": an.is_distributive,
    "boolean": an.is_boolean,
    "catenarian": an.is_catenarian,
    "p-extension": an.is_p_extension,
}


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str | None, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _load(path: str):
    return parse_lattice(_read(path))


def cmd_gen(args) -> int:
    params = list(args.params)
    seed = None
    if args.family == "random_distributive":
        if not params:
            raise UsageError("random_distributive needs a seed")
        try:
            seed = int(params.pop(0))
        except ValueError:
            raise UsageError("seed must be an integer") from None
    try:
        L = make_family(FamilySpec(args.family, params, seed))
    except ValueError as exc:
        raise UsageError(f"bad parameter: {exc}") from None
    except LatticeError as exc:
        if exc.code in (E_RANGE, E_UNKNOWN_NAME):
            raise UsageError(str(exc)) from None
        raise
    _write(args.output, write_lattice(L))
    return EXIT_OK


def _format_report(report: an.AnalysisReport) -> str:
    d = report.to_dict()
    lines = [f"lattice: {d['name']}"]
    for key in ("cardinality", "lattice_length", "loewy_length"):
        lines.append(f"{key}: {d[key]}")
    lines.append("loewy_series: " + " < ".join(d["loewy_series"]))
    lines.append(f"socle: {d['socle']}")
    lines.append(f"radical: {d['radical']}")
    for key in ("atoms", "coatoms", "essentials", "join_irreducibles", "meet_irreducibles"):
        val = d[key]
        lines.append(f"{key}: " + ("undefined" if val is None else "{" + ", ".join(val) + "}"))
    lines.append("layer_sizes: " + " ".join(map(str, d["layer_sizes"])))
    for k, v in d["flags"].items():
        lines.append(f"{k}: {str(v).lower()}")
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    report = an.analyze(_load(args.file))
    sys.stdout.write(to_json(report.to_dict()) + "\n" if args.json else _format_report(report))
    return EXIT_OK


def cmd_loewy(args) -> int:
    L = _load(args.file)
    for label in an.loewy_series(L).labels():
        print(label)
    return EXIT_OK


def cmd_check(args) -> int:
    L = _load(args.file)
    value = CHECKS[args.property](L)
    print("true" if value else "false")
    return EXIT_OK if value else EXIT_FALSE


def cmd_verify(args) -> int:
    if args.count is not None and args.seed is None:
        raise UsageError("--count requires --seed")
    spec = CampaignSpec(
        suite=args.suite,
        n=args.n,
        max_n=args.max_n,
        seed=args.seed,
        count=args.count or 0,
    )
    if args.suite == "thm8131" and args.n is not None and args.n < 2:
        raise UsageError("--n must be >= 2")
    report = run_campaign(spec)
    if args.json:
        print(to_json(report.to_dict()))
    else:
        print(f"{report.suite}: {report.verdict} ({report.instances_checked} checked, "
              f"{len(report.skipped)} skipped, {len(report.failures)} failures, {report.elapsed_ms:.0f} ms)")
        for f in report.failures:
            print(f"  FAIL {f.instance} {f.clause} witness={f.witness} {f.detail}".rstrip())
        for s in report.skipped:
            print(f"  skip {s['instance']} ({s['reason']})")
    return EXIT_OK if report.passed else EXIT_FALSE


def cmd_export_dot(args) -> int:
    _write(args.output, export_dot(_load(args.file), with_loewy=args.loewy))
    return EXIT_OK


def cmd_iso(args) -> int:
    ok, witness = are_isomorphic(_load(args.file1), _load(args.file2))
    print("true" if ok else "false")
    if ok:
        for a, b in witness.items():
            print(f"{a} -> {b}")
    return EXIT_OK if ok else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="loewy", description="Finite lattice invariants and law suites.")
    p.add_argument("--max-size", type=int, help="element cap for built lattices (default: LATTICE_MAX_N or 4096)")
    p.add_argument("--scan-max", type=int, help="element cap for cubic scans such as distributivity (default 512)")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a generated lattice file")
    g.add_argument("family", choices=KINDS)
    g.add_argument("params", nargs="*")
    g.add_argument("-o", "--output", default="-")
    g.set_defaults(func=cmd_gen)

    a = sub.add_parser("analyze", help="print every invariant")
    a.add_argument("file")
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_analyze)

    lw = sub.add_parser("loewy", help="print the Loewy series, one element per line")
    lw.add_argument("file")
    lw.set_defaults(func=cmd_loewy)

    c = sub.add_parser("check", help="test one property; exit 0 if true, 1 if false")
    c.add_argument("property", choices=sorted(CHECKS))
    c.add_argument("file")
    c.set_defaults(func=cmd_check)

    v = sub.add_parser("verify", help="run a law suite campaign")
    v.add_argument("suite", choices=SUITES)
    sel = v.add_mutually_exclusive_group()
    sel.add_argument("--n", type=int)
    sel.add_argument("--max-n", type=int)
    sel.add_argument("--seed", type=int)
    v.add_argument("--count", type=int)
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("export-dot", help="write a DOT drawing of the cover relation")
    d.add_argument("file")
    d.add_argument("--loewy", action="store_true")
    d.add_argument("-o", "--output", default="-")
    d.set_defaults(func=cmd_export_dot)

    i = sub.add_parser("iso", help="test two lattice files for isomorphism")
    i.add_argument("file1")
    i.add_argument("file2")
    i.set_defaults(func=cmd_iso)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    saved = (LIMITS.max_size, LIMITS.scan_max)
    if args.max_size is not None:
        LIMITS.max_size = args.max_size
    if args.scan_max is not None:
        LIMITS.scan_max = args.scan_max
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"loewy: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except LatticeError as exc:
        print(f"loewy: {exc}", file=sys.stderr)
        return EXIT_INVALID
    finally:
        LIMITS.max_size, LIMITS.scan_max = saved


if __name__ == "__main__":
    sys.exit(main())
