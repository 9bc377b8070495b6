"""Command line front end.

Four commands: analyze (the full structure analysis of one (G, H) pair),
check (statement suites over the catalog), kernel (Frobenius kernel
extraction), catalog (list the built-in groups). Exit codes: 0 clean,
1 a statement FAILS, 2 usage error, 3 only bound skips stood in the way.
"""

import argparse
import json
import os
import sys

from .arith import parse_primes, prime_set
from .corpus import build_group, catalog, catalog_entry, load_spec
from .errors import BoundExceeded, InvalidInput, ParseError
from .permcore import Bounds, parse_permutation
from .thmcheck import (
    FAILS,
    HOLDS,
    NOT_APPLICABLE,
    SKIPPED,
    SuiteConfig,
    _analysis_report_row,
    _jsonable,
    run_suite,
)
from .tiprops import analyze_theorem_1_2, frobenius_kernel


def _common_flags(parser):
    parser.add_argument("--bound-enum", type=int, default=None,
                        help="element enumeration limit")
    parser.add_argument("--bound-subgroups", type=int, default=None,
                        help="subgroup-class sweep limit on the group order")
    parser.add_argument("--bound-iso", type=int, default=None,
                        help="isomorphism search limit")
    parser.add_argument("--seed", type=int, default=0,
                        help="echoed into reports; the checks are deterministic")
    parser.add_argument("--json", metavar="PATH", default=None,
                        help="also write the structured report here")


def _bounds_from(args):
    base = Bounds()
    return Bounds(
        enum=args.bound_enum if args.bound_enum is not None else base.enum,
        subgroups=(args.bound_subgroups if args.bound_subgroups is not None
                   else base.subgroups),
        iso=args.bound_iso if args.bound_iso is not None else base.iso,
    )


def _resolve_group(text):
    """A catalog name, else a path to a group-spec file. Returns
    (entry or None, group, display name)."""
    try:
        entry = catalog_entry(text)
        return entry, entry.group(), entry.name
    except InvalidInput:
        pass
    if os.path.exists(text):
        spec = load_spec(text)
        return None, build_group(spec), spec.name
    raise InvalidInput("%r is neither a catalog entry nor a spec file" % text)


def _resolve_subgroup(entry, G, text):
    """A distinguished subgroup name, else comma-separated generators."""
    if entry is not None and text in entry.distinguished_subgroups:
        return entry.subgroup(text, parent=G), text
    gens = [parse_permutation(part.strip(), G.degree)
            for part in text.split(",") if part.strip()]
    if not gens:
        raise InvalidInput("empty subgroup specification %r" % text)
    return G.subgroup(gens), text


def _write_json(path, doc):
    with open(path, "w") as fh:
        fh.write(json.dumps(doc, indent=2) + "\n")


def _print_cert_line(cert, keys, out):
    for k in keys:
        if k in cert and cert[k] is not None:
            out.write("  %s: %s\n" % (k, cert[k]))


def _cmd_analyze(args, out):
    entry, G, gname = _resolve_group(args.group)
    sub = args.subgroup
    if sub is None:
        if entry is not None and "H" in entry.distinguished_subgroups:
            sub = "H"
        else:
            raise InvalidInput("analyze needs --subgroup for this group")
    H, hlabel = _resolve_subgroup(entry, G, sub)
    if args.pi is not None:
        pi = parse_primes(args.pi)
        derived = prime_set(H.order())
        if pi != derived:
            raise InvalidInput(
                "--pi %s does not match the primes %s of the subgroup order %d"
                % (args.pi, sorted(derived), H.order()))
    bounds = _bounds_from(args)
    rep = analyze_theorem_1_2(G, H, bounds)
    row = _analysis_report_row(rep)
    cert = _jsonable(row.certificate)

    out.write("group %s (order %d), subgroup %s (order %d)\n"
              % (gname, G.order(), hlabel, H.order()))
    out.write("verdict: %s\n" % rep.verdict)
    out.write("pi: %s\n" % cert["pi"])
    for name, ok in cert["hypotheses"].items():
        out.write("  hypothesis %s: %s\n" % (name, "yes" if ok else "NO"))
    out.write("o_pi_prime order: %d\n" % cert["o_pi_prime_order"])
    out.write("normalizer order: %d\n" % cert["normalizer_order"])
    if cert["pi_length"] is not None:
        out.write("pi_length: %d\n" % cert["pi_length"])
    if cert["frobenius_section"] is not None:
        out.write("frobenius section order: %d\n"
                  % cert["frobenius_section"]["order"])
    if cert["chief_frobenius_factor"] is not None:
        out.write("chief frobenius factor order: %d\n"
                  % cert["chief_frobenius_factor"]["order"])
    for name, ok in cert["conclusions"].items():
        out.write("  conclusion %s: %s\n" % (name, "holds" if ok else "FAILS"))
    if args.json:
        _write_json(args.json, {
            "format": "analysis-report/1",
            "group": gname,
            "subgroup": hlabel,
            "verdict": rep.verdict,
            "certificate": cert,
        })
    return 1 if rep.verdict == FAILS else 0


def _cmd_kernel(args, out):
    entry, G, gname = _resolve_group(args.group)
    H, hlabel = _resolve_subgroup(entry, G, args.subgroup)
    bounds = _bounds_from(args)
    rep = frobenius_kernel(G, H, bounds)
    out.write("group %s (order %d), complement %s (order %d)\n"
              % (gname, G.order(), hlabel, H.order()))
    out.write("verdict: %s\n" % rep.verdict)
    cert = _jsonable(rep.certificate)
    if rep.verdict == HOLDS:
        out.write("kernel order: %d\n" % cert["kernel_order"])
        for g in cert["kernel"]["generators"]:
            out.write("  %s\n" % g)
    elif rep.verdict == NOT_APPLICABLE:
        out.write("failed hypothesis: %s\n" % cert["failed_hypothesis"])
    else:
        _print_cert_line(cert, sorted(cert), out)
    if args.json:
        _write_json(args.json, {
            "format": "kernel-report/1",
            "group": gname,
            "subgroup": hlabel,
            "verdict": rep.verdict,
            "certificate": cert,
        })
    return 1 if rep.verdict == FAILS else 0


def _cmd_check(args, out):
    suites = tuple(s.strip() for s in args.suite.split(",") if s.strip())
    if not suites:
        raise InvalidInput("empty --suite")
    config = SuiteConfig(
        suites=suites,
        filter=args.filter or "",
        bounds=_bounds_from(args),
        seed=args.seed,
        include_stretch=args.include_stretch,
        timings=args.timings,
    )
    rep = run_suite(config)
    out.write("suites: %s\n" % ",".join(rep.config["suites"]))
    if rep.config["filter"]:
        out.write("filter: %s\n" % rep.config["filter"])
    for verdict in (HOLDS, FAILS, NOT_APPLICABLE, SKIPPED):
        out.write("%s: %d\n" % (verdict, rep.summary.get(verdict, 0)))
    out.write("rows: %d\n" % rep.summary["rows"])
    for row in rep.rows:
        if row["verdict"] == FAILS:
            out.write("FAILS %s %s %s\n"
                      % (row["group"], row["statement"], row["subgroup"]))
        elif row["verdict"] == SKIPPED:
            out.write("SKIPPED %s %s %s: %s\n"
                      % (row["group"], row["statement"], row["subgroup"],
                         row["certificate"].get("reason")))
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(rep.document())
    return rep.exit_code()


def _cmd_catalog(args, out):
    for entry in catalog():
        if args.tags:
            out.write("%s\t%s\n" % (entry.name, ",".join(entry.tags)))
        else:
            out.write("%s\n" % entry.name)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="tigroups",
        description="Finite group structure checks on a built-in catalog.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full structure analysis of one pair")
    p.add_argument("--group", required=True, help="catalog name or spec file")
    p.add_argument("--subgroup", default=None,
                   help="distinguished name or comma-separated generators")
    p.add_argument("--pi", default=None,
                   help="prime set, cross-checked against the subgroup order")
    _common_flags(p)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("check", help="run statement suites over the catalog")
    p.add_argument("--suite", required=True,
                   help="comma-separated statement ids, or all")
    p.add_argument("--filter", default="",
                   help="tag expression (and/or/not/parens)")
    p.add_argument("--include-stretch", action="store_true",
                   help="include entries tagged stretch, with a raised "
                        "enumeration bound")
    p.add_argument("--timings", action="store_true",
                   help="attach per-row wall-clock times to the document")
    _common_flags(p)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("kernel", help="extract a Frobenius kernel")
    p.add_argument("--group", required=True, help="catalog name or spec file")
    p.add_argument("--subgroup", required=True,
                   help="distinguished name or comma-separated generators")
    _common_flags(p)
    p.set_defaults(func=_cmd_kernel)

    p = sub.add_parser("catalog", help="list the built-in groups")
    p.add_argument("--tags", action="store_true", help="show tags")
    p.set_defaults(func=_cmd_catalog)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, sys.stdout)
    except (InvalidInput, ParseError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2
    except BoundExceeded as exc:
        sys.stderr.write("bound exceeded: %s\n" % exc)
        return 3


if __name__ == "__main__":
    sys.exit(main())
