"""CLI entry point for the kneser-defects command."""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from typing import Any

from kneser_defects import (
    KneserDefectsError,
    __version__,
    get_log_level,
    set_default_budget,
)
from kneser_defects.chromatic import chromatic_number_exact
from kneser_defects.constructions import (
    Thm2Params,
    Thm3Params,
    complete_uniform,
    thm2_family,
    thm3_family,
)
from kneser_defects.defect import DefectResult, cd_exact, ecd_exact
from kneser_defects.harness import claims
from kneser_defects.harness.report import (
    VerificationReport,
    key_value_table,
    load_report,
    print_table,
    report_table,
    save_report,
)
from kneser_defects.hypergraph import Hypergraph, emit_hypergraph, parse_hypergraph, read_hypergraph, write_hypergraph
from kneser_defects.kneser import KneserSpec, build_kneser

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INCONCLUSIVE = 2


def configure_logging(verbosity: int) -> None:
    """Log to stderr; -v means INFO, -vv means DEBUG, otherwise KNESER_DEFECTS_LOG_LEVEL."""
    if verbosity >= 2:
        level = "DEBUG"
    elif verbosity == 1:
        level = "INFO"
    else:
        level = get_log_level()
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )


def _read_input(path: str) -> Hypergraph:
    if path == "-":
        return parse_hypergraph(sys.stdin.read())
    return read_hypergraph(path)


def _write_output(h: Hypergraph, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(emit_hypergraph(h).decode())
    else:
        write_hypergraph(h, path)


def _print_json(obj: Any) -> None:
    print(json.dumps(obj, indent=2))


def _emit_report(report: VerificationReport, args: argparse.Namespace) -> int:
    if getattr(args, "output", None):
        save_report(report, args.output)
    if args.json:
        print(report.dumps())
    else:
        print_table(report_table(report))
    return report.exit_code()


def _defect_output(name: str, result: DefectResult, args: argparse.Namespace) -> int:
    obj = {"measure": name, "r": result.r, "s": result.s, **result.to_json()}
    if args.json:
        _print_json(obj)
    else:
        cert = obj["certificate"]
        print_table(key_value_table(f"{name}^{result.r}(F,{result.s})", {
            "value": result.value,
            "bounds": [result.lower_bound, result.upper_bound],
            "nodes": result.nodes_explored,
            "prunes": result.prunes,
            "X0": cert["x0"],
            "parts": cert["parts"],
        }))
    return EXIT_OK if result.conclusive else EXIT_INCONCLUSIVE


def cmd_gen(args: argparse.Namespace) -> int:
    if args.family == "complete":
        h = complete_uniform(args.n, args.k)
    elif args.family == "thm2":
        h = thm2_family(Thm2Params(l=args.l, s=args.s, n=args.n))
    else:
        h = thm3_family(Thm3Params(k=args.k, s=args.s))
    _write_output(h, args.output)
    return EXIT_OK


def cmd_kneser(args: argparse.Namespace) -> int:
    f = _read_input(args.input)
    _write_output(build_kneser(f, KneserSpec(r=args.r, s=args.s)), args.output)
    return EXIT_OK


def cmd_chi(args: argparse.Namespace) -> int:
    h = _read_input(args.input)
    result = chromatic_number_exact(h)
    if args.json:
        _print_json(result.to_json())
    else:
        print_table(key_value_table("chromatic number", {
            "chi": result.chi,
            "bounds": [result.lower_bound, result.upper_bound],
            "nodes": result.nodes_explored,
            "prunes": result.prunes,
            "witness": [c + 1 for c in result.witness.colors],
        }))
    return EXIT_OK if result.conclusive else EXIT_INCONCLUSIVE


def cmd_cd(args: argparse.Namespace) -> int:
    return _defect_output("cd", cd_exact(_read_input(args.input), args.r, args.s), args)


def cmd_ecd(args: argparse.Namespace) -> int:
    return _defect_output("ecd", ecd_exact(_read_input(args.input), args.r, args.s), args)


def cmd_verify(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    if args.check == "paper":
        report = claims.reproduce_paper(args.grid, jobs=args.jobs)
    elif args.check == "aj":
        f = _read_input(args.input)
        claim = claims.check_aj_bound(f, args.r, args.s)
        report = claims.single_claim_report(
            claim, {"input": args.input, "r": args.r, "s": args.s}, started)
    else:
        f = _read_input(args.input)
        expect = None
        if args.expect:
            sides = ("cd", "ecd") if args.side == "both" else (args.side,)
            expect = {side: args.expect for side in sides}
        claim = claims.check_strengthened_bound(f, args.r, args.s, args.x, expect=expect)
        report = claims.single_claim_report(
            claim, {"input": args.input, "r": args.r, "s": args.s, "x": args.x}, started)
    return _emit_report(report, args)


def cmd_fuzz(args: argparse.Namespace) -> int:
    report = claims.fuzz_corpus(
        seed=args.seed,
        trials=args.trials,
        max_n=args.max_n,
        max_edges=args.max_edges,
        jobs=args.jobs,
    )
    return _emit_report(report, args)


def cmd_board(args: argparse.Namespace) -> int:
    from kneser_defects.harness import tui
    tui.run_app(load_report(args.report))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, metavar="NODES",
                        help="Search node budget per solver call (default: KNESER_DEFECTS_BUDGET or unbounded)")
    common.add_argument("--verbose", "-v", action="count", default=0,
                        help="Log search progress to stderr (-vv for debug detail)")

    json_flag = argparse.ArgumentParser(add_help=False)
    json_flag.add_argument("--json", action="store_true", help="Emit one JSON object instead of a table")

    read_flag = argparse.ArgumentParser(add_help=False)
    read_flag.add_argument("--input", "-i", required=True, metavar="FILE",
                           help="Hypergraph file ('-' for stdin)")

    r_s_flags = argparse.ArgumentParser(add_help=False)
    r_s_flags.add_argument("--r", type=int, required=True, help="Number of parts / Kneser uniformity")
    r_s_flags.add_argument("--s", type=int, required=True, help="Intersection threshold")

    write_flag = argparse.ArgumentParser(add_help=False)
    write_flag.add_argument("--output", "-o", metavar="FILE", help="Output file (default: stdout)")

    parser = argparse.ArgumentParser(
        prog="kneser-defects",
        description="Generalized Kneser hypergraphs, exact chromatic numbers and colorability defects",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="Generate a hypergraph family")
    gen_sub = gen.add_subparsers(dest="family", required=True)
    p = gen_sub.add_parser("complete", help="K_n^k, all k-subsets of [n]", parents=[common, write_flag])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p = gen_sub.add_parser("thm2", help="n-subsets of [2n+l-2] extended by a common s-set",
                           parents=[common, write_flag])
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p = gen_sub.add_parser("thm3", help="k disjoint edges of size s+1 (s even)", parents=[common, write_flag])
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    gen.set_defaults(handler=cmd_gen)

    p = sub.add_parser("kneser", help="Build KG^r(F,s)", parents=[common, read_flag, r_s_flags, write_flag])
    p.set_defaults(handler=cmd_kneser)

    p = sub.add_parser("chi", help="Exact weak chromatic number", parents=[common, read_flag, json_flag])
    p.set_defaults(handler=cmd_chi)

    p = sub.add_parser("cd", help="Exact colorability defect cd^r(F,s)",
                       parents=[common, read_flag, r_s_flags, json_flag])
    p.set_defaults(handler=cmd_cd)

    p = sub.add_parser("ecd", help="Exact equitable colorability defect ecd^r(F,s)",
                       parents=[common, read_flag, r_s_flags, json_flag])
    p.set_defaults(handler=cmd_ecd)

    report_flags = argparse.ArgumentParser(add_help=False)
    report_flags.add_argument("--output", "-o", metavar="FILE", help="Also save the JSON report to FILE")

    verify = sub.add_parser("verify", help="Check inequalities and reproduce the family values")
    verify_sub = verify.add_subparsers(dest="check", required=True)
    verify_sub.add_parser("aj", help="chi(KG^r(F,s)) >= ceil(ecd^r(F,floor(s/2))/(r-1))",
                          parents=[common, read_flag, r_s_flags, json_flag, report_flags])
    p = verify_sub.add_parser("strengthened", help="The same bound with cd/ecd at a larger threshold x",
                              parents=[common, read_flag, r_s_flags, json_flag, report_flags])
    p.add_argument("--x", type=int, required=True, help="Threshold for cd/ecd, 0 <= x <= s")
    p.add_argument("--expect", choices=["holds", "violated"],
                   help="Expected outcome; the claim fails if it differs")
    p.add_argument("--side", choices=["cd", "ecd", "both"], default="both",
                   help="Which bound --expect applies to (default: both)")
    p = verify_sub.add_parser("paper", help="Recompute the family values on a parameter grid",
                              parents=[common, json_flag, report_flags])
    p.add_argument("--grid", choices=sorted(claims.GRIDS), default="small")
    p.add_argument("--jobs", type=int, default=1, help="Worker processes (default: 1)")
    verify.set_defaults(handler=cmd_verify)

    p = sub.add_parser("fuzz", help="Check the general inequalities on random hypergraphs",
                       parents=[common, json_flag, report_flags])
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--max-edges", type=int, default=8)
    p.add_argument("--jobs", type=int, default=1, help="Worker processes (default: 1)")
    p.set_defaults(handler=cmd_fuzz)

    p = sub.add_parser("board", help="Browse a saved report interactively", parents=[common])
    p.add_argument("report", help="Report JSON written by verify/fuzz -o")
    p.set_defaults(handler=cmd_board)

    return parser


def main(argv: list[str] | None = None) -> int:
    """Entry point for the kneser-defects command."""
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)

    try:
        if args.budget is not None:
            set_default_budget(args.budget)
        return args.handler(args)
    except KneserDefectsError as e:
        print(json.dumps({"error": str(e)}), file=sys.stderr)
        return EXIT_FAIL
    except OSError as e:
        print(json.dumps({"error": str(e)}), file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
