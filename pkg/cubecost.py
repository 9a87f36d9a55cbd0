"""
Cube Cost - Command line interface for the hypercube distinguishing cost.
Results go to standard output, diagnostics to standard error.
"""

import argparse
import json
import logging
import os
import re
import sys
from dataclasses import replace
from typing import List, Optional

import cube_io
from Distinguish.complement import column_complement, row_complement
from Distinguish.construct import asymmetric_witness
from Distinguish.cost import CostTable, det_qn
from Distinguish.errors import CubeCostError, OutOfRange
from Distinguish.hypercube import aut_preservers, distinguishing_class, is_distinguishing_class
from Distinguish.limits import DEFAULT_LIMITS, Limits
from Distinguish.symmetry import exhaustive_nonexistence, find_symmetry, oracle_agreement
from plan_graph import create_plan_graph

log = logging.getLogger("cubecost")

CSV_HEADER = "n,rho,det"
EXIT_SYMMETRIC = 1
USAGE_ERROR = 2
DECIMAL = re.compile(r"[0-9]+")


def _decimal(text: str) -> int:
    """Non-negative decimal integer of any size; no signs, hex or exponents."""
    if not DECIMAL.fullmatch(text):
        raise argparse.ArgumentTypeError(f"expected a decimal integer, got {text!r}")
    return int(text)


def _emit(target: str, text: str):
    """Write a result to a file, or to standard output for "-"."""
    cube_io.write_text(target, text)


def cmd_rho(args, limits: Limits, table: CostTable) -> int:
    """
    Print rho(Q_N).

    Args:
        args: Parsed arguments with ``n``
        limits: Guards from the global flags
        table: Cost memo, possibly loaded from --cache

    Returns:
        Exit code
    """
    _emit("-", f"{table.rho(args.n)}\n")
    return 0


def cmd_nu(args, limits: Limits, table: CostTable) -> int:
    """Print nu_M."""
    _emit("-", f"{table.nu(args.m)}\n")
    return 0


def cmd_det(args, limits: Limits, table: CostTable) -> int:
    """Print Det(Q_N)."""
    _emit("-", f"{det_qn(args.n)}\n")
    return 0


def cmd_interval(args, limits: Limits, table: CostTable) -> int:
    """Print "LO HI", the N with rho(Q_N) = M."""
    lo, hi = table.rho_interval(args.m)
    _emit("-", f"{lo} {hi}\n")
    return 0


def cmd_segments(args, limits: Limits, table: CostTable) -> int:
    """Print one "LO HI NU" line per closed-form segment up to rho = M."""
    lines = [f"{lo} {hi} {shift}\n" for lo, hi, shift in table.closed_form_segments(args.m)]
    _emit("-", "".join(lines))
    return 0


def cmd_table(args, limits: Limits, table: CostTable) -> int:
    """
    Write n, rho and Det for every n in [A, B] as CSV or JSON.

    Raises:
        OutOfRange: If the range is empty
    """
    if args.n_to < args.n_from:
        raise OutOfRange(f"empty range [{args.n_from}, {args.n_to}]")
    rows = [(n, table.rho(n), det_qn(n)) for n in range(args.n_from, args.n_to + 1)]
    if args.format == "json":
        text = json.dumps([{"n": n, "rho": r, "det": d} for n, r, d in rows], indent=2) + "\n"
    else:
        text = CSV_HEADER + "\n" + "".join(f"{n},{r},{d}\n" for n, r, d in rows)
    _emit(args.output, text)
    return 0


def cmd_witness(args, limits: Limits, table: CostTable) -> int:
    """
    Write an asymmetric M x N matrix. The plan goes to standard error with
    --plan and to a DOT file with --plan-dot.
    """
    matrix, plan = asymmetric_witness(args.m, args.n, limits, table, verify=args.verify)
    _emit(args.output, cube_io.format_matrix(matrix, as_json=args.json))
    if args.plan:
        sys.stderr.write(cube_io.format_plan(plan) + "\n")
    if args.plan_dot:
        cube_io.write_text(args.plan_dot, create_plan_graph(plan))
    return 0


def cmd_check(args, limits: Limits, table: CostTable) -> int:
    """
    Decide whether the matrix in FILE is asymmetric.

    Returns:
        0 when asymmetric, 1 with the certificate printed otherwise
    """
    matrix = cube_io.load_matrix(args.file)
    symmetry = find_symmetry(matrix, limits)
    if symmetry is None:
        _emit("-", "asymmetric\n")
        return 0
    _emit("-", json.dumps(symmetry.to_dict()) + "\n")
    return EXIT_SYMMETRIC


def cmd_complement(args, limits: Limits, table: CostTable) -> int:
    """Write the column-class (--cols) or row (--rows) complement of FILE."""
    matrix = cube_io.load_matrix(args.file)
    result = column_complement(matrix, limits) if args.cols else row_complement(matrix, limits)
    _emit(args.output, cube_io.format_matrix(result, as_json=args.json))
    return 0


def cmd_oracle_none(args, limits: Limits, table: CostTable) -> int:
    """
    Enumerate every M x N matrix.

    Returns:
        0 when none is asymmetric, 1 when one is
    """
    if exhaustive_nonexistence(args.m, args.n, limits):
        _emit("-", f"no asymmetric {args.m}x{args.n} matrix\n")
        return 0
    _emit("-", f"an asymmetric {args.m}x{args.n} matrix exists\n")
    return 1


def cmd_oracle_agree(args, limits: Limits, table: CostTable) -> int:
    """Compare the search with brute force on random matrices seeded by --seed."""
    disagreements = oracle_agreement(args.samples, args.seed, args.m, args.n, limits)
    _emit("-", f"{args.samples - len(disagreements)} of {args.samples} agree\n")
    for matrix in disagreements:
        log.error("disagreement on %s", " ".join(matrix.to_strings()))
    return 0 if not disagreements else 1


def cmd_cube_verify(args, limits: Limits, table: CostTable) -> int:
    """
    Judge a label class by its matrix and, with --group, by the
    automorphisms of Q_n as well.

    Returns:
        0 when distinguishing, 1 when not, 5 when the two verdicts differ
    """
    label_class = cube_io.load_label_class(args.file, args.dim)
    verdict = is_distinguishing_class(label_class, limits)
    _emit("-", "distinguishing\n" if verdict else "not distinguishing\n")
    if args.group:
        preservers = aut_preservers(label_class, limits)
        _emit("-", f"{len(preservers)} automorphisms preserve the class\n")
        if (len(preservers) == 1) != verdict:
            log.error("matrix verdict and automorphism count disagree")
            return 5
    return 0 if verdict else 1


def cmd_cube_witness(args, limits: Limits, table: CostTable) -> int:
    """Write a smallest distinguishing class of Q_N."""
    label_class = distinguishing_class(args.n, limits, table)
    _emit(args.output, cube_io.format_label_class(label_class, as_json=args.json))
    return 0


def build_parser() -> argparse.ArgumentParser:
    """Global flags plus one subparser per command, each bound to its cmd_* handler."""
    parser = argparse.ArgumentParser(
        prog="cubecost",
        description="Cost of 2-distinguishing the hypercube and asymmetric binary matrices.",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="INFO with -v, DEBUG with -vv")
    parser.add_argument("--max-exhaustive-bits", type=int, default=DEFAULT_LIMITS.max_exhaustive_bits,
                        metavar="K", help="largest m*n the exhaustive oracle accepts")
    parser.add_argument("--search-budget", type=int, default=DEFAULT_LIMITS.search_budget,
                        metavar="NODES", help="node limit for one symmetry search")
    parser.add_argument("--workers", type=int, default=DEFAULT_LIMITS.workers,
                        help="processes for exhaustive enumeration")
    parser.add_argument("--progress", action="store_true", help="show progress bars")
    parser.add_argument("--cache", metavar="FILE", help="cost memo file, read and rewritten")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True

    rho = commands.add_parser("rho", help="rho(Q_N)")
    rho.add_argument("n", type=_decimal, metavar="N")
    rho.set_defaults(handler=cmd_rho)

    nu = commands.add_parser("nu", help="fewest columns of an asymmetric M-row matrix")
    nu.add_argument("m", type=_decimal, metavar="M")
    nu.set_defaults(handler=cmd_nu)

    det = commands.add_parser("det", help="determining number of Q_N")
    det.add_argument("n", type=_decimal, metavar="N")
    det.set_defaults(handler=cmd_det)

    interval = commands.add_parser("interval", help="the N with rho(Q_N) = M")
    interval.add_argument("m", type=_decimal, metavar="M")
    interval.set_defaults(handler=cmd_interval)

    segments = commands.add_parser("segments", help="closed-form ranges up to rho = M")
    segments.add_argument("m", type=_decimal, metavar="M")
    segments.set_defaults(handler=cmd_segments)

    table = commands.add_parser("table", help="rho and Det for a range of N")
    table.add_argument("--n-from", type=_decimal, required=True, metavar="A")
    table.add_argument("--n-to", type=_decimal, required=True, metavar="B")
    table.add_argument("--format", choices=("csv", "json"), default="csv")
    table.add_argument("-o", "--output", default="-", metavar="FILE")
    table.set_defaults(handler=cmd_table)

    witness = commands.add_parser("witness", help="asymmetric M x N matrix")
    witness.add_argument("m", type=_decimal, metavar="M")
    witness.add_argument("n", type=_decimal, metavar="N")
    witness.add_argument("--verify", action="store_true", help="re-check the result")
    witness.add_argument("--plan", action="store_true", help="print the construction plan to stderr")
    witness.add_argument("--plan-dot", metavar="FILE", help="write the plan as Graphviz DOT")
    witness.add_argument("--json", action="store_true")
    witness.add_argument("-o", "--output", default="-", metavar="FILE")
    witness.set_defaults(handler=cmd_witness)

    check = commands.add_parser("check", help="decide whether a matrix is asymmetric")
    check.add_argument("file", metavar="FILE")
    check.set_defaults(handler=cmd_check)

    complement = commands.add_parser("complement", help="column-class or row complement")
    side = complement.add_mutually_exclusive_group(required=True)
    side.add_argument("--cols", action="store_true")
    side.add_argument("--rows", action="store_true")
    complement.add_argument("file", metavar="FILE")
    complement.add_argument("--json", action="store_true")
    complement.add_argument("-o", "--output", default="-", metavar="FILE")
    complement.set_defaults(handler=cmd_complement)

    oracle = commands.add_parser("oracle", help="brute-force checks")
    oracles = oracle.add_subparsers(dest="oracle", metavar="ORACLE")
    oracles.required = True
    none = oracles.add_parser("none", help="is every M x N matrix symmetric?")
    none.add_argument("m", type=_decimal, metavar="M")
    none.add_argument("n", type=_decimal, metavar="N")
    none.set_defaults(handler=cmd_oracle_none)
    agree = oracles.add_parser("agree", help="search against brute force on random matrices")
    agree.add_argument("m", type=_decimal, metavar="M", help="largest row count")
    agree.add_argument("n", type=_decimal, metavar="N", help="largest column count")
    agree.add_argument("--samples", type=_decimal, default=200)
    agree.set_defaults(handler=cmd_oracle_agree)

    cube = commands.add_parser("cube", help="vertex sets of Q_n")
    cubes = cube.add_subparsers(dest="cube", metavar="ACTION")
    cubes.required = True
    verify = cubes.add_parser("verify", help="is a label class distinguishing?")
    verify.add_argument("file", metavar="FILE")
    verify.add_argument("--dim", type=_decimal, required=True, metavar="n")
    verify.add_argument("--group", action="store_true", help="also enumerate automorphisms")
    verify.set_defaults(handler=cmd_cube_verify)
    cube_witness = cubes.add_parser("witness", help="a smallest distinguishing class of Q_N")
    cube_witness.add_argument("n", type=_decimal, metavar="N")
    cube_witness.add_argument("--json", action="store_true")
    cube_witness.add_argument("-o", "--output", default="-", metavar="FILE")
    cube_witness.set_defaults(handler=cmd_cube_witness)

    return parser


def _configure_logging(verbosity: int):
    """WARNING by default, INFO with -v, DEBUG with -vv; always on standard error."""
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s: %(message)s", force=True)


def run(argv: Optional[List[str]] = None) -> int:
    """
    Parse ``argv`` and run one subcommand.

    Returns:
        0 on success, 1 for a negative verdict, 2 for usage errors,
        3 for out-of-range input, 4 when a budget is exceeded and
        5 when a result fails its own check
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_request:
        return exit_request.code if isinstance(exit_request.code, int) else USAGE_ERROR
    _configure_logging(args.verbose)

    try:
        limits = replace(
            DEFAULT_LIMITS,
            search_budget=args.search_budget,
            max_exhaustive_bits=args.max_exhaustive_bits,
            workers=args.workers,
            progress=args.progress,
        )
        table = CostTable()
        if args.cache and os.path.exists(args.cache):
            table = cube_io.load_cost_cache(args.cache)
        code = args.handler(args, limits, table)
        if args.cache:
            cube_io.save_cost_cache(args.cache, table)
        return code
    except CubeCostError as error:
        log.error("%s", error)
        return error.exit_code
    except (TypeError, ValueError) as error:
        log.error("%s", error)
        return USAGE_ERROR
    except OSError as error:
        log.error("%s", error)
        return USAGE_ERROR


def main() -> int:
    """Entry point for the cubecost script."""
    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
