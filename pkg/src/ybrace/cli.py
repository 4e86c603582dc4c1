"""Command line front end.

    ybrace classify --group pq --p 7 --q 3
    ybrace verify-theorems [--threads 8]
    ybrace enumerate --braces --group D12
    ybrace enumerate --solutions --n 4
    ybrace conjecture --n 3 5 6 9

Exit codes: 0 ok, 1 a verification check failed, 2 bad parameters,
3 resource bound, 4 conjecture counterexample, 5 internal consistency failure.
"""
from __future__ import annotations

import argparse
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import __version__
from .config import configured
from .construct import GROUP_KINDS, classify_group
from .enumerate import all_solutions, braces_on_group, conjecture_check
from .errors import (
    ConstructionError,
    DomainError,
    InternalConsistencyError,
    ResourceBoundError,
    UnsupportedGroupError,
    UsageError,
)
from .groups import AbelianGroup, abelian_group_table, cyclic_group, dihedral_group, small_groups
from .serialize import dump_brace_census, dump_solution, dump_solution_census
from .verify import (
    DEFAULT_ABELIAN_P2Q,
    DEFAULT_CYCLIC_P2Q,
    DEFAULT_DIHEDRAL_2P2,
    DEFAULT_DIHEDRAL_4P,
    DEFAULT_PQ,
    DEFAULT_SEMIDIRECT_P2Q,
    verify_theorems,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_PARAMS = 2
EXIT_RESOURCE = 3
EXIT_COUNTEREXAMPLE = 4
EXIT_INTERNAL = 5


def parse_group(name: str):
    """``C12``, ``D12`` (order 12), ``C2xC6`` or any name listed by ``small_groups``."""
    if m := re.fullmatch(r"C(\d+)", name):
        return cyclic_group(int(m.group(1)))
    if m := re.fullmatch(r"D(\d+)", name):
        order = int(m.group(1))
        if order % 2 or order < 2:
            raise DomainError(f"dihedral groups have even order, got {name}")
        return dihedral_group(order // 2)
    if re.fullmatch(r"C\d+(xC\d+)+", name):
        return abelian_group_table(AbelianGroup(tuple(int(k) for k in name[1:].split("xC"))))
    for n in range(1, 16):
        for label, G in small_groups(n):
            if label == name:
                return G
    raise UsageError(f"unrecognised group name {name!r}")


def _pairs(text: str) -> tuple[tuple[int, int], ...]:
    """``"3,2 5,2"`` -> ((3, 2), (5, 2))."""
    try:
        return tuple(tuple(int(v) for v in item.split(",")) for item in text.split())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected pairs like '3,2 5,2', got {text!r}")


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.replace(",", " ").split())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers, got {text!r}")


def cmd_classify(args, out) -> int:
    census = classify_group(args.group, args.p, args.q)
    print("brace\tgenerating_orbits\tpairs\tclasses\tsizes", file=out)
    for row in census.rows():
        sizes = ",".join(map(str, row["sizes"])) or "-"
        print(f"{row['brace']}\t{row['generating_orbits']}\t{row['pairs']}\t{row['classes']}\t{sizes}", file=out)
    sizes = ",".join(map(str, sorted(census.sizes))) or "-"
    print(f"total\t{census.total}\tsizes\t{sizes}", file=out)
    return EXIT_OK


def cmd_verify_theorems(args, out) -> int:
    report = verify_theorems(
        threads=args.threads,
        pq=args.pairs,
        cyclic_p2q=args.cyclic_p2q,
        abelian_p2q=args.abelian_p2q,
        dihedral_2p2=args.dihedral_2p2,
        dihedral_4p=args.dihedral_4p,
        semidirect_p2q=args.semidirect_p2q,
    )
    text = report.render()
    out.write(text)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


def cmd_enumerate(args, out) -> int:
    if args.braces:
        if not args.group:
            raise UsageError("--braces needs --group")
        census = braces_on_group(parse_group(args.group))
        text = dump_brace_census(census)
        target = args.output or f"braces-{args.group}.ybe"
        print(f"group\t{census.group}\tbraces\t{census.count}", file=out)
        for name, k in census.by_additive.items():
            print(f"additive\t{name}\t{k}", file=out)
    else:
        if args.n is None:
            raise UsageError("--solutions needs --n")
        census = all_solutions(args.n, args.indecomposable)
        text = dump_solution_census(census)
        suffix = "-indecomposable" if args.indecomposable else ""
        target = args.output or f"solutions-n{args.n}{suffix}.ybe"
        print(f"n\t{census.n}\tsolutions\t{census.count}", file=out)
        for name, k in census.counts().items():
            print(f"group\t{name}\t{k}", file=out)
    Path(target).write_text(text, encoding="utf-8")
    print(f"written\t{target}", file=out)
    return EXIT_OK


def cmd_conjecture(args, out) -> int:
    ns = list(args.n)
    if args.threads > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            reports = list(pool.map(conjecture_check, ns))
    else:
        reports = [conjecture_check(n) for n in ns]
    code = EXIT_OK
    print("n\tstatus\tbraces\tsizes\tdichotomy\tnote", file=out)
    for r in reports:
        sizes = ",".join(map(str, r.sizes)) or "-"
        status = "skipped(bound)" if r.status == "skipped" else r.status
        print(f"{r.n}\t{status}\t{r.braces}\t{sizes}\t{'ok' if r.dichotomy else 'violated'}\t{r.note or '-'}", file=out)
        if r.counterexample is not None:
            out.write(dump_solution(r.counterexample))
            code = EXIT_COUNTEREXAMPLE
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ybrace", description="Braces and indecomposable involutive Yang-Baxter solutions.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--bound-subgroups", type=int, default=None, help="largest group whose subgroups are enumerated")
    parser.add_argument("--bound-holomorph", type=int, default=None, help="largest holomorph (or automorphism set) built")
    parser.add_argument("--threads", type=int, default=1, help="worker threads; output does not depend on it")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify solutions for a multiplicative group")
    p.add_argument("--group", required=True, choices=sorted(GROUP_KINDS))
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify-theorems", help="run the verification sweep and print a TSV report")
    p.add_argument("--pairs", type=_pairs, default=DEFAULT_PQ, help="(p,q) pairs for groups of order pq")
    p.add_argument("--cyclic-p2q", type=_pairs, default=DEFAULT_CYCLIC_P2Q)
    p.add_argument("--abelian-p2q", type=_pairs, default=DEFAULT_ABELIAN_P2Q)
    p.add_argument("--semidirect-p2q", type=_pairs, default=DEFAULT_SEMIDIRECT_P2Q)
    p.add_argument("--dihedral-2p2", type=_ints, default=DEFAULT_DIHEDRAL_2P2)
    p.add_argument("--dihedral-4p", type=_ints, default=DEFAULT_DIHEDRAL_4P)
    p.add_argument("--output", help="also write the report to this file")
    p.set_defaults(func=cmd_verify_theorems)

    p = sub.add_parser("enumerate", help="brute-force censuses of braces or solutions")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--braces", action="store_true")
    mode.add_argument("--solutions", action="store_true")
    p.add_argument("--group", help="multiplicative group, e.g. D12, C12, C2xC6")
    p.add_argument("--n", type=int, help="solution size")
    p.add_argument("--indecomposable", action="store_true")
    p.add_argument("--output", help="census file (default derived from the target)")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("conjecture", help="look for dihedral solutions of size n")
    p.add_argument("--n", type=int, nargs="+", required=True)
    p.set_defaults(func=cmd_conjecture)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        with configured(args.bound_subgroups, args.bound_holomorph):
            return args.func(args, out)
    except (DomainError, UsageError, UnsupportedGroupError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_PARAMS
    except ResourceBoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (InternalConsistencyError, ConstructionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
