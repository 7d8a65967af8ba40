"""beatty-dcs: verify, decompose and search disjoint covers by rational Beatty sequences.

Exit codes: 0 success, 1 semantic failure (not a DCS), 2 input error,
3 search budget exhausted (a partial report is still printed).
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import documents
from .core import member_direct, verify_dcs
from .correspondence import NotACoverError, block_order, blocks_from_system, gamma_normalize, reorder
from .documents import DocumentError
from .search import DEFAULT_BUDGET, SearchConfig, fraenkel_system, search_conjecture
from .tg import build_tg, c2_bounds, check_three_gap, classify_ap_structure, gap_profile

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_system(path: str):
    try:
        return documents.parse_system(_read(path))
    except DocumentError as exc:
        raise InputError(f"invalid system document: {exc}") from None


def window_check(system, window: int) -> dict:
    """Count covering sequences of every m in [-W, W] by direct floor search."""
    uncovered = doubled = 0
    first = None
    for m in range(-window, window + 1):
        hits = sum(member_direct(s.p, s.q, s.beta, m) for s in system.specs)
        if hits != 1:
            if hits == 0:
                uncovered += 1
            else:
                doubled += 1
            if first is None:
                first = m
    return {"window": window, "uncovered": uncovered, "double_covered": doubled,
            "first_violation": first}


def cmd_verify(args, out) -> int:
    system, _ = _load_system(args.file)
    cert = verify_dcs(system)
    doc = documents.certificate_doc(cert)
    code = EXIT_OK if cert.ok else EXIT_FAIL
    if args.window is not None:
        wc = window_check(system, args.window)
        violations = wc["uncovered"] + wc["double_covered"]
        full_period = 2 * args.window + 1 >= cert.p
        consistent = not (cert.ok and violations) and not (not cert.ok and full_period and not violations)
        wc["consistent"] = consistent
        doc["window_check"] = wc
        if not consistent:
            code = EXIT_FAIL
    out.write(documents.dumps(doc))
    return code


def cmd_fraenkel(args, out) -> int:
    try:
        system = fraenkel_system(args.n)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    out.write(documents.dumps(documents.system_doc(system, name=f"fraenkel-{args.n}",
                                                   source="fraenkel construction")))
    return EXIT_OK


def cmd_blocks(args, out) -> int:
    system, _ = _load_system(args.file)
    if not system.equal_numerator:
        raise InputError("blocks need a common numerator")
    try:
        partition = blocks_from_system(system)
    except NotACoverError as exc:
        doc = documents.certificate_doc(exc.certificate)
        out.write(documents.dumps(doc))
        return EXIT_FAIL
    indices = list(range(len(system)))
    if args.normalize:
        indices = block_order(partition)
        partition = gamma_normalize(reorder(partition, indices))
    qs = [system[i].q for i in indices]
    out.write(documents.dumps(documents.partition_doc(partition, indices, qs)))
    return EXIT_OK


def cmd_tg(args, out) -> int:
    try:
        tg = build_tg(args.a, args.d, args.q, args.p)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    prof = gap_profile(tg)
    c2 = c2_error = None
    if args.q1 is not None:
        try:
            c2 = c2_bounds(tg, args.q1, prof)
        except ValueError as exc:
            c2_error = str(exc)
    doc = documents.tg_doc(tg, prof, check_three_gap(tg, prof), classify_ap_structure(tg, prof),
                           c2, c2_error, args.q1)
    out.write(documents.dumps(doc))
    return EXIT_OK


def cmd_search(args, out) -> int:
    try:
        cfg = SearchConfig(args.n, args.pmin, args.pmax,
                           require_distinct=not args.allow_multiplicity,
                           workers=args.workers, budget=args.budget)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    report = search_conjecture(cfg)
    out.write(documents.dumps(documents.search_doc(report)))
    return EXIT_OK if report.complete else EXIT_BUDGET


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="beatty-dcs", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check that a system partitions the integers")
    p.add_argument("file", help="system document, or - for stdin")
    p.add_argument("--window", type=int, metavar="W",
                   help="cross-check against direct floor enumeration over [-W, W]")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fraenkel", help="print the Fraenkel system for n sequences")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_fraenkel)

    p = sub.add_parser("blocks", help="print the residue-block partition of Z_p")
    p.add_argument("file", help="system document, or - for stdin")
    p.add_argument("--normalize", action="store_true",
                   help="apply x -> -q_1 (x - b_1) so the longest block becomes {0..q_1-1}")
    p.set_defaults(func=cmd_blocks)

    p = sub.add_parser("tg", help="analyse the TG-sequence {a + i d mod p : i < q}")
    for name in ("a", "d", "q", "p"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--q1", type=int, help="evaluate the gap-counting bound against q1")
    p.set_defaults(func=cmd_tg)

    p = sub.add_parser("search", help="exhaustive search for equal-numerator DCS")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--pmin", type=int, default=None)
    p.add_argument("--pmax", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--allow-multiplicity", action="store_true")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                   help="maximum elementary cover operations (default 10^9)")
    p.set_defaults(func=cmd_search)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if getattr(args, "pmin", 0) is None:
        args.pmin = args.n
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"beatty-dcs: {exc}", file=sys.stderr)
        return EXIT_INPUT


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
