"""Command-line front end.

Exit codes: 0 success, 1 a verification claim failed, 2 usage or input
error, 3 a size or search guard refused the request.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import ackermann, claims, coeffs, construct, containment, decompose, extremal
from .patterns import FamilyTooLarge, parse_pattern_spec
from .seqcore import (
    BlockedSequence,
    format_blocked,
    format_sequence,
    looks_blocked,
    parse_blocked,
    parse_sequence,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _read_any(path: str):
    text = _read_text(path).strip()
    return parse_blocked(text) if looks_blocked(text) else parse_sequence(text)


def _read_blocked(path: str) -> BlockedSequence:
    text = _read_text(path).strip()
    if not looks_blocked(text):
        raise UsageError("the tree command needs a blocked sequence, e.g. (1 2)(2 3)")
    return parse_blocked(text)


def _write(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")


# ---------------------------------------------------------------- commands


def cmd_construct(args) -> int:
    kind = args.kind
    if kind == "t_rho":
        params = (_need(args.rho, "--rho"), _need(args.i, "--i"), _need(args.j, "--j"))
    elif kind == "u_s":
        params = (_need(args.s, "--s"), _need(args.i, "--i"), _need(args.j, "--j"))
    else:
        params = (_need(args.pi, "--pi"), _need(args.i, "--i"), _need(args.j, "--j"))
    if args.estimate:
        print(json.dumps(construct.size_estimate(kind, *params).as_dict()))
        return EXIT_OK
    bs = construct.build(kind, *params, guard=args.size_cap)
    if args.stats:
        print(json.dumps(construct.stats_of(bs).as_dict()))
        return EXIT_OK
    _write(format_blocked(bs), args.out)
    return EXIT_OK


def _need(value, flag):
    if value is None:
        raise UsageError(f"{flag} is required for this construction")
    return value


def cmd_check(args) -> int:
    host = _read_any(args.input)
    flat = host.flatten() if isinstance(host, BlockedSequence) else host
    if args.ds_order:
        print(containment.ds_order(flat))
        return EXIT_OK
    if args.pattern is None:
        raise UsageError("--pattern is required unless --ds-order is given")
    family = parse_pattern_spec(args.pattern)
    if family.kind == "singleton":
        pat = family.explicit[0]
        fn = containment.embeds_order_iso if args.order_iso else containment.embeds
        emb = fn(pat, flat)
        if emb is None:
            print("NO")
        else:
            print("YES " + " ".join(str(p + 1) for p in emb.positions))
        return EXIT_OK
    if args.order_iso:
        raise UsageError("--order-iso needs a single pattern")
    print("NO" if containment.avoids_family(flat, family) else "YES")
    return EXIT_OK


def cmd_alpha(args) -> int:
    print(ackermann.alpha(args.n, args.m))
    return EXIT_OK


def cmd_ack(args) -> int:
    v = ackermann.ack(args.i, args.j)
    if args.inverse is not None:
        print(ackermann.row_inverse(args.i, args.inverse))
    else:
        print(v)
    return EXIT_OK


def cmd_coeffs(args) -> int:
    if args.table:
        rows = coeffs.table(args.kind, args.s, args.i, args.r)
        for row in rows:
            print(" ".join(str(c.value) for c in row))
        return EXIT_OK
    if args.check:
        c = coeffs.closed_form_check(args.kind, args.s, args.i, args.r)
        out = {k: getattr(c, k) for k in ("kind", "s", "i", "status", "expression", "expected", "bound", "holds")}
        out["value"] = str(c.value)
        for k in ("expected", "bound"):
            if out[k] is not None:
                out[k] = str(out[k])
        print(json.dumps(out))
        return EXIT_OK
    print(coeffs.coefficient(args.kind, args.s, args.i, args.r))
    return EXIT_OK


def cmd_tree(args) -> int:
    bs = _read_blocked(args.input)
    if args.ackermann is not None:
        t = decompose.ackermann_tree(bs, args.ackermann)
    else:
        t = decompose.canonical_tree(bs)
    if args.project is not None:
        p = decompose.project_tree(t, args.project)
        text = decompose.projection_to_dot(t, p)
    else:
        text = decompose.tree_to_dot(t)
    _write(text, args.dot)
    return EXIT_OK


def cmd_ex(args) -> int:
    family = parse_pattern_spec(args.pattern)
    budget = extremal.SearchBudget(args.max_length, args.max_nodes, args.time_cap)
    if args.m is not None:
        res = extremal.ex_blocked_bruteforce(family, args.n, args.m, budget)
    else:
        res = extremal.ex_bruteforce(family, args.n, args.sparse, budget)
    print(json.dumps(res.as_dict()))
    return EXIT_OK


def cmd_verify(args) -> int:
    only = None
    if args.claims:
        only = {int(x) for x in args.claims.split(",")}
    report = claims.run_all(quick=not args.full, seed=args.seed, only=only)
    print(claims.emit_report(report, "text"))
    js = claims.emit_report(report, "json")
    if args.json:
        _write(js, args.json)
    else:
        print(js)
    return report.exit_code()


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dsforge", description="Davenport-Schinzel sequence toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build t_rho, u_s, t_pi or u_pi")
    c.add_argument("--kind", required=True, choices=["t_rho", "u_s", "t_pi", "u_pi"])
    c.add_argument("--rho", type=int)
    c.add_argument("--s", type=int)
    c.add_argument("--pi", help="zig-zag pattern such as uudu")
    c.add_argument("--i", type=int)
    c.add_argument("--j", type=int)
    c.add_argument("--size-cap", type=int, help="size guard (default: DSFORGE_SIZE_CAP or 10^7)")
    c.add_argument("--stats", action="store_true", help="print stats of the built sequence as JSON")
    c.add_argument("--estimate", action="store_true", help="print predicted stats without building")
    c.add_argument("--out")
    c.set_defaults(fn=cmd_construct)

    c = sub.add_parser("check", help="pattern containment or DS order of a sequence file")
    c.add_argument("--pattern")
    c.add_argument("--in", dest="input", required=True, help="sequence file, or - for stdin")
    c.add_argument("--order-iso", action="store_true")
    c.add_argument("--ds-order", action="store_true")
    c.set_defaults(fn=cmd_check)

    c = sub.add_parser("alpha", help="inverse Ackermann alpha(n, m)")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--m", type=int, required=True)
    c.set_defaults(fn=cmd_alpha)

    c = sub.add_parser("ack", help="Ackermann entry a_{i,j}")
    c.add_argument("--i", type=int, required=True)
    c.add_argument("--j", type=int, default=1)
    c.add_argument("--inverse", type=int, metavar="M", help="print the smallest j with a_{i,j} >= M")
    c.set_defaults(fn=cmd_ack)

    c = sub.add_parser("coeffs", help="coefficient recurrences")
    c.add_argument("--kind", required=True, choices=list(coeffs.KINDS))
    c.add_argument("--s", type=int, required=True)
    c.add_argument("--i", type=int, required=True)
    c.add_argument("--r", type=int)
    c.add_argument("--check", action="store_true", help="compare with the closed form")
    c.add_argument("--table", action="store_true", help="rows s, columns 1..i")
    c.set_defaults(fn=cmd_coeffs)

    c = sub.add_parser("tree", help="derivation tree as DOT")
    c.add_argument("--in", dest="input", required=True)
    c.add_argument("--ackermann", type=int, metavar="I")
    c.add_argument("--project", type=int, metavar="SYMBOL")
    c.add_argument("--dot", help="output file (default stdout)")
    c.set_defaults(fn=cmd_tree)

    c = sub.add_parser("ex", help="exhaustive extremal search")
    c.add_argument("--pattern", required=True)
    c.add_argument("--n", type=int, required=True)
    g = c.add_mutually_exclusive_group()
    g.add_argument("--m", type=int)
    g.add_argument("--sparse", type=int)
    c.add_argument("--max-nodes", type=int, help="default: DSFORGE_NODE_CAP")
    c.add_argument("--max-length", type=int)
    c.add_argument("--time-cap", type=float)
    c.set_defaults(fn=cmd_ex)

    c = sub.add_parser("verify", help="run the verification suite")
    g = c.add_mutually_exclusive_group()
    g.add_argument("--quick", action="store_true", help="reduced random grids (default)")
    g.add_argument("--full", action="store_true")
    c.add_argument("--seed", type=int, default=claims.DEFAULT_SEED)
    c.add_argument("--claims", help="comma-separated claim ids")
    c.add_argument("--json", help="write the JSON report here instead of stdout")
    c.set_defaults(fn=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except construct.GuardExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
        print(json.dumps({"estimate": exc.estimate.as_dict(), "cap": exc.cap}), file=sys.stderr)
        return EXIT_GUARD
    except (containment.InfeasibleCheck, FamilyTooLarge) as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
