"""Command-line front end.

Exit codes: 0 success (for ``check``: identity holds or no counterexample
within budget), 1 usage or parse error, 2 counterexample found.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Sequence

from .diagrams import Matching, SetPartition, all_matchings, wire_profile
from .green import (
    find_idempotent_in_h_class,
    h_related,
    j_class_count,
    j_related,
    l_related,
    r_related,
    subgroup_coordinates,
)
from .identities import (
    Identity,
    Outcome,
    WordTooLong,
    balance_witness,
    check_symmetric_group,
    search_counterexample,
)
from .monoid import MonoidKind, TwistedElement, multiply, parse_element
from .perms import Perm
from .presentation import verify_relations
from .reduction import build_reduced_identity, lift_counterexample

EXIT_OK, EXIT_USAGE, EXIT_COUNTEREXAMPLE = 0, 1, 2
LENGTH_PRINT_LIMIT = 10**5


class UsageError(ValueError):
    pass


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _sub_json(sub: dict[str, TwistedElement]) -> str:
    return json.dumps({x: v.format() for x, v in sub.items()}, separators=(",", ":"))


# -- render ------------------------------------------------------------------


def render_matching(m: Matching) -> list[str]:
    """Two columns of points; l- and r-wires run along side lanes, t-wires cross."""
    n = m.n
    prof = wire_profile(m)
    left = sorted(prof.left, key=lambda w: w[1] - w[0])
    right = sorted(prof.right, key=lambda w: w[1] - w[0])
    lanes_l = [""] * n
    for a, b in left:
        for r in range(n):
            lanes_l[r] += "+" if r in (a, b) else ("|" if a < r < b else " ")
    lanes_r = [""] * n
    for a, b in right:
        a, b = a - n, b - n
        for r in range(n):
            lanes_r[r] += "+" if r in (a, b) else ("|" if a < r < b else " ")
    lw = max(len(str(n)), 1)
    rows = []
    for r in range(n):
        p = m.partner[r]
        if p >= n:
            mid = f"--> {p - n + 1}'"
        else:
            mid = ""
        q = m.partner[r + n]
        back = f"{q + 1} <--" if q < n else ""
        # fill left lanes from the point outwards to its own lane
        ll = lanes_l[r]
        if p < n:
            own = left.index(tuple(sorted((r, p))))
            ll = "".join("-" if (i < own and c == " ") else c for i, c in enumerate(ll))
        rr = lanes_r[r]
        if q >= n:
            own = right.index(tuple(sorted((r + n, q))))
            rr = "".join("-" if (i < own and c == " ") else c for i, c in enumerate(rr))
        rows.append(f"{ll[::-1]}{r + 1:>{lw}} {mid:<12}{back:>8} {r + 1:>{lw}}'{rr}")
    return rows


def render_element(x: TwistedElement) -> str:
    if isinstance(x.diagram, SetPartition):
        lines = [f"{x.kind}", x.diagram.format()]
    else:
        lines = [f"{x.kind}"] + render_matching(x.diagram)
    lines.append(f"o x{x.s}")
    return "\n".join(lines)


# -- subcommands -------------------------------------------------------------


def cmd_multiply(args, out) -> int:
    elts = [parse_element(t) for t in args.elements]
    acc = elts[0]
    for e in elts[1:]:
        acc = multiply(acc, e)
    print(acc.format(), file=out)
    return EXIT_OK


_SYM = re.compile(r"^\s*[Ss](?:ym)?:?\s*(\d+)\s*$")


def cmd_check(args, out) -> int:
    identity = Identity.parse(args.identity)
    sym = _SYM.match(args.monoid)
    if sym:
        res = check_symmetric_group(int(sym.group(1)), identity, budget=args.budget)
        print(res.outcome.value, file=out)
        if res.witness:
            print(json.dumps({x: str(p) for x, p in res.witness.items()}), file=out)
        return EXIT_COUNTEREXAMPLE if res.outcome is Outcome.COUNTEREXAMPLE else EXIT_OK
    kind = MonoidKind.parse(args.monoid)
    witness = balance_witness(kind, identity)
    if witness is not None:
        print("counterexample", file=out)
        print("method: balance", file=out)
        print(_sub_json(witness), file=out)
        return EXIT_COUNTEREXAMPLE
    res = search_counterexample(kind, identity, strategy=args.strategy, budget=args.budget, seed=args.seed)
    print(res.outcome.value, file=out)
    print(f"method: {res.method}", file=out)
    print(f"tried: {res.tried}", file=out)
    if res.found:
        print(_sub_json(res.substitution), file=out)
        return EXIT_COUNTEREXAMPLE
    return EXIT_OK


def cmd_reduce(args, out) -> int:
    identity = Identity.parse(args.identity)
    red = build_reduced_identity(identity.lhs, identity.rhs, args.n, cap=args.cap)
    big = max(len(red.lhs), len(red.rhs)) > LENGTH_PRINT_LIMIT
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(f"{red.lhs} = {red.rhs}\n")
    if big or args.out:
        print(f"lhs length: {len(red.lhs)}", file=out)
        print(f"rhs length: {len(red.rhs)}", file=out)
    else:
        print(f"{red.lhs} = {red.rhs}", file=out)
    return EXIT_OK


def parse_witness(text: str, k: int) -> dict[str, Perm]:
    """``x=(1 2), y=(2 3)``; cycles are written in 1-based notation."""
    out = {}
    for part in re.split(r",\s*(?=[A-Za-z]\w*\s*=)", text.strip()):
        if not part:
            continue
        name, _, cyc = part.partition("=")
        out[name.strip()] = Perm.from_cycles(k, cyc.strip())
    return out


def cmd_lift(args, out) -> int:
    identity = Identity.parse(args.identity)
    witness = parse_witness(args.witness, args.n)
    sub = lift_counterexample(args.n, identity.lhs, identity.rhs, witness)
    for x, v in sub.items():
        print(f"{x} = {v.format()}", file=out)
    return EXIT_OK


def cmd_green(args, out) -> int:
    kind = MonoidKind.parse(args.monoid)
    if not kind.signed:
        raise UsageError("green works in pbt:<n>")
    if not args.elements:
        n = kind.n
        print(f"J-classes: {j_class_count(n)}", file=out)
        for t in range(n % 2, n + 1, 2):
            print(f"t={t}", file=out)
        return EXIT_OK
    if len(args.elements) != 2:
        raise UsageError("green takes zero or two elements")
    x, y = (parse_element(t) for t in args.elements)
    for name, rel in (("L", l_related), ("R", r_related), ("H", h_related), ("J", j_related), ("D", j_related)):
        print(f"{name}: {'yes' if rel(x, y) else 'no'}", file=out)
    desc = find_idempotent_in_h_class(x)
    if desc is not None and h_related(x, y):
        print(f"group H-class: S_{desc.k} x Z", file=out)
        for e in (x, y):
            c = subgroup_coordinates(desc, e)
            print(f"  {e.format()} -> ({c.perm}, {c.z})", file=out)
    return EXIT_OK


def cmd_relations(args, out) -> int:
    kind = MonoidKind.parse(args.monoid)
    report = verify_relations(kind)
    print(f"{report.checked} relations checked in {kind}", file=out)
    for f in report.failures:
        print(f"FAIL {f.relation.name} {f.relation}: {f.lhs_value} != {f.rhs_value}", file=out)
    return EXIT_OK if report.ok else EXIT_COUNTEREXAMPLE


def cmd_enumerate(args, out) -> int:
    n = args.brauer
    if not 1 <= n <= 4:
        raise UsageError("enumerate supports 1 <= N <= 4")
    for m in all_matchings(n):
        print(m.format(), file=out)
    return EXIT_OK


def cmd_render(args, out) -> int:
    print(render_element(parse_element(args.element)), file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wiremono", description="Twisted Brauer and partition monoid toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("multiply", help="multiply elements left to right")
    s.add_argument("elements", nargs="+")
    s.set_defaults(func=cmd_multiply)

    s = sub.add_parser("check", help="search for a counterexample to an identity")
    s.add_argument("--monoid", required=True, help="bt:N, pbt:N, pt:N, pbr:N or S:N")
    s.add_argument("identity")
    s.add_argument("--strategy", choices=("random", "exhaustive"), default="random")
    s.add_argument("--budget", type=_positive, default=100_000)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("reduce", help="build U = V from a group identity u = v")
    s.add_argument("--n", type=_positive, required=True)
    s.add_argument("identity")
    s.add_argument("--out")
    s.add_argument("--cap", type=_positive, default=None)
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("lift", help="lift a permutation witness to a bt:N counterexample")
    s.add_argument("--n", type=_positive, required=True)
    s.add_argument("identity")
    s.add_argument("--witness", required=True, help='e.g. "x=(1 2), y=(2 3)"')
    s.set_defaults(func=cmd_lift)

    s = sub.add_parser("green", help="Green's relations between two pbt elements")
    s.add_argument("--monoid", required=True)
    s.add_argument("elements", nargs="*")
    s.set_defaults(func=cmd_green)

    s = sub.add_parser("relations", help="verify the defining relations")
    s.add_argument("--monoid", required=True)
    s.set_defaults(func=cmd_relations)

    s = sub.add_parser("enumerate", help="list Brauer diagrams")
    s.add_argument("--brauer", type=int, required=True)
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("render", help="ASCII picture of an element")
    s.add_argument("element")
    s.set_defaults(func=cmd_render)
    return p


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args, out)
    except (UsageError, ValueError, TypeError, KeyError, WordTooLong) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
