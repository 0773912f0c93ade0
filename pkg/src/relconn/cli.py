"""Command-line front end.

Exit status: 0 the property holds, 1 it fails (a counterexample block is
printed), 2 usage or input error, 3 a size cap was exceeded.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .caps import DEFAULT_CAPS
from .connectors import IOCO, Comp, Conv, Kant, bind
from .errors import CapExceeded, RelconnError
from .functors import is_susp, kind_str
from .ioformats import parse_aut, parse_chc, parse_connector, serialize_connector, write_relation
from .logic import SIMILAR, distinguishing_formula
from .selftest import run_selftest
from .simulation import greatest_simulation

EXIT_HOLDS, EXIT_FAILS, EXIT_USAGE, EXIT_INTRACTABLE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def load_system(path):
    text = _read(path)
    if path.endswith(".aut"):
        return parse_aut(text)
    return parse_chc(text)


def _caps(args):
    caps = DEFAULT_CAPS
    if args.support_cap is not None:
        caps = replace(caps, support_bits=args.support_cap)
    if args.middle_cap is not None:
        caps = replace(caps, middle_terms=args.middle_cap)
    return caps


def _state(C, name, side):
    if name not in C.states:
        raise UsageError(f"state {name!r} not in the {side} system")
    return name


def _counterexample(out, pair, log_entry, extra=()):
    print("counterexample:", file=out)
    print(f"  pair: {pair[0]} {pair[1]}", file=out)
    if log_entry is not None:
        print(f"  round: {log_entry.round}", file=out)
        clause = log_entry.clause
        if log_entry.witness is not None:
            lam, mu, sets = log_entry.witness
            args = " ".join("{" + ",".join(sorted(map(str, A))) + "}" for A in sets)
            clause = f"{clause} ({lam}, {mu}) {args}".rstrip()
        print(f"  clause: {clause}", file=out)
    for line in extra:
        print(f"  {line}", file=out)


def cmd_gsim(args, out):
    C, D = load_system(args.left), load_system(args.right)
    L = parse_connector(_read(args.connector))
    res = greatest_simulation(C, D, L, _caps(args))
    print(f"connector: {serialize_connector(L)}", file=out)
    print(f"kinds: {kind_str(res.left.kind)} -> {kind_str(res.right.kind)}", file=out)
    print(f"rounds: {res.rounds}", file=out)
    print(f"pairs: {len(res.relation)}", file=out)
    if args.out:
        write_relation(res.relation, args.out)
    else:
        out.write(write_relation(res.relation))
    if args.pair:
        x, y = _state(C, args.pair[0], "left"), _state(D, args.pair[1], "right")
        if (x, y) in res.relation:
            print(f"holds: {x} {y}", file=out)
            return EXIT_HOLDS
        entry = next(e for e in res.removal_log if e.pair == (x, y))
        _counterexample(out, (x, y), entry)
        return EXIT_FAILS
    return EXIT_HOLDS


def cmd_distinguish(args, out):
    C, D = load_system(args.left), load_system(args.right)
    L = parse_connector(_read(args.connector_lambda))
    if not isinstance(L, Kant):
        raise UsageError("distinguish needs a Kantorovich connector (kant ...)")
    x, y = _state(C, args.pair[0], "left"), _state(D, args.pair[1], "right")
    res = greatest_simulation(C, D, L, _caps(args))
    phi = distinguishing_formula(C, D, L.lam, x, y, _caps(args), result=res)
    if phi == SIMILAR:
        print(SIMILAR, file=out)
        return EXIT_HOLDS
    print(phi, file=out)
    entry = next(e for e in res.removal_log if e.pair == (x, y))
    _counterexample(out, (x, y), entry, [f"formula: {phi}"])
    return EXIT_FAILS


def cmd_ioco(args, out):
    spec = load_system(args.spec)
    if not (is_susp(spec.kind) and spec.kind.name == "SUSP"):
        raise UsageError(f"spec must be SUSP, got {kind_str(spec.kind)}")
    caps = _caps(args)
    if args.compat:
        other = load_system(args.compat)
        if not (is_susp(other.kind) and other.kind.name == "SUSP"):
            raise UsageError(f"--compat needs a SUSP spec, got {kind_str(other.kind)}")
        L = bind(Comp(Conv(IOCO()), IOCO()), spec.kind, other.kind, caps)
        left, right, what = spec, other, "compatible"
    else:
        if not args.impl:
            raise UsageError("--impl is required unless --compat is given")
        impl = load_system(args.impl)
        if not (is_susp(impl.kind) and impl.kind.name == "SUSPIE"):
            raise UsageError(f"impl must be SUSPIE, got {kind_str(impl.kind)}")
        L = IOCO()
        left, right, what = spec, impl, "conforms"
    res = greatest_simulation(left, right, L, caps)
    x = args.pair[0] if args.pair else left.states.elements[0]
    y = args.pair[1] if args.pair else right.states.elements[0]
    x, y = _state(left, x, "spec"), _state(right, y, "second")
    print(f"relation: {len(res.relation)} pairs", file=out)
    out.write(write_relation(res.relation))
    if (x, y) in res.relation:
        print(f"{what}: {x} {y}", file=out)
        return EXIT_HOLDS
    entry = next(e for e in res.removal_log if e.pair == (x, y))
    print(f"not {what}: {x} {y}", file=out)
    _counterexample(out, (x, y), entry)
    return EXIT_FAILS


def cmd_selftest(args, out):
    ok = run_selftest(args.seed, args.cases, args.max_states, out)
    return EXIT_HOLDS if ok else EXIT_FAILS


def build_parser():
    p = argparse.ArgumentParser(prog="relconn", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--support-cap", type=int, default=None,
                        help="bits of Kantorovich argument enumeration (default 20)")
        sp.add_argument("--middle-cap", type=int, default=None,
                        help="middle terms searched for a composite (default 65536)")

    g = sub.add_parser("gsim", help="greatest simulation for a connector")
    g.add_argument("--left", required=True)
    g.add_argument("--right", required=True)
    g.add_argument("--connector", required=True)
    g.add_argument("--out")
    g.add_argument("--pair", nargs=2, metavar=("X", "Y"))
    common(g)
    g.set_defaults(run=cmd_gsim)

    d = sub.add_parser("distinguish", help="distinguishing formula for a Kantorovich connector")
    d.add_argument("--left", required=True)
    d.add_argument("--right", required=True)
    d.add_argument("--connector-lambda", required=True)
    d.add_argument("--pair", nargs=2, metavar=("X", "Y"), required=True)
    common(d)
    d.set_defaults(run=cmd_distinguish)

    i = sub.add_parser("ioco", help="input/output conformance of suspension automata")
    i.add_argument("--impl")
    i.add_argument("--spec", required=True)
    i.add_argument("--compat", metavar="OTHERSPEC")
    i.add_argument("--pair", nargs=2, metavar=("S", "T"),
                   help="states to compare (default: the first declared states)")
    common(i)
    i.set_defaults(run=cmd_ioco)

    s = sub.add_parser("selftest", help="run the seeded law battery")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--cases", type=int, default=20)
    s.add_argument("--max-states", type=int, default=4)
    s.set_defaults(run=cmd_selftest, support_cap=None, middle_cap=None)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_HOLDS
    try:
        return args.run(args, out)
    except CapExceeded as e:
        print(f"intractable: {e}", file=sys.stderr)
        return EXIT_INTRACTABLE
    except (UsageError, RelconnError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
