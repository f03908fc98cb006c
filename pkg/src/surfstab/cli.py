"""Command line entry point: ``surfstab solve|gen|verify|oracle``."""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .errors import BudgetExceeded, InstanceError, InternalError, TooLarge
from .instance_io import format_fraction, read_instance, write_instance

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_INTERNAL = 0, 2, 3, 4

log = logging.getLogger("surfstab")


def _cmd_solve(args) -> int:
    from .pipeline import solve

    G = read_instance(args.file)
    sol = solve(G, budget=args.budget, ell=args.ell)
    if args.cert:
        with open(args.cert, "w") as fh:
            fh.write(sol.to_json())
    if args.emit_ef:
        from .ef import emit_stab_ef

        ef = emit_stab_ef(G, budget=args.budget)
        ef.model.objective = ef.objective(G.weights)
        with open(args.emit_ef, "w") as fh:
            fh.write(ef.model.to_lpx())
    print(f"weight {format_fraction(sol.weight)}")
    print("set " + " ".join(str(v) for v in sorted(sol.stable_set)))
    if args.timings:
        for stage, secs in sol.timings.items():
            print(f"time {stage} {secs:.4f}")
    return EXIT_OK


def _cmd_gen(args) -> int:
    from .generators import gen

    params = json.loads(args.params) if args.params else {}
    G = gen(args.family, params, args.seed)
    if args.output == "-":
        from .instance_io import dumps_graph

        sys.stdout.write(dumps_graph(G))
    else:
        write_instance(G, args.output)
    return EXIT_OK


def _cmd_verify(args) -> int:
    from .verify import verify

    G = read_instance(args.file)
    report = verify(G, assume_consistent=args.assume_consistent, budget=args.budget,
                    trials=args.trials, seed=args.seed)
    sys.stdout.write(report.text())
    return EXIT_OK if report.ok else 1


def _cmd_oracle(args) -> int:
    from .oracles import oracle_mwss

    G = read_instance(args.file)
    w, S = oracle_mwss(G)
    print(f"weight {format_fraction(w)}")
    print("set " + " ".join(str(v) for v in sorted(S)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="surfstab", description="Exact maximum-weight stable sets on embedded graphs.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve an instance exactly")
    s.add_argument("file")
    s.add_argument("--budget", type=int, default=4, help="largest transversal to accept")
    s.add_argument("--ell", type=int, default=None, help="maximum number of closed pieces to combine")
    s.add_argument("--emit-ef", metavar="OUT.lpx", help="also write the extended formulation")
    s.add_argument("--cert", metavar="OUT.json", help="write the certificate")
    s.add_argument("--timings", action="store_true", help="print wall-clock time per stage")
    s.set_defaults(func=_cmd_solve)

    g = sub.add_parser("gen", help="generate an instance")
    g.add_argument("--family", required=True)
    g.add_argument("--params", default="", help='JSON object, e.g. \'{"r": 3, "s": 4}\'')
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output", default="-")
    g.set_defaults(func=_cmd_gen)

    v = sub.add_parser("verify", help="run the invariant suite on an instance")
    v.add_argument("file")
    v.add_argument("--assume-consistent", action="store_true",
                   help="fail if some odd closed walk is 2-sided")
    v.add_argument("--budget", type=int, default=4)
    v.add_argument("--trials", type=int, default=200)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=_cmd_verify)

    o = sub.add_parser("oracle", help="brute-force optimum (n <= 24)")
    o.add_argument("file")
    o.set_defaults(func=_cmd_oracle)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InstanceError, TooLarge, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InternalError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
