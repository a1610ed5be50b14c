"""``orbitmat`` command line.

Exit codes: 0 analyzed without cycle, 3 cycle found, 1 usage or spec error,
2 overflow or size limit, 4 internal oracle disagreement.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .errors import OracleError, SizeLimitExceeded, SpecError
from .exact_oracle import indicator_det, verify_inverse
from . import matrix_engine as me
from .function_model import localize, parse_spec
from .orbit_engine import detect_cycle
from .report import run_analyze, scan_for_cycle

EXIT_OK, EXIT_USAGE, EXIT_LIMIT, EXIT_CYCLE, EXIT_INTERNAL = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="orbitmat", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="full analysis of phi_n")
    p.add_argument("--fn", required=True, help="function spec, e.g. collatz or shift:t=1")
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--json", dest="json_path")
    p.add_argument("--svg-ihat")
    p.add_argument("--svg-inv")
    p.add_argument("--verify", action="store_true", help="run the exact oracle (n <= 512)")
    p.add_argument("--no-materialize-inverse", action="store_true",
                   help="count the inverse's nonzeros without building it")

    p = sub.add_parser("scan", help="first n in a range where phi_n has a cycle")
    p.add_argument("--fn", required=True)
    p.add_argument("--n-min", required=True, type=int)
    p.add_argument("--n-max", required=True, type=int)

    p = sub.add_parser("oracle", help="determinant and inverse check only")
    p.add_argument("--fn", required=True)
    p.add_argument("--n", required=True, type=int)
    return parser


def _analyze(args) -> int:
    report = run_analyze(
        args.fn, args.n,
        verify=args.verify,
        materialize_inverse=not args.no_materialize_inverse,
        json_path=args.json_path,
        svg_ihat=args.svg_ihat,
        svg_inv=args.svg_inv,
    )
    sys.stdout.write(report.to_json())
    return EXIT_CYCLE if report.has_cycle else EXIT_OK


def _scan(args) -> int:
    first = scan_for_cycle(args.fn, args.n_min, args.n_max)
    out = {"spec_text": args.fn, "n_min": args.n_min, "n_max": args.n_max,
           "first_cycle_n": first}
    if first is not None:
        out["cycle_elements"] = list(detect_cycle(localize(parse_spec(args.fn), first)).elements)
    print(json.dumps(out, indent=2))
    return EXIT_CYCLE if first is not None else EXIT_OK


def _oracle(args) -> int:
    lf = localize(parse_spec(args.fn), args.n)
    ihat = me.build_ihat(lf)
    det = indicator_det(ihat)
    out = {"spec_text": args.fn, "n": args.n, "det": det}
    if det == 1:
        out["inverse_verified"] = verify_inverse(ihat, me.inverse_via_neumann(me.build_m(lf)))
    print(json.dumps(out, indent=2))
    if det == 1 and not out["inverse_verified"]:
        return EXIT_INTERNAL
    return EXIT_CYCLE if det == 0 else EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    handler = {"analyze": _analyze, "scan": _scan, "oracle": _oracle}[args.command]
    try:
        return handler(args)
    except (SpecError, ValueError) as exc:
        print(f"orbitmat: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OverflowError, SizeLimitExceeded) as exc:
        print(f"orbitmat: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except OracleError as exc:
        print(f"orbitmat: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
