"""``cmline`` command-line interface.

Exit codes: 0 success, 1 verification failure, 2 parse error, 3 missing
capability, 4 violated precondition.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from decimal import Decimal, localcontext
from fractions import Fraction

from . import lines
from .construction import BUILTINS, build, build_blowup, epsilon_of, load
from .errors import CmlineError, ParseError, PreconditionError
from .exactalg import parse_rational
from .verify import CHECK_NAMES, VerifyConfig, run_all, run_check

QUANTITIES = (
    "cm",
    "cm_prime",
    "mu",
    "lambda_vector",
    "lambda_of_k",
    "hilb_bipoly",
    "ch_poly",
    "sigma",
    "cm_eps",
    "futaki",
)


def _dump(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2)


def _rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def compute(tree: dict, quantity: str, *, k=None, eps=None, b0=None, b1=None) -> dict:
    """The report document for one quantity."""
    if quantity in ("sigma", "cm_eps"):
        bf = build_blowup(tree, eps)
        if quantity == "sigma":
            return {"sigma": str(lines.sigma_blowup(bf.ambient, bf.ms))}
        return {"cm_eps": lines.cm_eps_function(bf.ambient, bf.ms).to_json()}

    family = build(tree, eps)
    if quantity == "cm":
        return {"cm_degree": str(lines.cm_degree(family))}
    if quantity == "cm_prime":
        return {"cm_prime_degree": str(lines.cm_prime_degree(family))}
    if quantity == "mu":
        return {"mu": str(lines.mu(family))}
    if quantity == "lambda_vector":
        return {"lambda_vector": lines.lambda_vector(family).to_json()}
    if quantity == "lambda_of_k":
        if k is None:
            raise ParseError("lambda_of_k needs --k")
        return {"k": k, "lambda_of_k": str(lines.lambda_of_k(family, k))}
    if quantity == "hilb_bipoly":
        return {"hilb_bipoly": lines.hilb_degree_bipoly(family).to_json()}
    if quantity == "ch_poly":
        return {"ch_poly": lines.ch_degree(family).to_json()}
    if quantity == "futaki":
        if b0 is None or b1 is None:
            raise ParseError("futaki needs --b0 and --b1")
        return {"futaki": str(lines.futaki(family, lines.WeightData(b0, b1)))}
    raise ParseError(f"unknown quantity {quantity!r}")


def _decimal(x: Fraction, digits: int = 12) -> str:
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(x.numerator) / Decimal(x.denominator))


def sweep_rows(tree: dict, start: Fraction, stop: Fraction, steps: int) -> list[dict]:
    if tree.get("type") != "blowup" or epsilon_of(tree) is not None:
        raise PreconditionError("sweep needs a blowup construction with symbolic epsilon")
    if steps < 1:
        raise PreconditionError("steps must be >= 1")
    bf = build_blowup(tree)
    rows = []
    for i in range(steps):
        e = start if steps == 1 else start + (stop - start) * Fraction(i, steps - 1)
        f = bf.at(e)
        cm = lines.cm_degree(f)
        rows.append({"eps": e, "cm_degree": cm, "mu": lines.mu(f), "a0": f.a0})
    return rows


def _cmd_compute(args) -> int:
    doc = compute(load(args.family), args.quantity, k=args.k, eps=args.eps, b0=args.b0, b1=args.b1)
    print(_dump(doc))
    return 0


def _cmd_verify(args) -> int:
    tree = load(args.family)
    config = VerifyConfig(eps=args.eps)
    if args.check:
        reports = [run_check(args.check, tree, config)]
    else:
        reports = run_all(tree, config)
    ok = all(r.passed for r in reports)
    doc = {
        "all_pass": ok,
        "failed": [r.check_name for r in reports if not r.passed],
        "reports": [r.to_json() for r in reports],
    }
    print(_dump(doc))
    return 0 if ok else 1


def _cmd_sweep(args) -> int:
    if args.param != "eps":
        raise ParseError("only --param eps is supported")
    rows = sweep_rows(load(args.family), args.start, args.stop, args.steps)
    if args.format == "json":
        print(_dump([{key: str(v) for key, v in row.items()} for row in rows]))
        return 0
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["eps", "cm_degree", "mu", "a0", "cm_degree_decimal"])
    for row in rows:
        writer.writerow([row["eps"], row["cm_degree"], row["mu"], row["a0"], _decimal(row["cm_degree"])])
    sys.stdout.write(buf.getvalue())
    return 0


def _cmd_examples(args) -> int:
    print(_dump(BUILTINS))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cmline",
        description="Exact degrees of CM, Chow and Hilbert determinant lines of families over a curve.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="compute one quantity")
    p.add_argument("family", help="builtin name or construction JSON file")
    p.add_argument("--quantity", required=True, choices=QUANTITIES)
    p.add_argument("--k", type=int)
    p.add_argument("--eps", type=_rational_arg, help="value bound to symbolic epsilons")
    p.add_argument("--b0", type=_rational_arg)
    p.add_argument("--b1", type=_rational_arg)
    p.set_defaults(func=_cmd_compute)

    p = sub.add_parser("verify", help="run identity checks")
    p.add_argument("family")
    p.add_argument("--check", choices=CHECK_NAMES)
    p.add_argument("--eps", type=_rational_arg, default=Fraction(1, 10),
                   help="value bound to symbolic epsilons (default 1/10)")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("sweep", help="tabulate a blowup family over eps")
    p.add_argument("family")
    p.add_argument("--param", default="eps")
    p.add_argument("--from", dest="start", type=_rational_arg, required=True)
    p.add_argument("--to", dest="stop", type=_rational_arg, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("examples", help="list builtin constructions")
    p.set_defaults(func=_cmd_examples)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else ParseError.exit_code
    try:
        return args.func(args)
    except CmlineError as exc:
        print(f"cmline: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
