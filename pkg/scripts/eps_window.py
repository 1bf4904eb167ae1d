"""Tabulate the CM degree of the symbolic-eps builtins over an eps grid and
report every sign change, with the exact rational function alongside."""
import argparse
from fractions import Fraction

from cmline import lines
from cmline.exactalg import parse_rational
from cmline.cli import sweep_rows
from cmline.construction import build_blowup, builtin


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--from", dest="start", type=parse_rational, default=Fraction(1, 100))
    parser.add_argument("--to", dest="stop", type=parse_rational, default=Fraction(99, 100))
    parser.add_argument("--steps", type=int, default=25)
    args = parser.parse_args()

    for name in ("ex5_2_blowup", "ex5_4_blowup"):
        tree = builtin(name)
        bf = build_blowup(tree)
        fn = lines.cm_eps_function(bf.ambient, bf.ms)
        print(f"{name}: cm(eps) = {fn}")
        print(f"  slope at 0 = {fn.derivative_at_zero()}, sigma = {lines.sigma_blowup(bf.ambient, bf.ms)}")
        rows = sweep_rows(tree, args.start, args.stop, args.steps)
        previous = None
        for row in rows:
            sign = (row["cm_degree"] > 0) - (row["cm_degree"] < 0)
            flag = "  <- sign change" if previous is not None and sign != previous else ""
            print(f"  eps={str(row['eps']):>8}  cm={float(row['cm_degree']):+.6f}{flag}")
            previous = sign


if __name__ == "__main__":
    main()
