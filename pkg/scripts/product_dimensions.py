"""Normalised CM degree of fibred powers F x ... x F of a blowup family.

The m-fold power has relative dimension 2m; its normalised degree is
computed from the product intersection numbers and compared with m times
that of F.
"""
import argparse
from fractions import Fraction

from cmline import lines
from cmline.exactalg import parse_rational
from cmline.construction import build, builtin
from cmline.family import fibred_product


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--family", default="ex5_2_blowup")
    parser.add_argument("--eps", type=parse_rational, default=Fraction(1, 10))
    parser.add_argument("--max-power", type=int, default=4)
    args = parser.parse_args()

    f = build(builtin(args.family), args.eps)
    unit = lines.cm_prime_degree(f)
    power = f
    for m in range(1, args.max_power + 1):
        value = lines.cm_prime_degree(power)
        status = "ok" if value == m * unit else "MISMATCH"
        print(f"m={m}  n={power.n}  cm'={value}  m*cm'(F)={m * unit}  {status}")
        power = fibred_product(power, f)


if __name__ == "__main__":
    main()
