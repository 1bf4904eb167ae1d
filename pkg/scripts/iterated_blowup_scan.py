"""Blow up three extra sections of the ex5_2 blowup and scan the second weight.

Each value is computed twice: once with a single degree-3 multisection and
once as three successive blowups along the individual sections.
"""
import argparse
from fractions import Fraction

from cmline import lines
from cmline.exactalg import parse_rational
from cmline.family import BlowupFamily, MultisectionSpec, proj_bundle, section_of_summand

EX52 = [2, -1, -1]
SECTION = MultisectionSpec(d=1, canonical_degree_C=-2, deg_L_C=1, deg_Krel_C=-3)


def joint(first: Fraction, second: Fraction) -> Fraction:
    inner = BlowupFamily(proj_bundle(0, EX52), section_of_summand(EX52, 0)).at(first)
    return lines.cm_degree(BlowupFamily(inner, SECTION + SECTION + SECTION).at(second))


def sequential(first: Fraction, second: Fraction) -> Fraction:
    f = BlowupFamily(proj_bundle(0, EX52), section_of_summand(EX52, 0)).at(first)
    for _ in range(3):
        f = BlowupFamily(f, SECTION).at(second)
    return lines.cm_degree(f)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--eps", type=parse_rational, default=Fraction(1, 10))
    parser.add_argument("--max-denominator", type=int, default=10000)
    args = parser.parse_args()

    second = Fraction(1, args.max_denominator)
    while second < args.eps:
        a, b = joint(args.eps, second), sequential(args.eps, second)
        assert a == b, (second, a, b)
        print(f"eps'={str(second):>8}  cm={float(a):+.9f}  ({'negative' if a < 0 else 'non-negative'})")
        second *= 2


if __name__ == "__main__":
    main()
