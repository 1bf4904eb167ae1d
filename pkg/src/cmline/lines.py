"""Degrees of the determinant line bundles attached to a family: lambda(k), the
lambda_i of the Knudsen-Mumford expansion, the CM line and its normalised
version, the Cornalba-Harris and Hilbert lines, the blowup perturbation sigma,
and the Futaki invariant of a weight polynomial.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import CapabilityError, DimensionError, InconsistentFamilyError
from .exactalg import (
    BiPoly,
    RationalFunctionEps,
    RationalLike,
    UniPoly,
    as_rational,
    compose_scale,
    to_binomial_basis,
)
from .family import BlowupFamily, FamilyData, MultisectionSpec


@dataclass(frozen=True)
class LambdaVector:
    """deg lambda_0 .. deg lambda_{n+1}; unknown entries are None when not complete."""

    degrees: tuple
    complete: bool

    def __getitem__(self, i: int) -> Fraction | None:
        return self.degrees[i] if i < len(self.degrees) else Fraction(0)

    def to_json(self) -> dict:
        return {
            "complete": self.complete,
            "degrees": [None if d is None else str(d) for d in self.degrees],
        }


@dataclass(frozen=True)
class WeightData:
    """Top two coefficients of the weight w(k) = b0 k^{n+1} + b1 k^n + ..."""

    b0: Fraction
    b1: Fraction

    def __post_init__(self):
        object.__setattr__(self, "b0", as_rational(self.b0))
        object.__setattr__(self, "b1", as_rational(self.b1))


def _require_pushforward(f: FamilyData, what: str) -> UniPoly:
    if f.pushforward is None:
        raise CapabilityError(f"{what} needs deg lambda(k), which {f.label or 'this family'} does not carry")
    return f.pushforward


def mu(f: FamilyData) -> Fraction:
    return 2 * f.a1 / f.a0


def cm_degree_profile(f: FamilyData) -> Fraction:
    """mu L^{n+1} + (n+1) K L^n from the intersection numbers."""
    return mu(f) * f.deg_L_top + (f.n + 1) * f.deg_KL


def cm_degree_lambda(f: FamilyData) -> Fraction:
    """(mu + n(n+1)) lambda_{n+1} - 2(n+1) lambda_n from the pushforward."""
    lv = lambda_vector(f)
    if not lv.complete:
        raise CapabilityError("lambda route needs the pushforward")
    n = f.n
    return (mu(f) + n * (n + 1)) * lv[n + 1] - 2 * (n + 1) * lv[n]


def cm_degree(f: FamilyData) -> Fraction:
    """Degree of the CM line; cross-checked against the lambda route when possible."""
    value = cm_degree_profile(f)
    if f.pushforward is not None:
        other = cm_degree_lambda(f)
        if other != value:
            raise InconsistentFamilyError(
                f.label, "cm_degree", {"intersection_route": value, "lambda_route": other}
            )
    return value


def cm_prime_degree(f: FamilyData) -> Fraction:
    return cm_degree(f) / (2 * f.a0 * factorial(f.n + 1))


def lambda_vector(f: FamilyData) -> LambdaVector:
    n = f.n
    if f.pushforward is not None:
        lam = to_binomial_basis(f.pushforward)
        lam += [Fraction(0)] * (n + 2 - len(lam))
        return LambdaVector(tuple(lam), True)
    top = f.deg_L_top
    sub = (n * f.deg_L_top - f.deg_KL) / 2
    return LambdaVector((None,) * n + (sub, top), False)


def lambda_of_k(f: FamilyData, k: int) -> Fraction:
    return _require_pushforward(f, "lambda(k)")(k)


def hilb_degree_bipoly(f: FamilyData) -> BiPoly:
    """deg lambda_Hilb(X, L^r, k) = p(r) deg lambda(kr) - k p(kr) deg lambda(r)."""
    push = _require_pushforward(f, "lambda_Hilb")
    p_r = BiPoly.from_r(f.hilb.rename("r"))
    lam_r = BiPoly.from_r(push.rename("r"))
    k = BiPoly({(1, 0): 1})
    return p_r * compose_scale(push) - k * compose_scale(f.hilb) * lam_r


def ch_degree(f: FamilyData) -> UniPoly:
    """deg lambda_CH(X, L^r) as a polynomial in r."""
    push = _require_pushforward(f, "lambda_CH")
    n = f.n
    top = lambda_vector(f)[n + 1]
    r = UniPoly((0, 1), "r")
    return f.hilb.rename("r") * r ** (n + 1) * top - r**n * push.rename("r") * (f.a0 * factorial(n + 1))


def sigma_blowup(ambient: FamilyData, ms: MultisectionSpec) -> Fraction:
    """First-order change of the CM degree when blowing up ``ms`` with weight eps."""
    if ambient.n != 2:
        raise DimensionError(f"sigma is defined for relative dimension 2, got {ambient.n}")
    return -Fraction(ms.d) / ambient.a0 * ambient.deg_L_top + 6 * ms.deg_L_C


def mu_eps(bf: BlowupFamily) -> RationalFunctionEps:
    return RationalFunctionEps(bf.a1 * 2, bf.a0)


def cm_eps_function(ambient: FamilyData, ms: MultisectionSpec) -> RationalFunctionEps:
    """Exact CM degree of the blowup as a function of eps."""
    bf = BlowupFamily(ambient, ms)
    return mu_eps(bf) * bf.deg_L_top + RationalFunctionEps(bf.deg_KL * 3)


def futaki(f: FamilyData, w: WeightData) -> Fraction:
    return futaki_from_coefficients(f.n, f.a0, f.a1, w)


def futaki_from_coefficients(n: int, a0: RationalLike, a1: RationalLike, w: WeightData) -> Fraction:
    a0, a1 = as_rational(a0), as_rational(a1)
    return 2 * factorial(n + 1) / a0 * (w.b1 * a0 - w.b0 * a1)
