"""Intersection profiles of polarised families over a curve, and the operations
that build new profiles from old ones.

Conventions for projective bundles: P(E) is the space of lines in E and
L = O(1), so pi_* L^k = S^k E^*, xi^{n+1} = -pi^*c1(E) xi^n and
K_{X/B} = -(n+1) xi - pi^*c1(E).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

from .errors import DimensionError, PreconditionError
from .exactalg import (
    RationalLike,
    UniPoly,
    as_rational,
    shifted_binomial_poly,
    to_binomial_basis,
)


@dataclass(frozen=True)
class FamilyData:
    """Everything needed to evaluate the line-bundle degrees of a family X -> B.

    ``deg_L_top`` is pi_*(c1(L)^{n+1}) and ``deg_KL`` is pi_*(c1(K_{X/B}) c1(L)^n).
    ``pushforward`` is deg det pi_!(L^k) as a polynomial in k, when known.

    Construction only enforces the structural invariants. The two
    Grothendieck-Riemann-Roch identities tying ``pushforward`` to the
    intersection numbers are reported by :meth:`grr_defects` so that corrupted
    profiles can still be built as negative controls.
    """

    n: int
    genus_base: int
    hilb: UniPoly
    deg_L_top: Fraction
    deg_KL: Fraction
    pushforward: UniPoly | None = None
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise PreconditionError(f"relative dimension must be >= 1, got {self.n}")
        if self.genus_base < 0:
            raise PreconditionError("base genus must be non-negative")
        object.__setattr__(self, "deg_L_top", as_rational(self.deg_L_top))
        object.__setattr__(self, "deg_KL", as_rational(self.deg_KL))
        if self.hilb.var != "k":
            raise PreconditionError("Hilbert polynomial must be in k")
        if self.hilb.degree != self.n:
            raise PreconditionError(
                f"Hilbert polynomial has degree {self.hilb.degree}, expected n={self.n}"
            )
        if self.hilb.leading <= 0:
            raise PreconditionError(f"leading Hilbert coefficient {self.hilb.leading} is not positive")
        if self.pushforward is not None and self.pushforward.var != "k":
            raise PreconditionError("pushforward must be a polynomial in k")

    @property
    def a0(self) -> Fraction:
        return self.hilb[self.n]

    @property
    def a1(self) -> Fraction:
        return self.hilb[self.n - 1]

    @property
    def fibre_volume(self) -> Fraction:
        """Integral of c1(L_b)^n over a fibre."""
        return factorial(self.n) * self.a0

    @property
    def fibre_canonical_degree(self) -> Fraction:
        """Integral of K_b . c1(L_b)^{n-1} over a fibre, read off from a1."""
        return -2 * factorial(self.n - 1) * self.a1

    def grr_defects(self) -> dict[str, tuple[Fraction, Fraction]]:
        """Identities violated by the pushforward, as name -> (lhs, rhs).

        Empty when there is no pushforward or everything is consistent.
        """
        if self.pushforward is None:
            return {}
        bad = {}
        if self.pushforward.degree > self.n + 1:
            bad["pushforward_degree"] = (Fraction(self.pushforward.degree), Fraction(self.n + 1))
        lam = to_binomial_basis(self.pushforward)
        top = lam[self.n + 1] if len(lam) > self.n + 1 else Fraction(0)
        sub = lam[self.n] if len(lam) > self.n else Fraction(0)
        if top != self.deg_L_top:
            bad["lambda_top_equals_L_top"] = (top, self.deg_L_top)
        if self.n * top - 2 * sub != self.deg_KL:
            bad["lambda_sub_equals_KL"] = (self.n * top - 2 * sub, self.deg_KL)
        return bad

    def without_pushforward(self) -> FamilyData:
        return FamilyData(self.n, self.genus_base, self.hilb, self.deg_L_top, self.deg_KL, None, self.label)


@dataclass(frozen=True)
class MultisectionSpec:
    """Numerical data of a curve C in X mapping with degree d onto the base.

    ``canonical_degree_C`` is deg K_C (2g-2 per connected component, additive
    over a disjoint union); ``deg_L_C`` and ``deg_Krel_C`` are the degrees of
    L and K_{X/B} restricted to C.
    """

    d: int
    canonical_degree_C: int
    deg_L_C: Fraction
    deg_Krel_C: Fraction

    def __post_init__(self):
        if self.d < 1:
            raise PreconditionError("multisection degree d must be >= 1")
        if self.canonical_degree_C < -2 * self.d:
            raise PreconditionError(
                "canonical degree below -2d is impossible for a disjoint union of smooth curves"
            )
        object.__setattr__(self, "deg_L_C", as_rational(self.deg_L_C))
        object.__setattr__(self, "deg_Krel_C", as_rational(self.deg_Krel_C))

    def exceptional_cube(self, genus_base: int) -> Fraction:
        """E^3 = -deg N_{C/X}, with deg N from adjunction on the total space."""
        kx_dot_c = self.deg_Krel_C + self.d * (2 * genus_base - 2)
        return -(self.canonical_degree_C - kx_dot_c)

    def __add__(self, other: MultisectionSpec) -> MultisectionSpec:
        """Disjoint union."""
        return MultisectionSpec(
            self.d + other.d,
            self.canonical_degree_C + other.canonical_degree_C,
            self.deg_L_C + other.deg_L_C,
            self.deg_Krel_C + other.deg_Krel_C,
        )


def _fmt_degrees(degrees: Sequence[int]) -> str:
    return "[" + ",".join(str(d) for d in degrees) + "]"


def proj_bundle(genus_base: int, degrees: Sequence[int]) -> FamilyData:
    """P(O(d_0) + ... + O(d_n)) over a curve of the given genus, with L = O(1)."""
    degrees = [int(d) for d in degrees]
    if len(degrees) < 2:
        raise PreconditionError("a projective bundle needs at least two summands")
    n = len(degrees) - 1
    s = sum(degrees)
    return FamilyData(
        n=n,
        genus_base=genus_base,
        hilb=shifted_binomial_poly(n, n),
        deg_L_top=Fraction(-s),
        deg_KL=Fraction(n * s),
        pushforward=shifted_binomial_poly(n, n + 1) * (-s),
        label=f"proj_bundle({genus_base},{_fmt_degrees(degrees)})",
    )


def section_of_summand(degrees: Sequence[int], index: int, genus_base: int = 0) -> MultisectionSpec:
    """The section P(O(d_index)) of P(E) -> B."""
    if not 0 <= index < len(degrees):
        raise PreconditionError(f"summand index {index} out of range for {len(degrees)} summands")
    n = len(degrees) - 1
    m = int(degrees[index])
    return MultisectionSpec(
        d=1,
        canonical_degree_C=2 * genus_base - 2,
        deg_L_C=Fraction(-m),
        deg_Krel_C=Fraction((n + 1) * m - sum(degrees)),
    )


@dataclass(frozen=True)
class BlowupFamily:
    """Blowup of a relative surface along a multisection, with L_eps = q^*L - eps E
    and eps left symbolic. Intersection numbers are polynomials in eps."""

    ambient: FamilyData
    ms: MultisectionSpec

    def __post_init__(self):
        if self.ambient.n != 2:
            raise DimensionError(f"blowup needs relative dimension 2, got {self.ambient.n}")

    @property
    def e_cubed(self) -> Fraction:
        return self.ms.exceptional_cube(self.ambient.genus_base)

    @property
    def a0(self) -> UniPoly:
        return UniPoly((self.ambient.a0, 0, Fraction(-self.ms.d, 2)), "eps")

    @property
    def a1(self) -> UniPoly:
        return UniPoly((self.ambient.a1, Fraction(-self.ms.d, 2)), "eps")

    @property
    def deg_L_top(self) -> UniPoly:
        # q^*L^2.E = 0, q^*L.E^2 = -deg L|_C
        ell = self.ms.deg_L_C
        return UniPoly((self.ambient.deg_L_top, 0, -3 * ell, -self.e_cubed), "eps")

    @property
    def deg_KL(self) -> UniPoly:
        # K~ = q^*K + E; q^*K.q^*L.E = 0, q^*K.E^2 = -deg K|_C
        ell, kappa = self.ms.deg_L_C, self.ms.deg_Krel_C
        return UniPoly((self.ambient.deg_KL, 2 * ell, self.e_cubed - kappa), "eps")

    def hilb_at(self, eps: Fraction) -> UniPoly:
        d = self.ms.d
        return self.ambient.hilb - UniPoly((0, eps, eps * eps), "k") * Fraction(d, 2)

    def at(self, eps: RationalLike) -> FamilyData:
        eps = as_rational(eps)
        if eps < 0:
            raise PreconditionError(f"eps must be non-negative, got {eps}")
        a0 = self.a0(eps)
        if a0 <= 0:
            raise PreconditionError(f"leading Hilbert coefficient a0(eps)={a0} is not positive at eps={eps}")
        return FamilyData(
            n=2,
            genus_base=self.ambient.genus_base,
            hilb=self.hilb_at(eps),
            deg_L_top=self.deg_L_top(eps),
            deg_KL=self.deg_KL(eps),
            pushforward=None,
            label=f"blowup({self.ambient.label},eps={eps})",
        )


def blowup(ambient: FamilyData, ms: MultisectionSpec, eps: RationalLike) -> FamilyData:
    return BlowupFamily(ambient, ms).at(eps)


def fibred_product(f1: FamilyData, f2: FamilyData) -> FamilyData:
    """X1 x_B X2 with the product polarisation, via the Kunneth formula."""
    if f1.genus_base != f2.genus_base:
        raise PreconditionError(
            f"fibred product over different bases (genus {f1.genus_base} vs {f2.genus_base})"
        )
    n1, n2 = f1.n, f2.n
    n = n1 + n2
    vol1, vol2 = f1.fibre_volume, f2.fibre_volume
    kb1, kb2 = f1.fibre_canonical_degree, f2.fibre_canonical_degree
    deg_L_top = comb(n + 1, n1 + 1) * f1.deg_L_top * vol2 + comb(n + 1, n2 + 1) * vol1 * f2.deg_L_top
    deg_KL = (
        comb(n, n1) * f1.deg_KL * vol2
        + comb(n, n1 - 1) * kb1 * f2.deg_L_top
        + comb(n, n2) * f2.deg_KL * vol1
        + comb(n, n2 - 1) * kb2 * f1.deg_L_top
    )
    push = None
    if f1.pushforward is not None and f2.pushforward is not None:
        push = f2.hilb * f1.pushforward + f1.hilb * f2.pushforward
    return FamilyData(
        n=n,
        genus_base=f1.genus_base,
        hilb=f1.hilb * f2.hilb,
        deg_L_top=deg_L_top,
        deg_KL=deg_KL,
        pushforward=push,
        label=f"product({f1.label},{f2.label})",
    )


def twist(f: FamilyData, t: RationalLike) -> FamilyData:
    """Replace L by L + pi^*sigma with deg sigma = t."""
    t = as_rational(t)
    n = f.n
    push = None
    if f.pushforward is not None:
        push = f.pushforward + UniPoly((0, 1), "k") * f.hilb * t
    return FamilyData(
        n=n,
        genus_base=f.genus_base,
        hilb=f.hilb,
        deg_L_top=f.deg_L_top + (n + 1) * t * f.fibre_volume,
        deg_KL=f.deg_KL + n * t * f.fibre_canonical_degree,
        pushforward=push,
        label=f"twist({f.label},{t})",
    )


def scale(f: FamilyData, r: int) -> FamilyData:
    """Replace L by L^r."""
    if isinstance(r, bool) or not isinstance(r, int) or r < 1:
        raise PreconditionError(f"scale factor must be an integer >= 1, got {r!r}")
    n = f.n
    return FamilyData(
        n=n,
        genus_base=f.genus_base,
        hilb=f.hilb.scaled(r),
        deg_L_top=f.deg_L_top * r ** (n + 1),
        deg_KL=f.deg_KL * r**n,
        pushforward=None if f.pushforward is None else f.pushforward.scaled(r),
        label=f"scale({f.label},{r})",
    )
