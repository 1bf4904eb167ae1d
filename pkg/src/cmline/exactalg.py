"""Exact rational scalars, polynomials in k / r / eps, and the binomial basis.

Scalars are :class:`fractions.Fraction` throughout; nothing here touches floats.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence, Union

from .errors import NotPolynomialError, ParseError, PoleError

Rational = Fraction
RationalLike = Union[int, Fraction, str]

VARIABLES = ("k", "r", "eps")

_RATIONAL_RE = re.compile(r"[+-]?\d+(?:/\d+)?")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"n"``. Decimal notation is rejected."""
    s = text.strip()
    if not _RATIONAL_RE.fullmatch(s):
        raise ParseError(f"not an exact rational: {text!r}")
    try:
        return Fraction(s)
    except ZeroDivisionError:
        raise ParseError(f"zero denominator: {text!r}") from None


def as_rational(x: RationalLike) -> Fraction:
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"not an exact rational: {x!r}")


def format_rational(x: RationalLike) -> str:
    return str(as_rational(x))


def _check_var(var: str) -> None:
    if var not in VARIABLES:
        raise ValueError(f"unknown variable {var!r}")


@dataclass(frozen=True)
class UniPoly:
    """Dense polynomial in one named variable; ``coeffs[i]`` multiplies ``var**i``."""

    coeffs: tuple = ()
    var: str = "k"

    def __post_init__(self):
        _check_var(self.var)
        cs = [as_rational(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def constant(cls, c: RationalLike, var: str = "k") -> UniPoly:
        return cls((c,), var)

    @classmethod
    def monomial(cls, power: int, var: str = "k", c: RationalLike = 1) -> UniPoly:
        return cls((0,) * power + (c,), var)

    @property
    def degree(self) -> int:
        """Highest exponent with nonzero coefficient; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def rename(self, var: str) -> UniPoly:
        return UniPoly(self.coeffs, var)

    def _coerce(self, other) -> UniPoly | None:
        if isinstance(other, UniPoly):
            if other.var != self.var and other.degree > 0 and self.degree > 0:
                raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
            return other if other.var == self.var else other.rename(self.var)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return UniPoly.constant(other, self.var)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        var = self.var if self.degree > 0 or o.degree <= 0 else o.var
        n = max(len(self.coeffs), len(o.coeffs))
        return UniPoly(tuple(self[i] + o[i] for i in range(n)), var)

    __radd__ = __add__

    def __neg__(self) -> UniPoly:
        return UniPoly(tuple(-c for c in self.coeffs), self.var)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        var = self.var if self.degree > 0 or o.degree <= 0 else o.var
        if not self.coeffs or not o.coeffs:
            return UniPoly((), var)
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return UniPoly(tuple(out), var)

    __rmul__ = __mul__

    def __truediv__(self, c: RationalLike) -> UniPoly:
        c = as_rational(c)
        return UniPoly(tuple(x / c for x in self.coeffs), self.var)

    def __pow__(self, e: int) -> UniPoly:
        if e < 0:
            raise ValueError("negative power")
        out = UniPoly.constant(1, self.var)
        for _ in range(e):
            out = out * self
        return out

    def __call__(self, x):
        """Evaluate at a rational, or compose with another polynomial."""
        if isinstance(x, UniPoly):
            out = UniPoly((), x.var)
            for c in reversed(self.coeffs):
                out = out * x + c
            return out
        x = as_rational(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def scaled(self, c: RationalLike) -> UniPoly:
        """p(c*x)."""
        c = as_rational(c)
        return UniPoly(tuple(a * c**i for i, a in enumerate(self.coeffs)), self.var)

    def derivative(self) -> UniPoly:
        return UniPoly(tuple(i * a for i, a in enumerate(self.coeffs) if i), self.var)

    def monic(self) -> UniPoly:
        if not self.coeffs:
            return self
        return self / self.leading

    def divmod(self, other: UniPoly) -> tuple[UniPoly, UniPoly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        lead = other.leading
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i] / lead
            if c:
                quot[i - dq] = c
                for j, b in enumerate(other.coeffs):
                    rem[i - dq + j] -= c * b
        return UniPoly(tuple(quot), self.var), UniPoly(tuple(rem[:dq]), self.var)

    def to_json(self) -> dict[str, str]:
        return {str(i): str(c) for i, c in enumerate(self.coeffs) if c}

    @classmethod
    def from_json(cls, data: Mapping[str, RationalLike], var: str = "k") -> UniPoly:
        try:
            items = {int(i): as_rational(c) for i, c in data.items()}
        except (TypeError, ValueError) as exc:
            raise ParseError(f"bad polynomial coefficient map: {data!r}") from exc
        if any(i < 0 for i in items):
            raise ParseError("negative exponent")
        top = max(items, default=-1)
        return cls(tuple(items.get(i, 0) for i in range(top + 1)), var)

    def __str__(self) -> str:
        return _render_terms(((c, {self.var: i}) for i, c in reversed(list(enumerate(self.coeffs)))))


def _render_terms(terms: Iterable[tuple[Fraction, dict[str, int]]]) -> str:
    parts = []
    for c, powers in terms:
        if not c:
            continue
        mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in powers.items() if e)
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd over Q (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic()


def binomial_poly(i: int, var: str = "k") -> UniPoly:
    """C(x, i) = x(x-1)...(x-i+1)/i! as a polynomial in ``var``."""
    if i < 0:
        raise ValueError("binomial index must be non-negative")
    out = UniPoly.constant(1, var)
    for j in range(i):
        out = out * UniPoly((-j, 1), var) / (j + 1)
    return out


def shifted_binomial_poly(shift: int, i: int, var: str = "k") -> UniPoly:
    """C(x + shift, i)."""
    return binomial_poly(i, var)(UniPoly((shift, 1), var))


def from_binomial_basis(coeffs: Sequence[RationalLike], var: str = "k") -> UniPoly:
    out = UniPoly((), var)
    for i, c in enumerate(coeffs):
        out = out + binomial_poly(i, var) * as_rational(c)
    return out


def eval_binomial_basis(coeffs: Sequence[Fraction], x: int) -> Fraction:
    total = Fraction(0)
    b = Fraction(1)
    for i, c in enumerate(coeffs):
        total += c * b
        b = b * (x - i) / (i + 1)
    return total


def to_binomial_basis(
    p: UniPoly | Callable[[int], RationalLike], degree: int | None = None
) -> list[Fraction]:
    """Coefficients c_0..c_d with p(k) = sum c_i C(k, i).

    Solves the triangular system on k = 0..d by forward differences, then
    re-checks k = d+1..2d+2. ``p`` may be any integer-argument callable when
    ``degree`` is given; a mismatch raises :class:`NotPolynomialError`.
    """
    if degree is None:
        if not isinstance(p, UniPoly):
            raise TypeError("degree is required for a non-polynomial sampler")
        degree = p.degree
    if degree < 0:
        degree = 0
    values = [as_rational(p(k)) for k in range(degree + 1)]
    coeffs = []
    row = values
    for _ in range(degree + 1):
        coeffs.append(row[0])
        row = [b - a for a, b in zip(row, row[1:])]
    for k in range(degree + 1, 2 * degree + 3):
        got = eval_binomial_basis(coeffs, k)
        want = as_rational(p(k))
        if got != want:
            raise NotPolynomialError(
                f"binomial interpolant of degree {degree} gives {got} at k={k}, sample is {want}"
            )
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


@dataclass(frozen=True)
class BiPoly:
    """Sparse polynomial in (k, r); key (i, j) is the coefficient of k^i r^j."""

    terms: Mapping = None

    def __post_init__(self):
        clean = {}
        for (i, j), c in (self.terms or {}).items():
            c = as_rational(c)
            if c:
                clean[(int(i), int(j))] = c
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    @classmethod
    def from_k(cls, p: UniPoly) -> BiPoly:
        return cls({(i, 0): c for i, c in enumerate(p.coeffs)})

    @classmethod
    def from_r(cls, p: UniPoly) -> BiPoly:
        return cls({(0, j): c for j, c in enumerate(p.coeffs)})

    def coefficient(self, i: int, j: int) -> Fraction:
        return self.terms.get((i, j), Fraction(0))

    def k_coefficient(self, i: int) -> UniPoly:
        """Coefficient of k^i, as a polynomial in r."""
        js = {j: c for (a, j), c in self.terms.items() if a == i}
        top = max(js, default=-1)
        return UniPoly(tuple(js.get(j, 0) for j in range(top + 1)), "r")

    def support(self) -> list[tuple[int, int]]:
        return list(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BiPoly({(0, 0): other})
        if not isinstance(other, BiPoly):
            return NotImplemented
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, Fraction(0)) + c
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self) -> BiPoly:
        return BiPoly({key: -c for key, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return BiPoly({key: c * other for key, c in self.terms.items()})
        if not isinstance(other, BiPoly):
            return NotImplemented
        out: dict[tuple[int, int], Fraction] = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in other.terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, Fraction(0)) + a * b
        return BiPoly(out)

    __rmul__ = __mul__

    def __call__(self, k: RationalLike, r: RationalLike) -> Fraction:
        k, r = as_rational(k), as_rational(r)
        return sum((c * k**i * r**j for (i, j), c in self.terms.items()), Fraction(0))

    def to_json(self) -> dict[str, str]:
        return {f"{i},{j}": str(c) for (i, j), c in self.terms.items()}

    def __str__(self) -> str:
        ordered = sorted(self.terms.items(), key=lambda kv: (-kv[0][0], -kv[0][1]))
        return _render_terms((c, {"k": i, "r": j}) for (i, j), c in ordered)


def compose_scale(p: UniPoly) -> BiPoly:
    """p(k*r) for p in k."""
    return BiPoly({(i, i): c for i, c in enumerate(p.coeffs)})


def coefficient(q: BiPoly, i: int, j: int) -> Fraction:
    return q.coefficient(i, j)


@dataclass(frozen=True)
class RationalFunctionEps:
    """numerator/denominator in eps, kept coprime with monic denominator."""

    numerator: UniPoly
    denominator: UniPoly = UniPoly((1,), "eps")

    def __post_init__(self):
        num = self.numerator.rename("eps")
        den = self.denominator.rename("eps")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = num.divmod(g)[0]
            den = den.divmod(g)[0]
        lead = den.leading
        if num.is_zero():
            den = UniPoly((1,), "eps")
        else:
            num, den = num / lead, den / lead
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    @classmethod
    def of(cls, x) -> RationalFunctionEps:
        if isinstance(x, RationalFunctionEps):
            return x
        if isinstance(x, UniPoly):
            return cls(x)
        return cls(UniPoly.constant(as_rational(x), "eps"))

    def __add__(self, other):
        o = RationalFunctionEps.of(other)
        return RationalFunctionEps(
            self.numerator * o.denominator + o.numerator * self.denominator,
            self.denominator * o.denominator,
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunctionEps(-self.numerator, self.denominator)

    def __sub__(self, other):
        return self + (-RationalFunctionEps.of(other))

    def __rsub__(self, other):
        return RationalFunctionEps.of(other) - self

    def __mul__(self, other):
        o = RationalFunctionEps.of(other)
        return RationalFunctionEps(self.numerator * o.numerator, self.denominator * o.denominator)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RationalFunctionEps.of(other)
        if o.numerator.is_zero():
            raise ZeroDivisionError("division by the zero function")
        return RationalFunctionEps(self.numerator * o.denominator, self.denominator * o.numerator)

    def __rtruediv__(self, other):
        return RationalFunctionEps.of(other) / self

    def __call__(self, e: RationalLike) -> Fraction:
        e = as_rational(e)
        den = self.denominator(e)
        if den == 0:
            raise PoleError(f"pole at eps={e}")
        return self.numerator(e) / den

    def derivative_at_zero(self) -> Fraction:
        n0, d0 = self.numerator[0], self.denominator[0]
        if d0 == 0:
            raise PoleError("pole at eps=0")
        return (self.numerator[1] * d0 - n0 * self.denominator[1]) / (d0 * d0)

    def to_json(self) -> dict:
        return {
            "numerator": self.numerator.to_json(),
            "denominator": self.denominator.to_json(),
            "text": str(self),
        }

    def __str__(self) -> str:
        if self.denominator.degree == 0:
            return str(self.numerator)
        return f"({self.numerator})/({self.denominator})"


EPS = RationalFunctionEps(UniPoly((0, 1), "eps"))


def eval_rational_fn(f: RationalFunctionEps, e: RationalLike) -> Fraction:
    return f(e)


def derivative_at_zero(f: RationalFunctionEps) -> Fraction:
    return f.derivative_at_zero()
