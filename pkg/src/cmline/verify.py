"""Executable checks of the identities satisfied by the line-bundle degrees.

Every check returns a :class:`VerificationReport`; none of them raise on a
failed identity. A disagreement between two independent routes to the CM
degree (see :func:`cmline.lines.cm_degree`) is reported as a failure whose
witness carries both values.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Any, Callable

from . import lines
from .construction import build, build_blowup
from .errors import CapabilityError, InconsistentFamilyError
from .exactalg import BiPoly, RationalFunctionEps, UniPoly, eval_binomial_basis, to_binomial_basis
from .family import FamilyData, MultisectionSpec, fibred_product, scale, twist

PASS = "pass"
FAIL = "fail"


@dataclass(frozen=True)
class VerifyConfig:
    r_max: int = 5
    t_values: tuple = tuple(Fraction(t) for t in range(-3, 4))
    # value bound to symbolic epsilons when a numeric family is needed
    eps: Fraction = Fraction(1, 10)


@dataclass(frozen=True)
class VerificationReport:
    check_name: str
    status: str
    witness: dict = field(compare=True)
    family_label: str = ""

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_json(self) -> dict:
        return {
            "check": self.check_name,
            "status": self.status,
            "family": self.family_label,
            "witness": render(self.witness),
        }


def render(x: Any) -> Any:
    """JSON-ready copy with rationals as "p/q" strings."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (UniPoly, BiPoly, RationalFunctionEps)):
        return x.to_json()
    if isinstance(x, dict):
        return {str(k): render(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [render(v) for v in x]
    raise TypeError(f"cannot render {type(x).__name__}")


def _report(name: str, ok: bool, witness: dict, label: str) -> VerificationReport:
    return VerificationReport(name, PASS if ok else FAIL, witness, label)


def _inconsistent(name: str, exc: InconsistentFamilyError, **extra) -> VerificationReport:
    witness = {"path": exc.label, "quantity": exc.quantity, **exc.values, **extra}
    return VerificationReport(name, FAIL, witness, exc.label)


def check_homogeneity(f: FamilyData, r_max: int = 5) -> VerificationReport:
    name = "homogeneity"
    try:
        base = lines.cm_degree(f)
        rows = []
        for r in range(1, r_max + 1):
            g = scale(f, r)
            lhs = lines.cm_degree(g)
            rows.append({"r": r, "path": g.label, "lhs": lhs, "rhs": r**f.n * base})
    except InconsistentFamilyError as exc:
        return _inconsistent(name, exc)
    ok = all(row["lhs"] == row["rhs"] for row in rows)
    return _report(name, ok, {"n": f.n, "cm_degree": base, "rows": rows}, f.label)


def check_rigidity(f: FamilyData, t_values=tuple(range(-3, 4))) -> VerificationReport:
    name = "rigidity"
    with_hilb = f.pushforward is not None
    try:
        base = lines.cm_degree(f)
        base_hilb = lines.hilb_degree_bipoly(f) if with_hilb else None
        rows = []
        for t in t_values:
            g = twist(f, t)
            row = {"t": Fraction(t), "path": g.label, "lhs": lines.cm_degree(g), "rhs": base}
            if with_hilb:
                row["hilb_lhs"] = lines.hilb_degree_bipoly(g)
                row["hilb_rhs"] = base_hilb
            rows.append(row)
    except InconsistentFamilyError as exc:
        return _inconsistent(name, exc)
    ok = all(
        row["lhs"] == row["rhs"] and row.get("hilb_lhs") == row.get("hilb_rhs") for row in rows
    )
    return _report(name, ok, {"cm_degree": base, "hilb_clause": with_hilb, "rows": rows}, f.label)


def check_product_additivity(f1: FamilyData, f2: FamilyData) -> VerificationReport:
    name = "product_additivity"
    try:
        prod = fibred_product(f1, f2)
        lhs = lines.cm_prime_degree(prod)
        left, right = lines.cm_prime_degree(f1), lines.cm_prime_degree(f2)
    except InconsistentFamilyError as exc:
        return _inconsistent(name, exc)
    witness = {
        "path": prod.label,
        "n": prod.n,
        "product_deg_L_top": prod.deg_L_top,
        "product_deg_KL": prod.deg_KL,
        "lhs": lhs,
        "rhs": left + right,
        "factor_cm_prime": [left, right],
    }
    return _report(name, lhs == left + right, witness, prod.label)


def check_prop31(f: FamilyData) -> VerificationReport:
    """Leading-order structure of deg lambda_Hilb(X, L^r, k) and deg lambda_CH(X, L^r).

    The CM degree on the right-hand sides comes from the intersection numbers,
    independently of the pushforward used on the left.
    """
    name = "prop31"
    if f.pushforward is None:
        raise CapabilityError("prop31 needs the pushforward")
    n, a0 = f.n, f.a0
    cm = lines.cm_degree_profile(f)
    hilb = lines.hilb_degree_bipoly(f)
    ch = lines.ch_degree(f)

    lead = hilb.coefficient(n + 1, 2 * n)
    lead_expected = a0 / (2 * factorial(n + 1)) * cm
    bad_support = [
        (i, j)
        for (i, j) in hilb.support()
        if i > n + 1 or j > 2 * n + 1 or (i == n + 1 and j > 2 * n)
    ]
    ch_lead = ch[2 * n]
    ch_expected = a0 / 2 * cm
    top_k = hilb.k_coefficient(n + 1) * factorial(n + 1)

    clauses = {
        "leading_coefficient": lead == lead_expected,
        "support_shape": not bad_support,
        "ch_leading": ch_lead == ch_expected,
        "ch_hilb_link": top_k == ch,
    }
    witness = {
        "clauses": clauses,
        "cm_degree": cm,
        "coefficient_n+1_2n": {"lhs": lead, "rhs": lead_expected},
        "coefficient_n+1_2n+1": hilb.coefficient(n + 1, 2 * n + 1),
        "support_violations": [list(ij) for ij in bad_support],
        "ch_r^2n": {"lhs": ch_lead, "rhs": ch_expected},
        "ch_degree": ch,
        "top_k_coefficient_times_factorial": top_k,
    }
    return _report(name, all(clauses.values()), witness, f.label)


def check_mk_consistency(f: FamilyData) -> VerificationReport:
    name = "mk_consistency"
    if f.pushforward is None:
        raise CapabilityError("mk_consistency needs the pushforward")
    n, push = f.n, f.pushforward
    lam = to_binomial_basis(push)
    lam += [Fraction(0)] * (n + 2 - len(lam))
    mismatches = [
        {"k": k, "lhs": eval_binomial_basis(lam, k), "rhs": push(k)}
        for k in range(0, 2 * n + 5)
        if eval_binomial_basis(lam, k) != push(k)
    ]
    grr_top = {"lhs": lam[n + 1], "rhs": f.deg_L_top}
    grr_sub = {"lhs": n * lam[n + 1] - 2 * lam[n], "rhs": f.deg_KL}
    clauses = {
        "degree": push.degree <= n + 1,
        "reconstruction": not mismatches,
        "grr_top": grr_top["lhs"] == grr_top["rhs"],
        "grr_canonical": grr_sub["lhs"] == grr_sub["rhs"],
    }
    witness = {
        "clauses": clauses,
        "pushforward": push,
        "pushforward_degree": push.degree,
        "max_degree": n + 1,
        "lambda": lam,
        "reconstruction_mismatches": mismatches,
        "grr_top": grr_top,
        "grr_canonical": grr_sub,
    }
    return _report(name, all(clauses.values()), witness, f.label)


def check_sigma_first_order(ambient: FamilyData, ms: MultisectionSpec) -> VerificationReport:
    name = "sigma_first_order"
    fn = lines.cm_eps_function(ambient, ms)
    sigma = lines.sigma_blowup(ambient, ms)
    slope = fn.derivative_at_zero()
    try:
        cm0 = lines.cm_degree(ambient)
    except InconsistentFamilyError as exc:
        return _inconsistent(name, exc, sigma=sigma)
    witness = {
        "cm_eps": fn,
        "derivative_at_zero": slope,
        "sigma": sigma,
        "value_at_zero": fn(0),
        "ambient_cm_degree": cm0,
        "path": ambient.label,
    }
    ok = slope == sigma and fn(0) == cm0
    return _report(name, ok, witness, f"blowup({ambient.label})")


CHECK_NAMES = (
    "homogeneity",
    "mk_consistency",
    "product_additivity",
    "prop31",
    "rigidity",
    "sigma_first_order",
)


def _targets(target: Any, config: VerifyConfig):
    if isinstance(target, FamilyData):
        return target, None
    family = build(target, config.eps)
    blow = None
    if target.get("type") == "blowup":
        bf = build_blowup(target, config.eps)
        blow = (bf.ambient, bf.ms)
    return family, blow


def applicable_checks(target: Any, config: VerifyConfig = VerifyConfig()) -> dict[str, Callable[[], VerificationReport]]:
    family, blow = _targets(target, config)
    checks: dict[str, Callable[[], VerificationReport]] = {
        "homogeneity": lambda: check_homogeneity(family, config.r_max),
        "rigidity": lambda: check_rigidity(family, config.t_values),
        "product_additivity": lambda: check_product_additivity(family, family),
    }
    if family.pushforward is not None:
        checks["prop31"] = lambda: check_prop31(family)
        checks["mk_consistency"] = lambda: check_mk_consistency(family)
    if blow is not None:
        checks["sigma_first_order"] = lambda: check_sigma_first_order(*blow)
    return dict(sorted(checks.items()))


def run_check(name: str, target: Any, config: VerifyConfig = VerifyConfig()) -> VerificationReport:
    if name not in CHECK_NAMES:
        raise KeyError(name)
    checks = applicable_checks(target, config)
    if name not in checks:
        raise CapabilityError(f"check {name!r} does not apply to this family")
    return checks[name]()


def run_all(target: Any, config: VerifyConfig = VerifyConfig()) -> list[VerificationReport]:
    """Every applicable check on a FamilyData or a construction tree, ordered by name."""
    return [run() for run in applicable_checks(target, config).values()]
