from __future__ import annotations

import re
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from cmline.exactalg import UniPoly, to_binomial_basis  # noqa: E402
from cmline.family import (  # noqa: E402
    FamilyData,
    MultisectionSpec,
    fibred_product,
    proj_bundle,
    scale,
    twist,
)

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

FIXTURES = Path(__file__).parent / "fixtures"

small_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)
positive_rationals = st.fractions(min_value=Fraction(1, 7), max_value=5, max_denominator=7)


@st.composite
def split_bundles(draw, genus=None, min_rank=2, max_rank=4):
    g = draw(st.integers(0, 3)) if genus is None else genus
    degrees = draw(st.lists(st.integers(-4, 4), min_size=min_rank, max_size=max_rank))
    return g, degrees


@st.composite
def pushforward_families(draw, genus=0, max_n=5):
    """Families built from split bundles by twist, scale and fibred product."""
    g, degrees = draw(split_bundles(genus=genus, max_rank=3))
    f = proj_bundle(g, degrees)
    for _ in range(draw(st.integers(0, 3))):
        op = draw(st.sampled_from(["twist", "scale", "product"]))
        if op == "twist":
            f = twist(f, draw(small_rationals))
        elif op == "scale":
            f = scale(f, draw(st.integers(1, 3)))
        elif f.n + 1 <= max_n:
            _, other = draw(split_bundles(genus=g, max_rank=2))
            f = fibred_product(f, proj_bundle(g, other))
    return f


@st.composite
def synthetic_profiles(draw, max_n=3):
    """GRR-consistent profiles with arbitrary Hilbert polynomial and pushforward.

    Not geometric in general, but every identity checked here is polynomial
    in the profile, and these have nonzero CM degree.
    """
    n = draw(st.integers(1, max_n))
    lower = draw(st.lists(small_rationals, min_size=n, max_size=n))
    hilb = UniPoly(tuple(lower) + (draw(positive_rationals),), "k")
    push = UniPoly(tuple(draw(st.lists(small_rationals, min_size=n + 2, max_size=n + 2))), "k")
    lam = to_binomial_basis(push)
    lam += [Fraction(0)] * (n + 2 - len(lam))
    return FamilyData(
        n=n,
        genus_base=0,
        hilb=hilb,
        deg_L_top=lam[n + 1],
        deg_KL=n * lam[n + 1] - 2 * lam[n],
        pushforward=push,
        label="synthetic",
    )


@st.composite
def multisections(draw):
    d = draw(st.integers(1, 3))
    return MultisectionSpec(
        d=d,
        canonical_degree_C=draw(st.integers(-2 * d, 6)),
        deg_L_C=draw(small_rationals),
        deg_Krel_C=draw(small_rationals),
    )


@st.composite
def relative_surfaces(draw):
    """Relative dimension 2 families: P^2-bundles, twisted or scaled."""
    g, degrees = draw(split_bundles(min_rank=3, max_rank=3))
    f = proj_bundle(g, degrees)
    if draw(st.booleans()):
        f = twist(f, draw(small_rationals))
    if draw(st.booleans()):
        f = scale(f, draw(st.integers(1, 3)))
    return f


# One summary line per acceptance criterion, printed at the end of the run.
_CRITERION_RE = re.compile(r"test_criterion_(\d+)_([A-Za-z0-9_]+?)(?:\[|$)")
_acceptance: dict[tuple[int, str], list[str]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when != "call" and not report.failed:
        return
    m = _CRITERION_RE.search(report.nodeid.split("::")[-1])
    if m:
        _acceptance.setdefault((int(m.group(1)), m.group(2)), []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for (num, name), outcomes in sorted(_acceptance.items()):
        status = "PASS" if all(o == "passed" for o in outcomes) else "FAIL"
        terminalreporter.write_line(f"criterion {num:2d} {status}  {name} ({len(outcomes)} case(s))")


@pytest.fixture
def fixture_tree():
    import json

    def load(name: str) -> dict:
        return json.loads((FIXTURES / name).read_text())

    return load
