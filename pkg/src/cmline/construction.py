"""JSON construction trees and the builtin example families.

A tree is a nested dict whose ``type`` is one of ``proj_bundle``, ``blowup``,
``product``, ``twist``, ``scale`` or ``corrupt``. Rationals are ``"p/q"``
strings (or bare integers). A blowup whose ``epsilon`` is ``"eps"`` or absent is
symbolic; :func:`build` binds every symbolic epsilon to the ``eps`` argument.
"""
from __future__ import annotations

import copy
import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .errors import ParseError, PreconditionError
from .exactalg import UniPoly, as_rational
from .family import (
    BlowupFamily,
    FamilyData,
    MultisectionSpec,
    blowup,
    fibred_product,
    proj_bundle,
    scale,
    twist,
)

SYMBOLIC = "eps"

_EX52_BASE = {"type": "proj_bundle", "base_genus": 0, "degrees": [2, -1, -1]}
_EX52_BLOWUP = {
    "type": "blowup",
    "ambient": _EX52_BASE,
    "multisection": {"d": 1, "canonical_degree": -2, "deg_L": "-2", "deg_K_rel": "6"},
    "epsilon": SYMBOLIC,
}
_EX54_BLOWUP = {
    "type": "blowup",
    "ambient": _EX52_BASE,
    "multisection": {"d": 1, "canonical_degree": -2, "deg_L": "1", "deg_K_rel": "-3"},
    "epsilon": SYMBOLIC,
}
# Three disjoint sections of P(E) with deg L|_C_i = 1, each the image of a
# generic map O(-1) -> E; blown up together as one multisection of degree 3.
_EX55_ITERATED = {
    "type": "blowup",
    "ambient": dict(_EX52_BLOWUP, epsilon="1/10"),
    "multisection": {"d": 3, "canonical_degree": -6, "deg_L": "3", "deg_K_rel": "-9"},
    "epsilon": "1/1000",
}
_EX56_PRODUCT = {
    "type": "product",
    "left": dict(_EX52_BLOWUP, epsilon="1/10"),
    "right": _EX52_BASE,
}

BUILTINS: dict[str, dict] = {
    "ex5_2_base": _EX52_BASE,
    "ex5_2_blowup": _EX52_BLOWUP,
    "ex5_4_blowup": _EX54_BLOWUP,
    "ex5_5_iterated": _EX55_ITERATED,
    "ex5_6_product": _EX56_PRODUCT,
}


def builtin(name: str) -> dict:
    try:
        return copy.deepcopy(BUILTINS[name])
    except KeyError:
        raise ParseError(f"unknown builtin {name!r}") from None


def load(source: str) -> dict:
    """A builtin name or the path of a JSON construction document."""
    if source in BUILTINS:
        return builtin(source)
    path = Path(source)
    if not path.is_file():
        raise ParseError(f"{source!r} is neither a builtin nor a readable file")
    try:
        tree = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: invalid JSON ({exc})") from exc
    if not isinstance(tree, dict):
        raise ParseError(f"{source}: top level must be an object")
    return tree


def _get(node: dict, key: str, default: Any = ...) -> Any:
    if key in node:
        return node[key]
    if default is ...:
        raise ParseError(f"{node.get('type', '?')} node is missing {key!r}")
    return default


def _int(value: Any, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{what} must be an integer, got {value!r}")
    return value


def _rational(value: Any, what: str) -> Fraction:
    if isinstance(value, float):
        raise ParseError(f"{what} must be exact ('p/q' string or integer), got float {value!r}")
    try:
        return as_rational(value)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{what}: {exc}") from exc


def _node(value: Any, what: str) -> dict:
    if not isinstance(value, dict):
        raise ParseError(f"{what} must be a construction object")
    return value


def parse_multisection(data: Any) -> MultisectionSpec:
    data = _node(data, "multisection")
    return MultisectionSpec(
        d=_int(_get(data, "d"), "multisection d"),
        canonical_degree_C=_int(_get(data, "canonical_degree"), "canonical_degree"),
        deg_L_C=_rational(_get(data, "deg_L"), "deg_L"),
        deg_Krel_C=_rational(_get(data, "deg_K_rel"), "deg_K_rel"),
    )


def epsilon_of(node: dict) -> Fraction | None:
    """The blowup's epsilon, or None when symbolic."""
    raw = node.get("epsilon", SYMBOLIC)
    if raw == SYMBOLIC:
        return None
    return _rational(raw, "epsilon")


def is_symbolic(tree: dict) -> bool:
    kind = tree.get("type")
    if kind == "blowup" and epsilon_of(tree) is None:
        return True
    return any(
        isinstance(tree.get(key), dict) and is_symbolic(tree[key])
        for key in ("ambient", "left", "right", "family")
    )


def build(tree: dict, eps: Fraction | None = None) -> FamilyData:
    """Evaluate a construction tree. Symbolic epsilons are bound to ``eps``."""
    tree = _node(tree, "construction")
    kind = _get(tree, "type")
    if kind == "proj_bundle":
        degrees = _get(tree, "degrees")
        if not isinstance(degrees, list):
            raise ParseError("degrees must be a list of integers")
        return proj_bundle(
            _int(tree.get("base_genus", 0), "base_genus"),
            [_int(d, "degree") for d in degrees],
        )
    if kind == "blowup":
        bf = build_blowup(tree, eps)
        e = epsilon_of(tree)
        if e is None:
            if eps is None:
                raise PreconditionError("construction has a symbolic epsilon; a value is required here")
            e = eps
        return bf.at(e)
    if kind == "product":
        return fibred_product(
            build(_node(_get(tree, "left"), "left"), eps),
            build(_node(_get(tree, "right"), "right"), eps),
        )
    if kind == "twist":
        return twist(build(_node(_get(tree, "family"), "family"), eps), _rational(_get(tree, "t"), "t"))
    if kind == "scale":
        return scale(build(_node(_get(tree, "family"), "family"), eps), _int(_get(tree, "r"), "r"))
    if kind == "corrupt":
        return _corrupt(build(_node(_get(tree, "family"), "family"), eps), tree)
    raise ParseError(f"unknown construction type {kind!r}")


def build_blowup(tree: dict, eps: Fraction | None = None) -> BlowupFamily:
    """The symbolic blowup at the root of ``tree`` (its ambient is built with ``eps``)."""
    tree = _node(tree, "construction")
    if tree.get("type") != "blowup":
        raise PreconditionError(f"expected a blowup construction, got {tree.get('type')!r}")
    ambient = build(_node(_get(tree, "ambient"), "ambient"), eps)
    return BlowupFamily(ambient, parse_multisection(_get(tree, "multisection")))


def _corrupt(f: FamilyData, node: dict) -> FamilyData:
    """Negative-control fixture: add the given shifts to a family's profile."""
    shift = _node(node.get("shift", {}), "shift")
    unknown = set(shift) - {"deg_L_top", "deg_KL", "hilb", "pushforward"}
    if unknown:
        raise ParseError(f"cannot corrupt {sorted(unknown)}")
    push = f.pushforward
    if "pushforward" in shift:
        if push is None:
            raise ParseError("cannot shift a pushforward the family does not carry")
        push = push + UniPoly.from_json(_node(shift["pushforward"], "pushforward shift"))
    if node.get("drop_pushforward", False):
        push = None
    hilb = f.hilb
    if "hilb" in shift:
        hilb = hilb + UniPoly.from_json(_node(shift["hilb"], "hilb shift"))
    return FamilyData(
        n=f.n,
        genus_base=f.genus_base,
        hilb=hilb,
        deg_L_top=f.deg_L_top + _rational(shift.get("deg_L_top", 0), "deg_L_top shift"),
        deg_KL=f.deg_KL + _rational(shift.get("deg_KL", 0), "deg_KL shift"),
        pushforward=push,
        label=f"corrupt({f.label})",
    )
