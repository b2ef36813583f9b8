"""Versioned JSON encoding of the exact types, plus body-file parsing.

Rationals travel as "p/q" strings (plain "p" when integral), quadratic
values as {"a", "b", "d"} objects, +infinity as "inf".  Every top-level
document carries schema "cglab/1".  Emission is deterministic: sorted keys,
fixed separators, no floats anywhere.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .bodies import (
    ConvexBody,
    Ellipsoid,
    IrrationalLine,
    MotzkinSum,
    RationalPoly,
    Segment,
    ShiftedHyperbola,
)
from .hilbert import RationalCone
from .polytope import HPolyhedron, VPolyhedron
from .qfield import ExtValue, QuadValue

SCHEMA = "cglab/1"


def enc_fraction(f) -> str:
    f = Fraction(f)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def dec_fraction(s) -> Fraction:
    return Fraction(s)


def enc_quad(v: QuadValue):
    v = QuadValue.of(v)
    if v.is_rational:
        return enc_fraction(v.a)
    return {"a": enc_fraction(v.a), "b": enc_fraction(v.b), "d": v.d}


def dec_quad(obj) -> QuadValue:
    if isinstance(obj, dict):
        return QuadValue(dec_fraction(obj["a"]), dec_fraction(obj.get("b", 0)), int(obj.get("d", 0)))
    return QuadValue(dec_fraction(obj))


def enc_ext(v: ExtValue):
    return "inf" if not v.is_finite else enc_quad(v.value)


def dec_ext(obj) -> ExtValue:
    if obj == "inf":
        return ExtValue.infinity()
    return ExtValue(dec_quad(obj))


def enc_vec(v):
    return [enc_quad(x) if isinstance(x, QuadValue) else enc_fraction(x) for x in v]


def dec_frac_vec(v):
    return tuple(dec_fraction(x) for x in v)


def dec_quad_vec(v):
    return tuple(dec_quad(x) for x in v)


def enc_hpoly(P: HPolyhedron):
    return {
        "A": [[enc_fraction(x) for x in row] for row in P.A],
        "b": [enc_fraction(x) for x in P.b],
    }


def dec_hpoly(obj) -> HPolyhedron:
    A = [dec_frac_vec(row) for row in obj["A"]]
    b = dec_frac_vec(obj["b"])
    return HPolyhedron.make(A, b)


def enc_vpoly(V: VPolyhedron):
    return {
        "vertices": [enc_vec(v) for v in V.vertices],
        "rays": [enc_vec(r) for r in V.rays],
        "lineality": [enc_vec(l) for l in V.lineality],
    }


def dec_vpoly(obj) -> VPolyhedron:
    return VPolyhedron.make(
        [dec_frac_vec(v) for v in obj.get("vertices", [])],
        [dec_frac_vec(r) for r in obj.get("rays", [])],
        [dec_frac_vec(l) for l in obj.get("lineality", [])],
    )


def enc_body(body: ConvexBody):
    if isinstance(body, ShiftedHyperbola):
        return {"type": "hyperbola", "s": enc_vec(body.shift), "r": enc_fraction(body.level)}
    if isinstance(body, RationalPoly):
        return {"type": "polyhedron", **enc_hpoly(body.hrep)}
    if isinstance(body, MotzkinSum):
        return {
            "type": "motzkin",
            "compact": enc_vpoly(body.compact),
            "cone": [list(g) for g in body.cone.generators],
        }
    if isinstance(body, Ellipsoid):
        return {
            "type": "ellipsoid",
            "center": enc_vec(body.center),
            "Q": [[enc_fraction(x) for x in row] for row in body.shape],
        }
    if isinstance(body, IrrationalLine):
        return {"type": "line", "direction": [enc_quad(x) for x in body.direction]}
    if isinstance(body, Segment):
        return {"type": "segment", "p": [enc_quad(x) for x in body.p], "q": [enc_quad(x) for x in body.q]}
    raise ValueError(f"cannot encode body {type(body).__name__}")


def dec_body(obj) -> ConvexBody:
    kind = obj["type"]
    if kind == "hyperbola":
        return ShiftedHyperbola(shift=dec_frac_vec(obj["s"]), level=dec_fraction(obj["r"]))
    if kind == "polyhedron":
        return RationalPoly(dec_hpoly(obj))
    if kind == "motzkin":
        cone_gens = [tuple(int(x) for x in g) for g in obj["cone"]]
        compact = dec_vpoly(obj["compact"])
        return MotzkinSum(compact, RationalCone.make(cone_gens, n=compact.n))
    if kind == "ellipsoid":
        return Ellipsoid(
            center=dec_frac_vec(obj["center"]),
            shape=tuple(dec_frac_vec(row) for row in obj["Q"]),
        )
    if kind == "line":
        return IrrationalLine(direction=dec_quad_vec(obj["direction"]))
    if kind == "segment":
        return Segment(p=dec_quad_vec(obj["p"]), q=dec_quad_vec(obj["q"]))
    raise ValueError(f"unknown body type {kind!r}")


def load_body(path) -> ConvexBody:
    with open(path) as fh:
        obj = json.load(fh)
    if "schema" in obj and obj["schema"] != SCHEMA:
        raise ValueError(f"unsupported schema {obj['schema']!r}")
    return dec_body(obj)


def dumps(payload: dict) -> str:
    """Deterministic document text: schema-tagged, sorted keys."""
    doc = {"schema": SCHEMA, **payload}
    return json.dumps(doc, sort_keys=True, indent=2, separators=(",", ": ")) + "\n"
