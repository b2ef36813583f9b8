"""Exact rational polyhedra: H- and V-representations and their conversion.

The double description runs over the homogenization cone, with the
combinatorial adjacency test and lineality handled by pivoting, so a single
engine serves H->V, V->H, redundancy removal, recession cones and the
support LP.  Everything is Fraction arithmetic; rows and generators are
canonicalised to coprime integers so set comparisons are syntactic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import config
from .errors import EmptyPolyhedron, UnboundedDirection
from .linalg import fdot, kernel
from .qfield import ExtValue, QuadValue


def _primitive(vec, orient=False):
    """Scale to coprime integers (positive multiple only).

    With orient=True also flips sign so the first nonzero entry is positive;
    for rays the sign is meaningful and must be preserved.
    """
    fracs = [Fraction(x) for x in vec]
    den = 1
    for f in fracs:
        den = den * f.denominator // math.gcd(den, f.denominator)
    ints = [f.numerator * (den // f.denominator) for f in fracs]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    if g:
        ints = [x // g for x in ints]
    if orient:
        lead = next((x for x in ints if x), 0)
        if lead < 0:
            ints = [-x for x in ints]
    return tuple(ints)


def _is_zero(vec) -> bool:
    return all(x == 0 for x in vec)


# -- core double description over a cone {y : r.y <= 0} -------------------


def _adjacent(r1, r2, rays, processed):
    common = [row for row in processed if fdot(row, r1) == 0 and fdot(row, r2) == 0]
    for r in rays:
        if r is r1 or r is r2:
            continue
        if all(fdot(row, r) == 0 for row in common):
            return False
    return True


def dd_cone(rows, dim):
    """Minimal generators of {y in R^dim : row . y <= 0 for all rows}.

    Returns (rays, lineality): extreme rays of the pointed part and a basis
    of the lineality space, both as primitive integer tuples.
    """
    lin = [tuple(Fraction(1 if j == i else 0) for j in range(dim)) for i in range(dim)]
    rays: list[tuple] = []
    processed: list[tuple] = []
    for row in rows:
        row = tuple(Fraction(x) for x in row)
        if _is_zero(row):
            continue
        s_lin = [fdot(row, l) for l in lin]
        hit = next((i for i, s in enumerate(s_lin) if s != 0), None)
        if hit is not None:
            l0, s0 = lin[hit], s_lin[hit]
            lin = [
                tuple(a - (s / s0) * b for a, b in zip(l, l0))
                for i, (l, s) in enumerate(zip(lin, s_lin))
                if i != hit
            ]
            rays = [
                tuple(a - (fdot(row, r) / s0) * b for a, b in zip(r, l0)) for r in rays
            ]
            r0 = l0 if s0 < 0 else tuple(-x for x in l0)
            rays.append(r0)
        else:
            vals = [fdot(row, r) for r in rays]
            neg = [r for r, v in zip(rays, vals) if v < 0]
            zero = [r for r, v in zip(rays, vals) if v == 0]
            pos = [r for r, v in zip(rays, vals) if v > 0]
            if not pos:
                processed.append(row)
                continue
            new = neg + zero
            for rp in pos:
                vp = fdot(row, rp)
                for rn in neg:
                    if _adjacent(rp, rn, rays, processed):
                        vn = fdot(row, rn)
                        combo = tuple(vp * a - vn * b for a, b in zip(rn, rp))
                        new.append(combo)
            rays = new
        processed.append(row)
    rays = sorted({_primitive(r) for r in rays if not _is_zero(_primitive(r))})
    lin = sorted({_primitive(l, orient=True) for l in lin if not _is_zero(l)})
    return rays, lin


# -- representations -------------------------------------------------------


@dataclass(frozen=True)
class VPolyhedron:
    """conv(vertices) + cone(rays) + span(lineality); empty iff no vertices."""

    vertices: tuple
    rays: tuple
    lineality: tuple

    @staticmethod
    def make(vertices=(), rays=(), lineality=()):
        vs = tuple(sorted({tuple(Fraction(x) for x in v) for v in vertices}))
        rs = tuple(sorted({_primitive(r) for r in rays if not _is_zero(r)}))
        ls = tuple(sorted({_primitive(l, orient=True) for l in lineality if not _is_zero(l)}))
        return VPolyhedron(vs, rs, ls)

    @property
    def n(self) -> int:
        for group in (self.vertices, self.rays, self.lineality):
            if group:
                return len(group[0])
        return 0

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def to_h(self) -> "HPolyhedron":
        return v_to_h(self)


@dataclass(frozen=True)
class HPolyhedron:
    """{x : Ax <= b} with coprime-integer rows; rows sorted for determinism."""

    A: tuple
    b: tuple
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @staticmethod
    def make(A, b, n=None):
        rows = set()
        for a_row, beta in zip(A, b, strict=True):
            merged = _primitive(tuple(a_row) + (beta,))
            a_part, beta_part = merged[:-1], merged[-1]
            if _is_zero(a_part):
                if beta_part < 0:
                    dim = n if n is not None else len(a_part)
                    return HPolyhedron.empty(dim)
                continue  # 0 <= nonneg: vacuous
            rows.add((a_part, beta_part))
        rows = sorted(rows)
        if not rows:
            dim = n if n is not None else (len(A[0]) if A else 0)
            return HPolyhedron(((0,) * dim,), (1,)) if dim else HPolyhedron((), ())
        return HPolyhedron(
            tuple(r[0] for r in rows), tuple(Fraction(r[1]) for r in rows)
        )

    @staticmethod
    def empty(n: int) -> "HPolyhedron":
        return HPolyhedron(((0,) * n,), (-1,))

    @property
    def n(self) -> int:
        return len(self.A[0]) if self.A else 0

    def rows(self):
        return list(zip(self.A, self.b))

    def contains_point(self, x) -> bool:
        """Exact membership; x may have QuadValue entries."""
        for a_row, beta in zip(self.A, self.b):
            lhs = QuadValue.of(0)
            for ai, xi in zip(a_row, x, strict=True):
                lhs = lhs + QuadValue.of(xi) * ai
            if lhs.compare(beta) > 0:
                return False
        return True

    def to_v(self) -> VPolyhedron:
        if "vrep" not in self._cache:
            self._cache["vrep"] = h_to_v(self)
        return self._cache["vrep"]

    @property
    def is_empty(self) -> bool:
        return self.to_v().is_empty


def h_to_v(P: HPolyhedron) -> VPolyhedron:
    """Exact double description of {x : Ax <= b} via its homogenization."""
    n = P.n
    config.check_dimension(n)
    rows = [tuple(a) + (-beta,) for a, beta in zip(P.A, P.b)]
    rows.append((0,) * n + (-1,))  # homogenization variable t >= 0
    rays, lin = dd_cone(rows, n + 1)
    vertices = [
        tuple(Fraction(x, r[n]) for x in r[:n]) for r in rays if r[n] > 0
    ]
    vrays = [r[:n] for r in rays if r[n] == 0]
    vlin = [l[:n] for l in lin]
    return VPolyhedron.make(vertices, vrays, vlin)


def v_to_h(V: VPolyhedron) -> HPolyhedron:
    """Facet description by double description of the polar-side cone."""
    n = V.n
    config.check_dimension(n)
    if V.is_empty:
        return HPolyhedron.empty(n)
    rows = [tuple(v) + (-1,) for v in V.vertices]
    rows += [tuple(r) + (0,) for r in V.rays]
    for l in V.lineality:
        rows.append(tuple(l) + (0,))
        rows.append(tuple(-x for x in l) + (0,))
    rays, lin = dd_cone(rows, n + 1)
    A, b = [], []
    for r in rays:
        a_part, beta = r[:n], r[n]
        if _is_zero(a_part):
            continue  # the trivial inequality 0.x <= beta
        A.append(a_part)
        b.append(beta)
    for l in lin:
        a_part, beta = l[:n], l[n]
        if _is_zero(a_part):
            continue
        A.append(a_part)
        b.append(beta)
        A.append(tuple(-x for x in a_part))
        b.append(-beta)
    if not A:
        return HPolyhedron.make([], [], n=n)
    return HPolyhedron.make(A, b)


def dd_convert(P):
    """Round-trippable conversion between the two exact representations."""
    if isinstance(P, HPolyhedron):
        return P.to_v()
    if isinstance(P, VPolyhedron):
        return P.to_h()
    raise TypeError(f"not a polyhedron: {P!r}")


def _as_v(P) -> VPolyhedron:
    return P.to_v() if isinstance(P, HPolyhedron) else P


def _as_h(P) -> HPolyhedron:
    return P.to_h() if isinstance(P, VPolyhedron) else P


# -- support, faces, recession ---------------------------------------------


@dataclass(frozen=True)
class SupportResult:
    value: ExtValue
    attained: bool
    argmax: tuple | None

    @property
    def is_finite(self) -> bool:
        return self.value.is_finite


def support(P, c) -> SupportResult:
    """sup of c.x over P: exact optimum with an argmax vertex when finite."""
    V = _as_v(P)
    if V.is_empty:
        raise EmptyPolyhedron("support of the empty polyhedron")
    c = tuple(Fraction(x) for x in c)
    if any(fdot(c, l) != 0 for l in V.lineality):
        return SupportResult(ExtValue.infinity(), False, None)
    if any(fdot(c, r) > 0 for r in V.rays):
        return SupportResult(ExtValue.infinity(), False, None)
    best, arg = None, None
    for v in V.vertices:
        val = fdot(c, v)
        if best is None or val > best:
            best, arg = val, v
    return SupportResult(ExtValue.finite(best), True, arg)


@dataclass(frozen=True)
class Face:
    """Exposed face argmax(direction) of parent, with its tight rows."""

    parent: HPolyhedron
    direction: tuple
    active_rows: tuple
    vrep: VPolyhedron


def face_of(P, c) -> Face:
    H = _as_h(P)
    V = _as_v(P)
    c = tuple(Fraction(x) for x in c)
    res = support(V, c)
    if not res.is_finite:
        raise UnboundedDirection(f"no face in unbounded direction {c}")
    sigma = res.value.value.to_fraction()
    verts = [v for v in V.vertices if fdot(c, v) == sigma]
    rays = [r for r in V.rays if fdot(c, r) == 0]
    face = VPolyhedron.make(verts, rays, V.lineality)
    active = []
    for i, (a_row, beta) in enumerate(zip(H.A, H.b)):
        tight = all(fdot(a_row, v) == beta for v in verts)
        tight = tight and all(fdot(a_row, r) == 0 for r in rays)
        tight = tight and all(fdot(a_row, l) == 0 for l in V.lineality)
        if tight:
            active.append(i)
    return Face(H, c, tuple(active), face)


def recession_cone(P) -> list[tuple]:
    """Generators of rec(P) = {r : Ar <= 0} (lineality emitted as +-pairs)."""
    V = _as_v(P)
    if V.is_empty:
        raise EmptyPolyhedron("recession cone of the empty polyhedron")
    gens = list(V.rays)
    for l in V.lineality:
        gens.append(l)
        gens.append(tuple(-x for x in l))
    return sorted({_primitive(g) for g in gens})


def lineality_space(P) -> list[tuple]:
    V = _as_v(P)
    if V.is_empty:
        raise EmptyPolyhedron("lineality of the empty polyhedron")
    return list(V.lineality)


# -- containment and redundancy --------------------------------------------


def is_subset(P, Q, witness=True):
    """P <= Q with an exact witness point of P \\ Q on failure.

    Checks every vertex of P against Q's rows and every ray/lineality
    direction of P against rec(Q).
    """
    V = _as_v(P)
    H = _as_h(Q)
    if V.is_empty:
        return True, None
    if H.is_empty:
        return False, (V.vertices[0] if witness else None)
    for v in V.vertices:
        if not H.contains_point(v):
            return False, v
    base = V.vertices[0]
    directions = list(V.rays)
    for l in V.lineality:
        directions.append(l)
        directions.append(tuple(-x for x in l))
    for r in directions:
        for a_row, beta in zip(H.A, H.b):
            if fdot(a_row, r) > 0:
                if not witness:
                    return False, None
                # first scalar t where base + t r leaves this row, then +1
                t_exit = (beta - fdot(a_row, base)) / fdot(a_row, r)
                t = max(Fraction(0), t_exit) + 1
                point = tuple(x + t * d for x, d in zip(base, r))
                return False, point
    return True, None


def set_equal(P, Q) -> bool:
    return is_subset(P, Q, witness=False)[0] and is_subset(Q, P, witness=False)[0]


def remove_redundant(P: HPolyhedron) -> HPolyhedron:
    """Irredundant facet rows (implicit equalities kept as paired rows)."""
    return P.to_v().to_h()
