"""Cut generation and closures: truncated brute force, exact closure of a
rational polyhedron through normal-cone Hilbert bases, iterated closure
rank, desk-scale integer hulls, and the cut-absorption witness.

The exact closure rests on the superadditivity of rounding: an integer
direction in a vertex normal cone decomposes integrally over the cone's
Hilbert generators, and the floor of the sum dominates the sum of floors,
so the emitted cuts imply every other cut.  The brute-force path is the
independent oracle for that construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .bodies import ConvexBody, RationalPoly
from .conegeom import CutFamily, closure_region, is_valid
from .errors import EmptyPolyhedron, NotPointed, RankExceeded, UnstableBox
from .hilbert import RationalCone, lemma7_witness, monoid_generators
from .linalg import fdot
from .polytope import (
    HPolyhedron,
    VPolyhedron,
    dd_cone,
    is_subset,
    remove_redundant,
    set_equal,
    support as poly_support,
)
from .qfield import QuadValue


@dataclass(frozen=True)
class CGCut:
    """Integer direction c with rounded right-hand side floor(sigma(c))."""

    c: tuple
    rhs: int
    source: str = "body"

    def row(self):
        return self.c + (self.rhs,)


@dataclass(frozen=True)
class ClosureReport:
    cuts: tuple
    polyhedron: HPolyhedron
    exact: bool
    radius: int | None = None

    @property
    def exactness(self) -> str:
        return "Exact" if self.exact else f"OuterApproximation({self.radius})"


def cg_cut(body: ConvexBody, c) -> CGCut | None:
    """The rounded cut c.x <= floor(sigma(c)), or None on unbounded c."""
    c = tuple(int(x) for x in c)
    if not any(c):
        raise ValueError("cut direction must be nonzero")
    res = body.support(c)
    if not res.value.is_finite:
        return None
    return CGCut(c, res.value.floor(), body.body_id)


def _grid(n: int, radius: int):
    for c in itertools.product(range(-radius, radius + 1), repeat=n):
        if any(c):
            yield c


def closure_bruteforce(body: ConvexBody, radius: int) -> ClosureReport:
    """Intersection of every cut with max-norm at most radius.

    Monotone nonincreasing in the radius; flagged as an outer
    approximation since directions beyond the grid are unseen.
    """
    if radius < 1:
        raise ValueError("radius must be at least 1")
    cuts = []
    for c in _grid(body.n, radius):
        cut = cg_cut(body, c)
        if cut is not None:
            cuts.append(cut)
    poly = HPolyhedron.make(
        [cut.c for cut in cuts], [cut.rhs for cut in cuts], n=body.n
    )
    return ClosureReport(tuple(cuts), remove_redundant(poly), exact=False, radius=radius)


def schrijver_closure(P: HPolyhedron) -> ClosureReport:
    """The exact elementary closure of a rational polyhedron.

    Emits, for every vertex, the cuts of the integral generating set of its
    normal cone.  Needs a polyhedron with at least one vertex; lineality is
    out of scope here (none of the supported inputs produce it).
    """
    V = P.to_v()
    if V.is_empty:
        raise EmptyPolyhedron("closure of the empty polyhedron")
    if V.lineality:
        raise NotPointed("closure needs a pointed polyhedron (no lineality)")
    H = remove_redundant(P)
    cuts = set()
    for v in V.vertices:
        active = [a for a, b in zip(H.A, H.b) if fdot(a, v) == b]
        normal = RationalCone.make(active, n=P.n)
        for g in monoid_generators(normal):
            val = fdot(g, v)
            cuts.add(CGCut(g, val.numerator // val.denominator, "polyhedron"))
    cuts = tuple(sorted(cuts, key=lambda cut: cut.row()))
    poly = HPolyhedron.make([c.c for c in cuts], [c.rhs for c in cuts], n=P.n)
    return ClosureReport(cuts, remove_redundant(poly), exact=True)


def _ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def _floor_frac(x: Fraction) -> int:
    return x.numerator // x.denominator


def integer_hull_polytope(P: HPolyhedron) -> VPolyhedron:
    """conv(P ∩ Z^n) for a bounded rational polyhedron, by enumeration."""
    V = P.to_v()
    if V.rays or V.lineality:
        raise ValueError("integer hull enumeration needs a bounded polyhedron")
    if V.is_empty:
        return VPolyhedron.make()
    los = [Fraction(min(v[i] for v in V.vertices)) for i in range(P.n)]
    his = [Fraction(max(v[i] for v in V.vertices)) for i in range(P.n)]
    points = []
    ranges = [
        range(_ceil_frac(lo), _floor_frac(hi) + 1) for lo, hi in zip(los, his)
    ]
    for point in itertools.product(*ranges):
        if P.contains_point(point):
            points.append(point)
    if not points:
        return VPolyhedron.make()
    return VPolyhedron.make(points).to_h().to_v()


def chvatal_rank(P: HPolyhedron, max_iter: int = 20):
    """Iterations of the exact closure until the integer hull; with trace."""
    hull = integer_hull_polytope(P).to_h()
    trace = [remove_redundant(P)]
    current = trace[0]
    for t in range(max_iter + 1):
        if set_equal(current, hull):
            return t, trace
        if current.is_empty:
            break  # empty but hull nonempty cannot happen; guard anyway
        current = schrijver_closure(current).polyhedron
        trace.append(current)
    raise RankExceeded(f"no fixpoint within {max_iter} closures", trace)


def _box_lattice_points(body: ConvexBody, box):
    ranges = [
        range(_ceil_frac(Fraction(lo)), _floor_frac(Fraction(hi)) + 1) for lo, hi in box
    ]
    out = []
    for point in itertools.product(*ranges):
        if body.membership(point):
            out.append(point)
    return out


def _hull_with_rays(points, rays) -> VPolyhedron:
    if not points:
        return VPolyhedron.make()
    return VPolyhedron.make(points, rays).to_h().to_v()


def integer_hull(body: ConvexBody, box, max_enlargements: int = 3) -> VPolyhedron:
    """conv(body ∩ Z^n) inside a box, with recession rays attached.

    The box is certified by stabilisation: the hull facets must agree
    between two consecutive box doublings, else UnstableBox.  Rays are
    attached only when the recession cone is rational polyhedral.
    """
    rec = body.recession()
    rays = rec.generators if isinstance(rec, RationalCone) else ()
    box = [(Fraction(lo), Fraction(hi)) for lo, hi in box]

    def hull_for(b):
        return _hull_with_rays(_box_lattice_points(body, b), rays)

    def doubled(b):
        out = []
        for lo, hi in b:
            mid = (lo + hi) / 2
            half = (hi - lo)  # double the extent about the centre
            out.append((mid - half, mid + half))
        return out

    prev = hull_for(box)
    for _ in range(max_enlargements):
        box = doubled(box)
        cur = hull_for(box)
        if prev.to_h() == cur.to_h():
            return cur
        prev = cur
    raise UnstableBox("hull facets kept changing under box enlargement")


@dataclass(frozen=True)
class AbsorptionWitness:
    """Vertex p_star and cut index i_star absorbing a bucket of cuts.

    Every cut in ``members`` shares the argmax vertex and the fractional
    part of c . p_star with cut i_star, and lies in cone(Lambda) where
    Lambda adjoins cut i_star and the trivial row to the defining rows.
    """

    p_star: tuple
    i_star: int
    members: tuple
    family: CutFamily


def prop9_witness(P: HPolyhedron, K: ConvexBody, cuts) -> AbsorptionWitness | None:
    """Absorb a family of P-violating cuts into a finite subfamily cone.

    Requires P inside K and every cut strictly cutting P (its support on P
    exceeds the rounded rhs); raises ValueError otherwise.  Returns None
    when no two cuts share a vertex, fractional part and a coefficient
    minimum (reported, not an error).
    """
    V = P.to_v()
    if V.is_empty:
        raise EmptyPolyhedron("witness needs a nonempty polyhedron")
    rec = K.recession()
    for v in V.vertices:
        if not K.membership(v):
            raise ValueError(f"vertex {v} of P is outside the body")
    for r in list(V.rays) + [d for l in V.lineality for d in (l, tuple(-x for x in l))]:
        if not rec.contains(r):
            raise ValueError(f"ray {r} of P is not in the body's recession cone")
    valid = []
    argmax = {}
    for i, cut in enumerate(cuts):
        res = poly_support(V, cut.c)
        sigma = res.value.value.to_fraction()
        if sigma <= cut.rhs:
            valid.append(i)
        else:
            maxers = sorted(v for v in V.vertices if fdot(cut.c, v) == sigma)
            argmax[i] = maxers[0]
    if valid:
        raise ValueError(f"cuts {valid} are already valid for P; nothing to absorb")

    base_rows = [a + (b,) for a, b in zip(P.A, P.b)]

    def family_with(cut):
        return CutFamily.make(base_rows + [cut.row()], P.n)

    if len(cuts) == 1:
        fam = family_with(cuts[0])
        assert is_valid(fam, cuts[0].c, cuts[0].rhs)
        return AbsorptionWitness(argmax[0], 0, (0,), fam)

    groups: dict[tuple, list[int]] = {}
    for i, p in argmax.items():
        groups.setdefault(p, []).append(i)
    for p_star, idxs in sorted(groups.items(), key=lambda kv: (-len(kv[1]), kv[0])):
        if len(idxs) < 2:
            continue
        # normal cone of P at p_star
        rows = [tuple(p[j] - p_star[j] for j in range(P.n)) for p in V.vertices if p != p_star]
        rows += list(V.rays)
        nrays, nlin = dd_cone(rows, P.n)
        normal = RationalCone.make(
            list(nrays) + [l for v in nlin for l in (v, tuple(-x for x in v))], n=P.n
        )
        witness = lemma7_witness([cuts[i].c for i in idxs], p_star, normal)
        if witness is None:
            continue
        i_star = idxs[witness.i_star]
        members = tuple(idxs[j] for j in witness.I)
        fam = family_with(cuts[i_star])
        for j in members + (i_star,):
            assert is_valid(fam, cuts[j].c, cuts[j].rhs)
        return AbsorptionWitness(p_star, i_star, members, fam)
    return None
