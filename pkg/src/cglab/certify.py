"""Finite-generation certificates and their refutations.

A certificate is a finite set F of integer directions whose rounded cuts
carve a polyhedron contained in the body; verification converts the cut
region to generators and checks vertices by membership and rays against
the recession cone.  A refutation carries a concrete point of the cut
region outside the body, exactly checkable by the caller.  The face-cut
constructor assembles the approximant-shifted cut families around a
supporting hyperplane with quadratic-irrational normal and re-checks every
emitted right-hand side against the support oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bodies import ConvexBody, Ellipsoid, MotzkinSum, RationalPoly, Segment, ShiftedHyperbola
from .cgengine import cg_cut, _grid
from .conegeom import CutFamily, closure_region, is_valid
from .diophantine import zero_combination
from .errors import CertifiedInstead, VerificationFailed
from .hilbert import RationalCone
from .linalg import dot, fdot
from .polytope import HPolyhedron
from .qfield import QuadValue, rational_upper_sqrt, solve_quadratic


@dataclass(frozen=True)
class Certificate:
    directions: tuple          # the finite F, vacuous directions dropped
    cuts: tuple                # CGCut per kept direction
    region: HPolyhedron        # the cut region Q_F
    certified: bool
    witness: tuple | None      # point of Q_F outside the body, when refuted
    dropped: tuple = ()        # directions with unbounded support

    @property
    def verdict(self) -> str:
        return "Certified" if self.certified else "Refuted"


def _ray_exit_time(body: ConvexBody, base, ray):
    """sup{t : base + t*ray stays in the body}, exact, for rays that leave.

    base is rational, ray integer; the boundary crossing solves a linear or
    quadratic rational equation for every supported body class, so the time
    is exact in some Q(sqrt(d)).  None means no algebraic handle (caller
    falls back to doubling).
    """
    base = tuple(Fraction(x) for x in base)
    ray = tuple(Fraction(x) for x in ray)
    roots = []
    if isinstance(body, RationalPoly) or isinstance(body, MotzkinSum):
        H = body.hrep if isinstance(body, RationalPoly) else body._hrep()
        for a, b in zip(H.A, H.b):
            slope = fdot(a, ray)
            if slope > 0:
                roots.append(QuadValue((b - fdot(a, base)) / slope))
    elif isinstance(body, ShiftedHyperbola):
        s1, s2 = body.shift
        # linear boundaries x_i = s_i
        for i, s in enumerate((s1, s2)):
            if ray[i] < 0:
                roots.append(QuadValue((s - base[i]) / ray[i]))
        # quadratic boundary (x1-s1)(x2-s2) = level
        a2 = ray[0] * ray[1]
        a1 = ray[0] * (base[1] - s2) + ray[1] * (base[0] - s1)
        a0 = (base[0] - s1) * (base[1] - s2) - body.level
        roots.extend(solve_quadratic(a2, a1, a0))
    elif isinstance(body, Ellipsoid):
        diff = tuple(b - c for b, c in zip(base, body.center))
        from .linalg import solve as lin_solve

        qinv_ray = lin_solve([list(r) for r in body.shape], ray)
        qinv_diff = lin_solve([list(r) for r in body.shape], diff)
        if qinv_ray is None or qinv_diff is None:
            return None
        a2 = dot(ray, qinv_ray).to_fraction()
        a1 = 2 * dot(ray, qinv_diff).to_fraction()
        a0 = dot(diff, qinv_diff).to_fraction() - 1
        roots.extend(solve_quadratic(a2, a1, a0))
    else:
        return None
    positive = [t for t in (QuadValue.of(r) for r in roots) if t.sign() > 0]
    in_body = [
        t
        for t in positive
        if body.membership(tuple(QuadValue(b) + t * QuadValue(r) for b, r in zip(base, ray)))
    ]
    if not in_body:
        return QuadValue.of(0)
    return max(in_body)


def _ray_witness(body: ConvexBody, base, ray):
    """A point base + t*ray outside the body, t exact (exit time plus one,
    or a doubling search when no algebraic exit is available)."""
    t_exit = _ray_exit_time(body, base, ray)
    if t_exit is not None:
        t = t_exit + 1
        point = tuple(
            QuadValue(Fraction(b)) + t * QuadValue(Fraction(r))
            for b, r in zip(base, ray)
        )
        if not body.membership(point):
            return point
    t = 1
    for _ in range(64):
        point = tuple(Fraction(b) + t * Fraction(r) for b, r in zip(base, ray))
        if not body.membership(point):
            return tuple(QuadValue(x) for x in point)
        t *= 2
    raise VerificationFailed("ray refutation witness not found by doubling")


def verify_certificate(body: ConvexBody, directions) -> Certificate:
    """Check whether the cut region of F sits inside the body.

    Directions with unbounded support contribute no cut and are recorded
    as dropped.  A refutation carries a violating vertex, or an exact far
    point along a violating ray.
    """
    cuts, dropped = [], []
    for f in directions:
        cut = cg_cut(body, f)
        if cut is None:
            dropped.append(tuple(f))
        else:
            cuts.append(cut)
    region = HPolyhedron.make([c.c for c in cuts], [c.rhs for c in cuts], n=body.n)
    V = region.to_v()

    def result(certified, witness=None):
        return Certificate(
            tuple(c.c for c in cuts), tuple(cuts), region, certified, witness,
            tuple(dropped),
        )

    if V.is_empty:
        return result(True)
    for v in V.vertices:
        if not body.membership(v):
            return result(False, tuple(QuadValue(x) for x in v))
    rec = body.recession()
    base = V.vertices[0]
    directions_to_check = list(V.rays)
    for l in V.lineality:
        directions_to_check.append(l)
        directions_to_check.append(tuple(-x for x in l))
    for r in directions_to_check:
        if not rec.contains(r):
            return result(False, _ray_witness(body, base, r))
    return result(True)


def search_certificate(body: ConvexBody, n_max: int) -> Certificate | None:
    """First grid radius whose cut region certifies, greedily minimalised.

    None when the recession cone is not rational polyhedral (no finite F
    can exist then) or when no radius up to n_max certifies; absence of a
    certificate here is evidence only, never a proof of non-generation.
    """
    if not isinstance(body.recession(), RationalCone):
        return None
    for radius in range(1, n_max + 1):
        cert = verify_certificate(body, list(_grid(body.n, radius)))
        if not cert.certified:
            continue
        kept = list(cert.directions)
        for f in sorted(cert.directions):
            trial = [g for g in kept if g != f]
            if trial and verify_certificate(body, trial).certified:
                kept = trial
        return verify_certificate(body, kept)
    return None


def nonfg_witness(body: ConvexBody, radius: int):
    """Refutation witness for the full grid of directions at this radius.

    The returned point satisfies every grid cut and exactly violates the
    body: no certificate exists up to this radius.  Raises
    CertifiedInstead when the grid certifies.
    """
    cert = verify_certificate(body, list(_grid(body.n, radius)))
    if cert.certified:
        raise CertifiedInstead(f"grid of radius {radius} certifies this body")
    return cert.witness


# -- face-cut families around an irrational supporting hyperplane -----------


@dataclass(frozen=True)
class FaceCutMember:
    c: tuple
    m: int
    g: tuple
    rhs: int

    def cut_vector(self):
        return tuple(ci + gi for ci, gi in zip(self.c, self.g))


@dataclass(frozen=True)
class FaceCutFamily:
    alpha: tuple               # QuadValue normal of the supporting hyperplane
    alpha0: int
    members: tuple             # FaceCutMember entries
    lambdas: tuple             # exact convex weights, QuadValue entries
    family: CutFamily          # the emitted rows plus the trivial row

    def region(self) -> HPolyhedron:
        return closure_region(self.family)


def _support_query(body: ConvexBody, vec):
    """Support with a possibly irrational query vector.

    Rational queries go through as Fractions; irrational ones need a body
    whose oracle evaluates in the field (the segment does).
    """
    qvec = [QuadValue.of(x) for x in vec]
    if all(x.is_rational for x in qvec):
        return body.support([x.to_fraction() for x in qvec])
    return body.support(qvec)


def _face_support(body: ConvexBody, alpha, alpha0, g) -> QuadValue:
    """Support of direction g on the alpha-face {x in K : alpha.x = alpha0}."""
    alpha = tuple(QuadValue.of(x) for x in alpha)
    if isinstance(body, Segment):
        on_face = [
            p
            for p in (body.p, body.q)
            if (dot(alpha, p) - QuadValue.of(alpha0)).sign() == 0
        ]
        if not on_face:
            raise ValueError("hyperplane does not touch the segment")
        vals = [dot(g, p) for p in on_face]
        return max(vals)
    if isinstance(body, RationalPoly):
        if any(not x.is_rational for x in alpha):
            raise ValueError("rational polyhedra need a rational face normal")
        from .polytope import face_of, support as poly_support

        face = face_of(body.hrep, [x.to_fraction() for x in alpha])
        res = poly_support(face.vrep, g)
        if not res.value.is_finite:
            raise ValueError("face is unbounded in direction g")
        return res.value.value
    raise ValueError(f"face support not available for {type(body).__name__}")


def _compact_radius_bound(body: ConvexBody) -> Fraction:
    """Rational upper bound on max ||x|| over the body's compact part."""
    if isinstance(body, Segment):
        points = [body.p, body.q]
    elif isinstance(body, RationalPoly):
        V = body.hrep.to_v()
        points = [tuple(QuadValue(x) for x in v) for v in V.vertices]
    elif isinstance(body, MotzkinSum):
        points = [tuple(QuadValue(x) for x in v) for v in body.compact.vertices]
    else:
        raise ValueError(f"no compact-part bound for {type(body).__name__}")
    worst = None
    for p in points:
        norm_sq = dot(p, p)
        if worst is None or norm_sq.compare(worst) > 0:
            worst = norm_sq
    return rational_upper_sqrt(worst)


def face_cuts(
    body: ConvexBody,
    alpha,
    alpha0: int,
    face_floors,
    delta,
    n0: int,
    k_max: int = 3,
) -> FaceCutFamily:
    """Build the finite cut family that pins the alpha-face from outside.

    ``face_floors`` lists pairs (g, floor of the face support of g) and must
    contain g = 0.  Every emitted cut (c_i + g) . x <= floor + m_i * alpha0
    is re-verified against the exact support oracle (VerificationFailed on
    any mismatch), and validity of alpha . x <= alpha0 on the resulting
    region is confirmed by exact cone membership.
    """
    alpha = tuple(QuadValue.of(x) for x in alpha)
    delta = Fraction(delta)
    if delta <= 0:
        raise ValueError("delta must be positive")
    sup = _support_query(body, alpha)
    if not sup.value.is_finite or sup.value.value.compare(alpha0) != 0:
        raise ValueError("alpha . x <= alpha0 is not a touching support of the body")
    face_floors = [(tuple(int(x) for x in g), int(fl)) for g, fl in face_floors]
    if not any(not any(g) for g, _ in face_floors):
        raise ValueError("face directions must include g = 0")
    for g, fl in face_floors:
        sigma_f = _face_support(body, alpha, alpha0, g)
        if sigma_f.floor() != fl:
            raise ValueError(f"stated floor {fl} for {g} differs from the oracle")
        slack = QuadValue.of(1 + fl) - sigma_f
        if (2 * delta - slack).sign() >= 0:
            raise ValueError("delta is too large for the face floors")
    u = _compact_radius_bound(body)
    eps = delta / u
    combo = zero_combination(alpha, eps, n0, k_max)
    residual_sum = None
    members = []
    for c, m, lam in combo:
        for g, fl in face_floors:
            vec = tuple(ci + gi for ci, gi in zip(c, g))
            rhs = fl + m * alpha0
            oracle = body.support(vec)
            if not oracle.value.is_finite or oracle.value.floor() != rhs:
                raise VerificationFailed(
                    f"cut {vec} has rhs {rhs} but oracle floor "
                    f"{oracle.value.floor() if oracle.value.is_finite else 'inf'}"
                )
            members.append(FaceCutMember(c, m, g, rhs))
        contrib = tuple(
            lam * (QuadValue.of(ci) - QuadValue.of(m) * a) for ci, a in zip(c, alpha)
        )
        residual_sum = (
            contrib
            if residual_sum is None
            else tuple(s + t for s, t in zip(residual_sum, contrib))
        )
    assert all(r.sign() == 0 for r in residual_sum)
    lam_total = sum((lam for _, _, lam in combo), QuadValue.of(0))
    assert (lam_total - 1).sign() == 0
    rows = [m.cut_vector() + (m.rhs,) for m in members]
    family = CutFamily.make(rows, body.n)
    if not is_valid(family, alpha, QuadValue.of(alpha0)):
        raise VerificationFailed("alpha . x <= alpha0 is not valid on the cut region")
    return FaceCutFamily(
        alpha, int(alpha0), tuple(members), tuple(lam for _, _, lam in combo), family
    )
