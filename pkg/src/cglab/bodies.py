"""Convex-body oracles: exact support function, membership, recession cone.

Each body class answers support queries in Q(sqrt(d)) or +infinity, flags
whether the supremum is attained (the shifted hyperbola's axis directions
are suprema along asymptotes, not maxima), and reports its recession cone
as a rational cone or an irrational-span marker.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .hilbert import RationalCone
from .linalg import dot, fdot, solve
from .polytope import (
    HPolyhedron,
    SupportResult,
    VPolyhedron,
    recession_cone,
    support as poly_support,
)
from .qfield import ExtValue, QuadValue


@dataclass(frozen=True)
class IrrationalRecession:
    """Recession cone that is not a rational polyhedral cone: a span marker."""

    span: tuple  # basis vectors with QuadValue entries

    def contains(self, r) -> bool:
        # desk scale: only the one-dimensional (line) case arises
        if len(self.span) != 1:
            raise NotImplementedError("only line spans supported")
        d = self.span[0]
        rq = [QuadValue.of(x) for x in r]
        n = len(d)
        for i in range(n):
            for j in range(i + 1, n):
                if (rq[i] * d[j] - rq[j] * d[i]).sign() != 0:
                    return False
        return True


def _finite(value, argmax=None) -> SupportResult:
    return SupportResult(ExtValue.finite(value), True, argmax)


def _unattained(value) -> SupportResult:
    return SupportResult(ExtValue.finite(value), False, None)


_INF = SupportResult(ExtValue.infinity(), False, None)


class ConvexBody:
    """Oracle interface; subclasses are immutable and pure."""

    n: int
    body_id: str = "body"

    def support(self, c) -> SupportResult:
        raise NotImplementedError

    def membership(self, x) -> bool:
        raise NotImplementedError

    def recession(self):
        raise NotImplementedError


@dataclass(frozen=True)
class RationalPoly(ConvexBody):
    hrep: HPolyhedron
    body_id: str = "polyhedron"

    @property
    def n(self):
        return self.hrep.n

    def support(self, c):
        res = poly_support(self.hrep, c)
        if not res.is_finite:
            return _INF
        return _finite(res.value.value, tuple(QuadValue.of(x) for x in res.argmax))

    def membership(self, x):
        return self.hrep.contains_point(x)

    def recession(self):
        return RationalCone.make(recession_cone(self.hrep), n=self.n)


@dataclass(frozen=True)
class MotzkinSum(ConvexBody):
    """C + D for a compact rational polytope C and rational cone D."""

    compact: VPolyhedron
    cone: RationalCone
    body_id: str = "motzkin"

    def __post_init__(self):
        if self.compact.rays or self.compact.lineality:
            raise ValueError("compact part must have no rays or lineality")
        if self.compact.is_empty:
            raise ValueError("compact part must be nonempty")

    @property
    def n(self):
        return self.compact.n

    def _hrep(self) -> HPolyhedron:
        return _motzkin_hrep(self.compact, self.cone)

    def support(self, c):
        c = tuple(Fraction(x) for x in c)
        if any(fdot(c, g) > 0 for g in self.cone.generators):
            return _INF
        best, arg = None, None
        for v in self.compact.vertices:
            val = fdot(c, v)
            if best is None or val > best:
                best, arg = val, v
        return _finite(best, tuple(QuadValue.of(x) for x in arg))

    def membership(self, x):
        return self._hrep().contains_point(x)

    def recession(self):
        return self.cone


@dataclass(frozen=True)
class ShiftedHyperbola(ConvexBody):
    """Closure of {x : (x1-s1)(x2-s2) >= level, x > s componentwise}."""

    shift: tuple
    level: Fraction
    body_id: str = "hyperbola"

    def __post_init__(self):
        object.__setattr__(self, "shift", tuple(Fraction(x) for x in self.shift))
        object.__setattr__(self, "level", Fraction(self.level))
        if self.level <= 0:
            raise ValueError("level must be positive")

    @property
    def n(self):
        return 2

    def support(self, c):
        c1, c2 = (Fraction(x) for x in c)
        s1, s2 = self.shift
        if c1 > 0 or c2 > 0:
            return _INF
        if c1 == 0 and c2 == 0:
            return _finite(QuadValue.of(0), None)
        j, k = -c1, -c2
        if j > 0 and k > 0:
            # min of j x1 + k x2 on the branch, by AM-GM at the tangent point
            root = QuadValue.sqrt(self.level * j * k)
            value = QuadValue(-(j * s1 + k * s2)) - 2 * root
            dx = QuadValue.sqrt(self.level * k / j)
            dy = QuadValue.sqrt(self.level * j / k)
            arg = (QuadValue(s1) + dx, QuadValue(s2) + dy)
            return _finite(value, arg)
        # axis direction: supremum along an asymptote, never attained
        return _unattained(QuadValue(-(j * s1 + k * s2)))

    def membership(self, x):
        x1, x2 = (QuadValue.of(v) for v in x)
        s1, s2 = self.shift
        if x1.compare(s1) < 0 or x2.compare(s2) < 0:
            return False
        prod = (x1 - s1) * (x2 - s2)
        return prod.compare(self.level) >= 0

    def recession(self):
        return RationalCone.make([(1, 0), (0, 1)])


@dataclass(frozen=True)
class Ellipsoid(ConvexBody):
    """{center + y : y^T Q^-1 y <= 1} for a PSD rational shape matrix Q."""

    center: tuple
    shape: tuple  # rows of Q
    body_id: str = "ellipsoid"

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(Fraction(x) for x in self.center))
        object.__setattr__(
            self, "shape", tuple(tuple(Fraction(x) for x in row) for row in self.shape)
        )
        for i, row in enumerate(self.shape):
            for j, v in enumerate(row):
                if v != self.shape[j][i]:
                    raise ValueError("shape matrix must be symmetric")

    @property
    def n(self):
        return len(self.center)

    def support(self, c):
        c = tuple(Fraction(x) for x in c)
        qc = tuple(fdot(row, c) for row in self.shape)
        s = fdot(c, qc)
        if s < 0:
            raise ValueError("shape matrix is not positive semidefinite")
        base = QuadValue(fdot(c, self.center))
        if s == 0:
            return _finite(base, tuple(QuadValue.of(x) for x in self.center))
        root = QuadValue.sqrt(s)
        arg = tuple(
            QuadValue(ci) + QuadValue(qi) / root
            for ci, qi in zip(self.center, qc)
        )
        return _finite(base + root, arg)

    def membership(self, x):
        diff = tuple(QuadValue.of(v) - QuadValue(ci) for v, ci in zip(x, self.center))
        sol = solve([list(row) for row in self.shape], diff)
        if sol is None:
            return False  # outside the affine hull of a degenerate ellipsoid
        val = dot(diff, sol)
        return val.compare(1) <= 0

    def recession(self):
        return RationalCone.make([], n=self.n)


@dataclass(frozen=True)
class IrrationalLine(ConvexBody):
    """The line R * direction through the origin, irrational slope allowed."""

    direction: tuple  # QuadValue entries
    body_id: str = "line"

    def __post_init__(self):
        object.__setattr__(
            self, "direction", tuple(QuadValue.of(x) for x in self.direction)
        )

    @property
    def n(self):
        return len(self.direction)

    def support(self, c):
        val = dot(c, self.direction)
        if val.sign() != 0:
            return _INF
        return _finite(QuadValue.of(0), tuple(QuadValue.of(0) for _ in c))

    def membership(self, x):
        return IrrationalRecession((self.direction,)).contains(x)

    def recession(self):
        return IrrationalRecession((self.direction,))


@dataclass(frozen=True)
class Segment(ConvexBody):
    """Compact segment conv{p, q}; endpoints may be quadratic irrationals."""

    p: tuple
    q: tuple
    body_id: str = "segment"

    def __post_init__(self):
        object.__setattr__(self, "p", tuple(QuadValue.of(x) for x in self.p))
        object.__setattr__(self, "q", tuple(QuadValue.of(x) for x in self.q))

    @property
    def n(self):
        return len(self.p)

    def support(self, c):
        vp, vq = dot(c, self.p), dot(c, self.q)
        if vp.compare(vq) >= 0:
            return _finite(vp, self.p)
        return _finite(vq, self.q)

    def membership(self, x):
        x = tuple(QuadValue.of(v) for v in x)
        delta = tuple(b - a for a, b in zip(self.p, self.q))
        pivot = next((i for i, d in enumerate(delta) if d.sign() != 0), None)
        if pivot is None:
            return all((xi - pi).sign() == 0 for xi, pi in zip(x, self.p))
        t = (x[pivot] - self.p[pivot]) / delta[pivot]
        if t.compare(0) < 0 or t.compare(1) > 0:
            return False
        return all(
            (self.p[i] + t * delta[i] - x[i]).sign() == 0 for i in range(self.n)
        )

    def recession(self):
        return RationalCone.make([], n=self.n)


@lru_cache(maxsize=256)
def _motzkin_hrep(compact: VPolyhedron, cone: RationalCone) -> HPolyhedron:
    return VPolyhedron.make(compact.vertices, cone.generators).to_h()


def body_support(body: ConvexBody, c) -> ExtValue:
    """Support value only (the full result carries attainment and argmax)."""
    return body.support(c).value


HYPERBOLA = ShiftedHyperbola(shift=(0, 0), level=Fraction(2))
"""x1 x2 >= 2 in the nonnegative quadrant; its cut closure never stabilises."""

SHIFTED_HYPERBOLA = ShiftedHyperbola(shift=(Fraction(1, 5), Fraction(1, 5)), level=Fraction(2))
"""The 1/5-shifted copy of HYPERBOLA, whose closure is finitely generated."""

SQRT2_LINE = IrrationalLine(direction=(QuadValue(1), QuadValue(0, 1, 2)))
"""The line x2 = sqrt(2) x1: lattice singleton hull, irrational recession."""
