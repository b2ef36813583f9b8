"""Hilbert bases of rational polyhedral cones and integer conic decomposition.

The basis of a pointed cone is found by enumerating the lattice points of
the box around the half-open generator zonotope (every irreducible lattice
point lies inside it) and discarding the reducible ones by exact cone
membership.  Correctness over speed: everything is small-dimension integer
arithmetic, oracle-testable against brute force.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import NotPointed, SearchBudgetExceeded
from .linalg import integer_kernel_completion, kernel, solve
from .polytope import _is_zero, _primitive, dd_cone
from .qfield import QuadValue

ENUM_BUDGET = 2_000_000


def _int_dot(u, v) -> int:
    return sum(a * b for a, b in zip(u, v, strict=True))


@lru_cache(maxsize=4096)
def _polar_cached(generators, n):
    return dd_cone(generators, n)


@dataclass(frozen=True)
class RationalCone:
    """cone(generators) with coprime-integer generators."""

    generators: tuple
    n: int

    @staticmethod
    def make(generators, n=None):
        gens = []
        for g in generators:
            g = _primitive(g)
            if not _is_zero(g):
                gens.append(g)
        gens = tuple(sorted(set(gens)))
        if n is None:
            if not gens:
                raise ValueError("ambient dimension needed for the zero cone")
            n = len(gens[0])
        return RationalCone(gens, n)

    def _polar(self):
        return _polar_cached(self.generators, self.n)

    def hrep_rows(self):
        """Rows N with cone = {x : N x <= 0} (lineality as +- pairs)."""
        prays, plin = self._polar()
        rows = list(prays)
        for l in plin:
            rows.append(l)
            rows.append(tuple(-x for x in l))
        return rows

    def contains(self, x) -> bool:
        if all(isinstance(v, int) for v in x):
            return all(_int_dot(row, x) <= 0 for row in self.hrep_rows())
        xs = [QuadValue.of(v) for v in x]
        for row in self.hrep_rows():
            acc = QuadValue.of(0)
            for a, v in zip(row, xs, strict=True):
                acc = acc + v * a
            if acc.sign() > 0:
                return False
        return True

    def lineality_basis(self):
        prays, plin = self._polar()
        rows = list(prays) + list(plin)
        if not rows:
            return [
                tuple(1 if j == i else 0 for j in range(self.n))
                for i in range(self.n)
            ]
        return [
            _primitive(tuple(x.to_fraction() for x in v), orient=True)
            for v in kernel(rows)
        ]

    @property
    def is_pointed(self) -> bool:
        return not self.lineality_basis()

    def extreme_rays(self):
        if not self.is_pointed:
            raise NotPointed("extreme rays of a non-pointed cone")
        rays, _ = dd_cone(self.hrep_rows(), self.n)
        return list(rays)

    def pointing_functional(self):
        """Integer w with w.x > 0 for every nonzero x in a pointed cone."""
        prays, plin = self._polar()
        rows = list(prays)
        for l in plin:
            rows.append(l)
            rows.append(tuple(-x for x in l))
        w = tuple(-sum(col) for col in zip(*rows)) if rows else None
        if w is None or any(
            _int_dot(w, g) <= 0 for g in self.generators
        ):
            raise NotPointed("no strictly positive functional: cone not pointed")
        return w


def hilbert_basis(cone: RationalCone, budget: int = ENUM_BUDGET):
    """The unique minimal Hilbert basis of a pointed cone."""
    return list(_hilbert_basis_cached(cone, budget))


@lru_cache(maxsize=4096)
def _hilbert_basis_cached(cone: RationalCone, budget: int):
    if not cone.generators:
        return ()
    if not cone.is_pointed:
        raise NotPointed("Hilbert basis requires a pointed cone")
    rays = cone.extreme_rays()
    lo = [sum(min(0, r[j]) for r in rays) for j in range(cone.n)]
    hi = [sum(max(0, r[j]) for r in rays) for j in range(cone.n)]
    size = math.prod(h - l + 1 for l, h in zip(lo, hi))
    if size > budget:
        raise SearchBudgetExceeded(f"zonotope box holds {size} lattice points")
    hrows = cone.hrep_rows()
    candidates = []
    for point in itertools.product(*(range(l, h + 1) for l, h in zip(lo, hi))):
        if any(point) and all(_int_dot(row, point) <= 0 for row in hrows):
            candidates.append(point)
    basis = []
    for h in candidates:
        reducible = False
        for a in candidates:
            if a == h:
                continue
            diff = tuple(x - y for x, y in zip(h, a))
            if not any(diff):
                continue
            if all(_int_dot(row, diff) <= 0 for row in hrows):
                reducible = True
                break
        if not reducible:
            basis.append(h)
    return tuple(sorted(basis))


def decompose(x, cone: RationalCone, budget: int = 100_000):
    """Nonnegative integer coefficients of x over the Hilbert basis.

    None when x is not an integer point of the cone.  Depth-first search
    with exact cone-membership pruning; SearchBudgetExceeded is distinct
    from None.
    """
    x = tuple(x)
    if not all(isinstance(v, int) or Fraction(v).denominator == 1 for v in x):
        return None
    x = tuple(int(v) for v in x)
    if not cone.contains(x):
        return None
    basis = hilbert_basis(cone)
    if not any(x):
        return [0] * len(basis)
    w = cone.pointing_functional()
    order = sorted(range(len(basis)), key=lambda i: -_int_dot(w, basis[i]))
    hrows = cone.hrep_rows()
    nodes = 0

    def dfs(rest, start):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise SearchBudgetExceeded(f"decompose exceeded {budget} nodes")
        if not any(rest):
            return [0] * len(basis)
        for pos in range(start, len(order)):
            g = basis[order[pos]]
            nxt = tuple(a - b for a, b in zip(rest, g))
            if all(_int_dot(row, nxt) <= 0 for row in hrows):
                sub = dfs(nxt, pos)
                if sub is not None:
                    sub[order[pos]] += 1
                    return sub
        return None

    coeffs = dfs(x, 0)
    if coeffs is None:
        # x passed the membership check, so a decomposition exists; the
        # DFS with membership pruning cannot miss it
        raise SearchBudgetExceeded("decomposition search dead-ended")
    return coeffs


def monoid_generators(cone: RationalCone):
    """A finite generating set of cone ∩ Z^n, pointed or not.

    For a cone with lineality L the set is the Hilbert basis of the image
    in the quotient lattice Z^n / (L ∩ Z^n), lifted back, together with a
    lattice basis of L ∩ Z^n in both signs.
    """
    if not cone.generators:
        return []
    if cone.is_pointed:
        return hilbert_basis(cone)
    prays, plin = cone._polar()
    rows = list(prays) + list(plin)
    if not rows:  # the cone is all of R^n
        units = [tuple(1 if j == i else 0 for j in range(cone.n)) for i in range(cone.n)]
        return sorted(units + [tuple(-x for x in u) for u in units])
    kernel_cols, other_cols = integer_kernel_completion(rows)
    k, n = len(kernel_cols), cone.n
    u_cols = list(kernel_cols) + list(other_cols)
    u_rows = [[Fraction(u_cols[c][r]) for c in range(n)] for r in range(n)]
    # columns of T = U^-1; integer because U is unimodular
    t_cols = []
    for i in range(n):
        e = [Fraction(1 if j == i else 0) for j in range(n)]
        col = []
        for s in solve(u_rows, e):
            f = s.to_fraction()
            assert f.denominator == 1
            col.append(f.numerator)
        t_cols.append(tuple(col))

    def quotient(x):
        # y = T x, coordinates of x in the adapted basis; drop the L part
        y = [sum(t_cols[j][r] * x[j] for j in range(n)) for r in range(n)]
        return tuple(y[k:])

    image = RationalCone.make([quotient(g) for g in cone.generators], n=n - k)
    lifted = []
    for h in hilbert_basis(image):
        lift = tuple(
            sum(other_cols[j][i] * h[j] for j in range(n - k)) for i in range(n)
        )
        assert cone.contains(lift)
        lifted.append(lift)
    gens = list(lifted)
    for l in kernel_cols:
        gens.append(tuple(l))
        gens.append(tuple(-x for x in l))
    return sorted(set(gens))


def dickson_minimal(points):
    """Minimal elements of a finite set in N^m under componentwise order."""
    pts = sorted({tuple(int(x) for x in p) for p in points})
    out = []
    for p in pts:
        if not any(all(q[i] <= p[i] for i in range(len(p))) and q != p for q in pts):
            out.append(p)
    return out


@dataclass(frozen=True)
class ChainWitness:
    """Lemma-style chain data: bucket I dominates index i_star.

    Every index i in I has v^i - v^{i*} in the cone and the same fractional
    part of v . q as i_star.
    """

    i_star: int
    I: tuple
    frac: Fraction


def lemma7_witness(vs, q, cone: RationalCone, budget: int = 100_000):
    """Find the largest same-fractional-part bucket with a minimum element.

    vs are integer points of the cone (verified); q is a rational vector.
    Within buckets of indices sharing frac(v . q), the Hilbert coefficient
    vectors (one per point, from ``decompose``) must contain a componentwise
    minimum; the first (largest) bucket that admits one yields the witness.
    Returns None when no bucket of size >= 2 qualifies.
    """
    vs = [tuple(int(x) for x in v) for v in vs]
    q = tuple(Fraction(x) for x in q)
    for v in vs:
        if not cone.contains(v):
            raise ValueError(f"{v} is not in the cone")
    buckets: dict[Fraction, list[int]] = {}
    for idx, v in enumerate(vs):
        val = sum(Fraction(a) * b for a, b in zip(v, q))
        frac = val - (val.numerator // val.denominator)
        buckets.setdefault(frac, []).append(idx)
    ordered = sorted(buckets.items(), key=lambda kv: (-len(kv[1]), kv[0]))
    for frac, idxs in ordered:
        if len(idxs) < 2:
            continue
        coeffs = {i: decompose(vs[i], cone, budget=budget) for i in idxs}
        for i_star in idxs:
            lam = coeffs[i_star]
            if all(
                all(a <= b for a, b in zip(lam, coeffs[j])) for j in idxs
            ):
                rest = tuple(j for j in idxs if j != i_star)
                for j in rest:
                    diff = tuple(a - b for a, b in zip(vs[j], vs[i_star]))
                    assert cone.contains(diff)
                return ChainWitness(i_star, rest, frac)
    return None
