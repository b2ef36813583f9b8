"""Geometry of finite cut families in R^(n+1).

A family of rows (alpha, beta) describes the region {x : alpha.x <= beta}.
Validity of a further inequality is exact cone membership (the extended
Farkas condition, which for a finite family needs no topological closure),
decided through the polar cone computed by double description.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import EmptyClosure, NoConvergence, NotPointed
from .linalg import dot, kernel, proj_subspace
from .polytope import HPolyhedron, _is_zero, _primitive, dd_cone
from .qfield import QuadValue


def trivial_row(n: int) -> tuple:
    return (0,) * n + (1,)


@dataclass(frozen=True)
class CutFamily:
    """Finite family of inequality rows (alpha, beta), stored stacked."""

    rows: tuple               # tuples of length n+1, coprime integers
    n: int

    @staticmethod
    def make(rows, n, ensure_trivial=True):
        out = set()
        for row in rows:
            row = tuple(row)
            if len(row) != n + 1:
                raise ValueError(f"row of length {len(row)}, expected {n + 1}")
            row = _primitive(row)
            if _is_zero(row):
                raise ValueError("zero row in cut family")
            out.add(row)
        if ensure_trivial:
            out.add(trivial_row(n))
        return CutFamily(tuple(sorted(out)), n)

    def alphas_betas(self):
        return [(r[: self.n], r[self.n]) for r in self.rows]

    def polar(self):
        """Generators (rays, lineality) of {y : row . y <= 0 for all rows}."""
        return dd_cone(self.rows, self.n + 1)

    def cone_contains(self, vec) -> bool:
        """Exact membership of vec in cone(rows); vec may be irrational."""
        prays, plin = self.polar()
        v = tuple(QuadValue.of(x) for x in vec)
        for p in prays:
            if dot(p, v).sign() > 0:
                return False
        for l in plin:
            if dot(l, v).sign() != 0:
                return False
        return True


def closure_region(family: CutFamily) -> HPolyhedron:
    """The H-polyhedron cut out by the family (empty set is a value)."""
    A = [r[: family.n] for r in family.rows]
    b = [r[family.n] for r in family.rows]
    return HPolyhedron.make(A, b, n=family.n)


def is_valid(family: CutFamily, alpha, beta) -> bool:
    """Whether alpha.x <= beta holds on the region, by cone membership.

    Finite family, so validity is exactly (alpha, beta) in cone(rows).
    The query may have QuadValue entries.  Raises EmptyClosure when the
    region is empty (the membership criterion presumes consistency).
    """
    if closure_region(family).is_empty:
        raise EmptyClosure("cut family has empty intersection")
    query = tuple(QuadValue.of(x) for x in alpha) + (QuadValue.of(beta),)
    return family.cone_contains(query)


def decompose_lineality(family: CutFamily):
    """Split cone(rows) into lineality L and a pointed projected family.

    Returns (L_basis, projected family); membership in cone(rows) equals
    membership in cone(projected) + span(L).
    """
    prays, plin = family.polar()
    constraint_rows = list(prays) + list(plin)
    if not constraint_rows:
        # polar is {0}: cone(rows) is all of R^(n+1)
        lin_basis = [
            tuple(Fraction(1 if j == i else 0) for j in range(family.n + 1))
            for i in range(family.n + 1)
        ]
    else:
        lin_basis = [
            tuple(x.to_fraction() for x in v) for v in kernel(constraint_rows)
        ]
    lin_basis = sorted(_primitive(l, orient=True) for l in lin_basis)
    projected = []
    for row in family.rows:
        proj_l = proj_subspace(row, lin_basis) if lin_basis else None
        if proj_l is None:
            resid = row
        else:
            resid = tuple(
                Fraction(x) - y.to_fraction() for x, y in zip(row, proj_l)
            )
        if not _is_zero(resid):
            projected.append(_primitive(resid))
    proj_family = CutFamily(tuple(sorted(set(projected))), family.n)
    return lin_basis, proj_family


def extreme_rays(family: CutFamily):
    """Extreme rays of cone(rows), coprime-integer scaled.

    Requires the cone pointed; run decompose_lineality first otherwise.
    For a finite family every extreme ray is a positive multiple of an
    input row (the conical-limit alternative is vacuous here).
    """
    prays, plin = family.polar()
    constraint_rows = list(prays) + list(plin)
    if not constraint_rows or kernel(constraint_rows):
        raise NotPointed("cone of the family has nontrivial lineality")
    hrows = list(prays)
    for l in plin:
        hrows.append(l)
        hrows.append(tuple(-x for x in l))
    rays, lin = dd_cone(hrows, family.n + 1)
    if lin:
        raise NotPointed("cone of the family has nontrivial lineality")
    return list(rays)


# -- conical convergence (finite-sequence proxy) ----------------------------


def simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """The rational with smallest denominator in [lo, hi] (Stern-Brocot)."""
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi:
        raise ValueError("empty interval")
    if lo <= 0 <= hi:
        return Fraction(0)
    if hi < 0:
        return -simplest_between(-hi, -lo)
    fl = lo.numerator // lo.denominator
    if fl + 1 <= hi:
        return Fraction(fl + 1) if lo > fl else Fraction(fl)
    if lo == fl:
        return Fraction(fl)
    # both strictly inside (fl, fl+1): recurse on the reciprocal tail
    return fl + 1 / simplest_between(1 / (hi - fl), 1 / (lo - fl))


def _sup_normalize(v):
    entries = [QuadValue.of(x) for x in v]
    biggest = None
    for e in entries:
        mag = abs(e)
        if biggest is None or mag.compare(biggest) > 0:
            biggest = mag
    if biggest is None or biggest.sign() == 0:
        raise ValueError("zero vector in conic sequence")
    return tuple(e / biggest for e in entries)


def conic_limit(seq, tol=Fraction(1, 2**50)):
    """Direction limit of a finite vector sequence, up to positive scaling.

    Desk-scale proxy for conical convergence: each vector is normalised on
    the sup-norm sphere (exact in its field), the tail (second half) must be
    successively Cauchy at ``tol``, and the reported direction snaps each
    coordinate of the last element to the simplest rational within ``tol``.
    Callers pick ``tol`` to match the sequence length; raises NoConvergence
    when the tail wanders by more than ``tol``.
    """
    if len(seq) < 2:
        raise ValueError("need at least two vectors")
    tol = Fraction(tol)
    normalized = [_sup_normalize(v) for v in seq]
    tail = normalized[len(normalized) // 2 :]
    for w1, w2 in zip(tail, tail[1:]):
        gap = max(abs(a - b) for a, b in zip(w1, w2))
        if gap.compare(tol) > 0:
            raise NoConvergence(f"tail step exceeds tolerance {tol}")
    last = normalized[-1]
    snapped = []
    for x in last:
        if x.is_rational:
            f = x.to_fraction()
            snapped.append(simplest_between(f - tol, f + tol))
        else:
            return tuple(last)  # irrational coordinate: report as-is
    return _primitive(snapped)
