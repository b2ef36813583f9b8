"""Exact linear algebra over Q and Q(sqrt(d)).

Vectors are plain tuples whose entries are Fractions or QuadValues (the
d = 0 case covers the rationals).  Gaussian elimination pivots on the first
nonzero entry; in an exact field there is nothing numerical to stabilise,
and the fixed rule keeps every output deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DependentBasis
from .qfield import QuadValue

Vec = tuple


def as_quad_vec(v) -> tuple[QuadValue, ...]:
    return tuple(QuadValue.of(x) for x in v)


def as_fraction_vec(v) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) if not isinstance(x, QuadValue) else x.to_fraction() for x in v)


def dot(u, v):
    acc = QuadValue.of(0)
    for x, y in zip(u, v, strict=True):
        acc = acc + QuadValue.of(x) * QuadValue.of(y)
    return acc


def fdot(u, v) -> Fraction:
    """Rational inner product; inputs must be rational-entried."""
    return sum((Fraction(x) * Fraction(y) for x, y in zip(u, v, strict=True)), Fraction(0))


def vec_add(u, v):
    return tuple(QuadValue.of(x) + QuadValue.of(y) for x, y in zip(u, v, strict=True))

def vec_sub(u, v):
    return tuple(QuadValue.of(x) - QuadValue.of(y) for x, y in zip(u, v, strict=True))


def vec_scale(c, v):
    c = QuadValue.of(c)
    return tuple(c * QuadValue.of(x) for x in v)


def is_zero_vec(v) -> bool:
    return all(QuadValue.of(x).sign() == 0 for x in v)


def _echelon(rows):
    """Row echelon form; returns (reduced rows, pivot column indices)."""
    rows = [list(as_quad_vec(r)) for r in rows]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    rank = 0
    for col in range(ncols):
        pivot_row = next(
            (i for i in range(rank, len(rows)) if rows[i][col].sign() != 0), None
        )
        if pivot_row is None:
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        inv = rows[rank][col].inverse()
        rows[rank] = [inv * x for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col].sign() != 0:
                factor = rows[i][col]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(rows):
            break
    return rows[:rank], pivots


def rank(rows) -> int:
    if not rows:
        return 0
    _, pivots = _echelon(rows)
    return len(pivots)


def kernel(rows) -> list[tuple[QuadValue, ...]]:
    """Exact basis of {x : Mx = 0}; empty list for full column rank."""
    if not rows:
        return []
    ncols = len(rows[0])
    reduced, pivots = _echelon(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [QuadValue.of(0)] * ncols
        v[f] = QuadValue.of(1)
        for r, p in zip(reduced, pivots):
            v[p] = -r[f]
        basis.append(tuple(v))
    return basis


def solve(rows, rhs):
    """One exact solution of Mx = rhs, or None when inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    if not rows:
        return None
    aug = [list(r) + [b] for r, b in zip(rows, rhs, strict=True)]
    reduced, pivots = _echelon(aug)
    ncols = len(rows[0])
    x = [QuadValue.of(0)] * ncols
    for r, p in zip(reduced, pivots):
        if p == ncols:  # pivot in the rhs column: 0 = 1
            return None
        x[p] = r[ncols]
    return tuple(x)


def proj_subspace(v, basis):
    """Orthogonal projection of v onto span(basis), via the Gram system."""
    if not basis:
        return tuple(QuadValue.of(0) for _ in v)
    gram = [[dot(bi, bj) for bj in basis] for bi in basis]
    rhs = [dot(bi, v) for bi in basis]
    if rank(gram) < len(basis):
        raise DependentBasis("projection basis is linearly dependent")
    coeffs = solve(gram, rhs)
    out = [QuadValue.of(0)] * len(v)
    for c, b in zip(coeffs, basis):
        for i, x in enumerate(b):
            out[i] = out[i] + c * QuadValue.of(x)
    return tuple(out)


def orth_complement(basis, ambient_dim: int):
    """Basis of the orthogonal complement of span(basis) in R^ambient_dim."""
    if not basis:
        return [
            tuple(QuadValue.of(1 if j == i else 0) for j in range(ambient_dim))
            for i in range(ambient_dim)
        ]
    return kernel(basis)


@dataclass(frozen=True)
class QLinearBasis:
    """Q-linear basis data for a tuple of values in one quadratic field.

    ``index_set`` lists positions whose values join 1 in the basis (at most
    one for quadratic fields); ``coeffs[j] = (q0, {i: qi})`` reconstructs
    values[j] = q0 + sum qi * values[i] exactly, for every j.
    """

    index_set: tuple[int, ...]
    coeffs: tuple[tuple[Fraction, dict], ...]

    def reconstruct(self, values):
        out = []
        for q0, qs in self.coeffs:
            acc = QuadValue.of(q0)
            for i, qi in qs.items():
                acc = acc + QuadValue.of(qi) * QuadValue.of(values[i])
            out.append(acc)
        return tuple(out)


def q_linear_basis(values) -> QLinearBasis:
    """Express values over the Q-basis {1, values[i0]} of their field.

    i0 is the lowest index with an irrational entry; a purely rational
    input has an empty index set and constant coefficients only.
    """
    vals = as_quad_vec(values)
    if not vals:
        raise ValueError("q_linear_basis of an empty tuple")
    i0 = next((i for i, v in enumerate(vals) if v.b != 0), None)
    if i0 is None:
        return QLinearBasis((), tuple((v.a, {}) for v in vals))
    base = vals[i0]
    coeffs = []
    for j, v in enumerate(vals):
        if j == i0:
            coeffs.append((Fraction(0), {i0: Fraction(1)}))
            continue
        qi = v.b / base.b
        q0 = v.a - qi * base.a
        coeffs.append((q0, {} if qi == 0 else {i0: qi}))
    return QLinearBasis((i0,), tuple(coeffs))


# -- integer lattice utilities ------------------------------------------


def _primitive_int_row(row):
    fracs = [Fraction(x) for x in row]
    den = 1
    for f in fracs:
        den = den * f.denominator // math.gcd(den, f.denominator)
    ints = [f.numerator * (den // f.denominator) for f in fracs]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    return tuple(x // g for x in ints) if g else tuple(ints)


def integer_kernel_completion(rows):
    """Lattice basis of {x in Z^n : Mx = 0}, plus a completion to a Z^n basis.

    Returns (kernel_cols, other_cols) where the concatenation is the column
    set of a unimodular matrix.  Column-Euclidean reduction of the integer
    matrix; the kernel columns are saturated by construction.
    """
    rows = [list(_primitive_int_row(r)) for r in rows]
    if not rows:
        raise ValueError("need at least one row")
    n = len(rows[0])
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]  # columns of U
    # work columnwise: cols[j][i] = rows[i][j]
    cols = [[rows[i][j] for i in range(len(rows))] for j in range(n)]
    ucols = [list(c) for c in zip(*u)]
    fixed = 0
    for r in range(len(rows)):
        # eliminate row r across columns fixed..n-1 by gcd steps
        while True:
            live = [j for j in range(fixed, n) if cols[j][r] != 0]
            if len(live) <= 1:
                break
            j1, j2 = live[0], live[1]
            if abs(cols[j1][r]) > abs(cols[j2][r]):
                j1, j2 = j2, j1
            q = cols[j2][r] // cols[j1][r]
            cols[j2] = [a - q * b for a, b in zip(cols[j2], cols[j1])]
            ucols[j2] = [a - q * b for a, b in zip(ucols[j2], ucols[j1])]
        live = [j for j in range(fixed, n) if cols[j][r] != 0]
        if live:
            j = live[0]
            cols[fixed], cols[j] = cols[j], cols[fixed]
            ucols[fixed], ucols[j] = ucols[j], ucols[fixed]
            fixed += 1
    kernel_cols = [tuple(ucols[j]) for j in range(fixed, n)]
    other_cols = [tuple(ucols[j]) for j in range(fixed)]
    return kernel_cols, other_cols
