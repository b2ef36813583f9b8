"""Kronecker-type approximation in the rational subspace attached to a
direction vector, via exact continued fractions of quadratic irrationals.

For a vector pi with entries in one quadratic field, the subspace V of
directions annihilated by every rational functional that is rational at pi
has dimension 0 or 1.  Integer combinations c - m*pi landing in V within
any tolerance come from convergents of the periodic continued fraction,
computed exactly; the alternating sides of consecutive convergents give an
exact convex zero combination of residuals.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import ApproximationBudget
from .linalg import q_linear_basis
from .qfield import QuadValue


def cf_expansion(theta: QuadValue):
    """Partial quotients of theta, exactly; periodic for quadratic values."""
    while True:
        a = theta.floor()
        yield a
        frac = theta - a
        if frac.sign() == 0:
            return
        theta = frac.inverse()


def convergents(theta: QuadValue):
    """Exact convergent pairs (p, q) with p/q -> theta."""
    p_prev, q_prev = 1, 0
    p, q = None, None
    for a in cf_expansion(theta):
        if p is None:
            p, q = a, 1
        else:
            p, q, p_prev, q_prev = a * p + p_prev, a * q + q_prev, p, q
        yield p, q


@dataclass(frozen=True)
class VpiSubspace:
    """The rational subspace of a direction vector, in explicit form.

    ``coeffs`` expresses every entry of pi over the basis {1, pi[i0]} for
    the anchor index set (empty when pi is rational); ``basis`` spans the
    subspace: e_i plus its dependent coordinates, one vector per anchor.
    """

    pi: tuple
    index_set: tuple
    coeffs: tuple
    basis: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, x) -> bool:
        xs = [QuadValue.of(v) for v in x]
        for j, (q0, qs) in enumerate(self.coeffs):
            if j in self.index_set:
                continue
            acc = QuadValue.of(0)
            for i, qi in qs.items():
                acc = acc + QuadValue.of(qi) * xs[i]
            if (xs[j] - acc).sign() != 0:
                return False
        return True


def v_pi(pi) -> VpiSubspace:
    """Rational subspace attached to pi, from its Q-linear basis data."""
    pi = tuple(QuadValue.of(x) for x in pi)
    if all(x.sign() == 0 for x in pi):
        raise ValueError("pi must be nonzero")
    lin = q_linear_basis(pi)
    n = len(pi)
    basis = []
    for i in lin.index_set:
        vec = [Fraction(0)] * n
        vec[i] = Fraction(1)
        for j, (q0, qs) in enumerate(lin.coeffs):
            if j != i and i in qs:
                vec[j] = qs[i]
        basis.append(tuple(vec))
    return VpiSubspace(pi, lin.index_set, lin.coeffs, tuple(basis))


@dataclass(frozen=True)
class Approximant:
    """Integer c and multiplier m > N0 with c - m*pi in the subspace."""

    c: tuple
    m: int
    residual: tuple  # QuadValue entries, exactly c - m*pi

    def scaled_norm_sq(self) -> QuadValue:
        acc = QuadValue.of(0)
        for r in self.residual:
            acc = acc + r * r
        return acc


def _common_denominator(space: VpiSubspace) -> int:
    den = 1
    for j, (q0, qs) in enumerate(space.coeffs):
        if j in space.index_set:
            continue
        den = den * q0.denominator // _gcd(den, q0.denominator)
        for qi in qs.values():
            den = den * qi.denominator // _gcd(den, qi.denominator)
    return den


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _build_vector(space: VpiSubspace, c0: int, m: int):
    """Assemble the integer vector with anchor coordinate c0; the other
    coordinates are forced by integrality of m*q0 + q_i*c0."""
    n = len(space.pi)
    i0 = space.index_set[0]
    c = [0] * n
    for j, (q0, qs) in enumerate(space.coeffs):
        if j == i0:
            c[j] = c0
        else:
            val = m * q0 + qs.get(i0, Fraction(0)) * c0
            if val.denominator != 1:
                return None
            c[j] = val.numerator
    return tuple(c)


def _residual(space: VpiSubspace, c, m):
    return tuple(QuadValue.of(ci) - QuadValue.of(m) * x for ci, x in zip(c, space.pi))


def _norm_ok(space: VpiSubspace, scalar: QuadValue, eps: Fraction) -> bool:
    # residual vector = scalar * basis[0]; compare squared norms exactly
    e = space.basis[0]
    norm_sq = sum((x * x for x in e), Fraction(0))
    return (scalar * scalar * QuadValue(norm_sq)).compare(QuadValue(eps * eps)) <= 0


def kronecker_approx(pi, target, eps, n0: int, budget: int = 200_000) -> Approximant:
    """Find c in Z^n and m > n0 with c - m*pi within eps of target.

    target must lie in the subspace (exact check).  Homogeneous targets go
    through continued-fraction convergents; inhomogeneous ones scan the
    multiplier with exact nearest-integer tests, up to ``budget``.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    space = v_pi(pi)
    target = tuple(Fraction(x) for x in target)
    if not space.contains(target):
        raise ValueError("target is outside the rational subspace of pi")

    if not space.index_set:  # pi rational: the subspace is {0}, target == 0
        den = 1
        for x in space.pi:
            den = den * x.a.denominator // _gcd(den, x.a.denominator)
        m = den * (n0 // den + 1)
        c = tuple((QuadValue.of(m) * x).to_fraction().numerator for x in space.pi)
        return Approximant(c, m, _residual(space, c, m))

    i0 = space.index_set[0]
    theta = space.pi[i0]
    t = target[i0]
    D = _common_denominator(space)

    if t == 0:
        for p, q in itertools.islice(convergents(theta), 400):
            m = q * D
            if m <= n0:
                continue
            c0 = p * D
            scalar = QuadValue.of(c0) - QuadValue.of(m) * theta
            if _norm_ok(space, scalar, eps):
                c = _build_vector(space, c0, m)
                if c is not None:
                    return Approximant(c, m, _residual(space, c, m))
        raise ApproximationBudget("no convergent reached the tolerance")

    for step in range(1, budget + 1):
        m = D * (n0 // D + step)
        if m <= n0:
            continue
        anchor = QuadValue.of(m) * theta + t
        base = anchor.floor()
        for c0 in (D * (base // D), D * (base // D) + D):
            off = QuadValue.of(c0) - QuadValue.of(m) * theta - t
            if _norm_ok(space, off, eps):
                c = _build_vector(space, c0, m)
                if c is not None:
                    return Approximant(c, m, _residual(space, c, m))
    raise ApproximationBudget(f"no approximant within {budget} multipliers")


def zero_combination(pi, eps, n0: int, k_max: int = 3):
    """Approximants and exact convex weights with zero residual sum.

    Returns a list of (c, m, lambda) with lambda >= 0 summing to one and
    sum lambda * (c - m*pi) = 0 exactly.  For irrational pi the weights are
    quadratic irrationals of the same field (rational weights cannot cancel
    a positive combination of the multipliers); two residuals of opposite
    sign always suffice.  A rational pi yields the single exact term.
    """
    eps = Fraction(eps)
    space = v_pi(pi)
    if not space.index_set:
        app = kronecker_approx(pi, (0,) * len(space.pi), eps, n0)
        return [(app.c, app.m, QuadValue.of(1))]
    if k_max < 2:
        raise ApproximationBudget("cannot cancel an irrational residual with one term")
    i0 = space.index_set[0]
    theta = space.pi[i0]
    D = _common_denominator(space)
    neg = pos = None
    for p, q in itertools.islice(convergents(theta), 400):
        m = q * D
        if m <= n0:
            continue
        c0 = p * D
        scalar = QuadValue.of(c0) - QuadValue.of(m) * theta
        if not _norm_ok(space, scalar, eps):
            continue
        c = _build_vector(space, c0, m)
        if c is None:
            continue
        sign = scalar.sign()
        if sign == 0:
            return [(c, m, QuadValue.of(1))]
        if sign < 0 and neg is None:
            neg = (c, m, scalar)
        if sign > 0 and pos is None:
            pos = (c, m, scalar)
        if neg and pos:
            break
    if not (neg and pos):
        raise ApproximationBudget("could not find residuals of both signs")
    s_neg, s_pos = neg[2], pos[2]
    lam_neg = s_pos / (s_pos - s_neg)
    lam_pos = -s_neg / (s_pos - s_neg)
    assert lam_neg.sign() >= 0 and lam_pos.sign() >= 0
    assert (lam_neg + lam_pos - 1).sign() == 0
    assert (lam_neg * s_neg + lam_pos * s_pos).sign() == 0
    return [(neg[0], neg[1], lam_neg), (pos[0], pos[1], lam_pos)]
