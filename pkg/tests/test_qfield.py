import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cglab.errors import IncomparableFields
from cglab.qfield import (
    ExtValue,
    QuadValue,
    cmp_quad,
    floor_quad,
    solve_quadratic,
    sqrt_bounds,
    squarefree_decompose,
)


def bracket_floor(a: Fraction, b: Fraction, d: int) -> int:
    """Independent floor oracle: integer-square bracketing of b*sqrt(d).

    Scans integers z and decides z <= a + b sqrt(d) < z+1 by comparing
    (z - a)^2 against b^2 d with explicit sign handling.
    """

    def leq_value(z) -> bool:  # z <= a + b sqrt(d)
        lhs = Fraction(z) - a  # compare lhs <= b sqrt d
        if b == 0:
            return lhs <= 0
        if b > 0:
            if lhs <= 0:
                return True
            return lhs * lhs <= b * b * d
        if lhs > 0:
            return False
        return lhs * lhs >= b * b * d

    z = math.floor(a + b * math.sqrt(d)) - 2
    while leq_value(z + 1):
        z += 1
    return z


def test_floor_rational_case():
    assert floor_quad(QuadValue(Fraction(3, 2))) == 1


def test_floor_minus_two_sqrt2():
    # oracle: 2^2 = 4 < 8 < 9 = 3^2, hence 2 < 2 sqrt2 < 3
    assert 2 * 2 < 8 < 3 * 3
    assert bracket_floor(Fraction(0), Fraction(-2), 2) == -3
    assert floor_quad(QuadValue(0, -2, 2)) == -3


def test_floor_shifted_hyperbola_value():
    v = QuadValue(Fraction(-2, 5), -2, 2)
    assert bracket_floor(Fraction(-2, 5), Fraction(-2), 2) == -4
    assert floor_quad(v) == -4


@pytest.mark.parametrize(
    "u, v, sign",
    [
        (QuadValue(1), QuadValue(0, 1, 2), -1),
        (QuadValue(99, -70, 2), QuadValue(0), 1),   # 99^2 = 9801 > 9800 = 2*70^2
        (QuadValue(41, -29, 2), QuadValue(0), -1),  # 41^2 = 1681 < 1682 = 2*29^2
    ],
)
def test_cmp_examples(u, v, sign):
    assert cmp_quad(u, v) == sign


def test_cmp_incomparable_fields():
    with pytest.raises(IncomparableFields):
        cmp_quad(QuadValue(0, 1, 2), QuadValue(0, 1, 3))


def test_arith_examples():
    assert QuadValue(1, 1, 2) * QuadValue(1, -1, 2) == QuadValue(-1)
    assert QuadValue(Fraction(2, 5), 2, 2) + QuadValue(Fraction(3, 5)) == QuadValue(1, 2, 2)
    assert QuadValue(1, 1, 2) / QuadValue(1, 1, 2) == QuadValue(1)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        QuadValue(1) / QuadValue(0)


def test_squarefree_normalisation():
    v = QuadValue(0, 1, 8)  # sqrt 8 = 2 sqrt 2
    assert v.d == 2 and v.b == 2
    assert QuadValue(3, 5, 9) == QuadValue(18)  # sqrt 9 collapses to rational
    with pytest.raises(ValueError):
        QuadValue(0, 1, 10**6 + 1)


rationals = st.fractions(min_value=-50, max_value=50, max_denominator=20)


@settings(max_examples=300, deadline=None)
@given(a=rationals, b=rationals, d=st.sampled_from([2, 3, 5]))
def test_floor_bracket_property(a, b, d):
    v = QuadValue(a, b, d)
    z = v.floor()
    assert v.compare(QuadValue(z)) >= 0
    assert v.compare(QuadValue(z + 1)) < 0


@settings(max_examples=200, deadline=None)
@given(
    a1=rationals, b1=rationals, a2=rationals, b2=rationals, a3=rationals,
    b3=rationals, d=st.sampled_from([2, 3, 5]),
)
def test_total_order_properties(a1, b1, a2, b2, a3, b3, d):
    u, v, w = QuadValue(a1, b1, d), QuadValue(a2, b2, d), QuadValue(a3, b3, d)
    # antisymmetry and transitivity of the exact order
    assert (u.compare(v) == 0) == (v.compare(u) == 0)
    assert u.compare(v) == -v.compare(u)
    if u.compare(v) <= 0 and v.compare(w) <= 0:
        assert u.compare(w) <= 0


def test_arith_against_interval_evaluation():
    # exact results stay inside outward-rounded interval arithmetic
    rng = random.Random(4)
    for _ in range(10_000):
        d = rng.choice([2, 3, 5])
        a1, b1 = Fraction(rng.randint(-30, 30), rng.randint(1, 9)), Fraction(rng.randint(-30, 30), rng.randint(1, 9))
        a2, b2 = Fraction(rng.randint(-30, 30), rng.randint(1, 9)), Fraction(rng.randint(-30, 30), rng.randint(1, 9))
        u, v = QuadValue(a1, b1, d), QuadValue(a2, b2, d)
        op = rng.choice(["+", "-", "*"])
        exact = u + v if op == "+" else u - v if op == "-" else u * v
        lo_s, hi_s = sqrt_bounds(d, 40)

        def interval(a, b):
            cands = (a + b * lo_s, a + b * hi_s)
            return min(cands), max(cands)

        ulo, uhi = interval(a1, b1)
        vlo, vhi = interval(a2, b2)
        if op == "+":
            lo, hi = ulo + vlo, uhi + vhi
        elif op == "-":
            lo, hi = ulo - vhi, uhi - vlo
        else:
            prods = [ulo * vlo, ulo * vhi, uhi * vlo, uhi * vhi]
            lo, hi = min(prods), max(prods)
        elo, ehi = exact.bounds(60)
        assert lo <= ehi and elo <= hi  # enclosures intersect
        width = hi - lo
        assert elo >= lo - width and ehi <= hi + width


def test_ext_value_ordering_and_floor():
    inf = ExtValue.infinity()
    fin = ExtValue.finite(QuadValue(10**9))
    assert fin < inf
    assert inf.compare(inf) == 0
    assert (fin + inf).is_finite is False
    with pytest.raises(ValueError):
        inf.floor()


def test_solve_quadratic_exact_roots():
    roots = solve_quadratic(1, 0, -2)
    assert roots == [QuadValue(0, -1, 2), QuadValue(0, 1, 2)]
    assert solve_quadratic(1, -2, 1) == [QuadValue(1)]
    assert solve_quadratic(1, 0, 1) == []
    assert solve_quadratic(0, 2, -3) == [QuadValue(Fraction(3, 2))]


def test_squarefree_decompose():
    assert squarefree_decompose(8) == (2, 2)
    assert squarefree_decompose(1) == (1, 1)
    assert squarefree_decompose(12) == (2, 3)
    assert squarefree_decompose(49) == (7, 1)
