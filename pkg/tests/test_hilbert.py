import itertools
import random
from fractions import Fraction

import pytest

from cglab.errors import NotPointed
from cglab.hilbert import (
    ChainWitness,
    RationalCone,
    decompose,
    dickson_minimal,
    hilbert_basis,
    lemma7_witness,
    monoid_generators,
)

QUADRANT = RationalCone.make([(1, 0), (0, 1)])


def brute_generates(basis, point, cap=12):
    """Oracle: recursive search over nonnegative-integer combinations,
    pruned by per-generator coefficient caps.  Independent of the library's
    decomposition DFS (no cone membership involved)."""
    point = tuple(point)
    if not basis:
        return not any(point)

    def rec(rest, start):
        if not any(rest):
            return True
        if start == len(basis):
            return False
        g = basis[start]
        for k in range(cap + 1):
            cand = tuple(r - k * gi for r, gi in zip(rest, g))
            if rec(cand, start + 1):
                return True
        return False

    return rec(point, 0)


@pytest.mark.parametrize(
    "gens, expected",
    [
        ([(1, 0), (0, 1)], [(0, 1), (1, 0)]),
        ([(1, 0), (1, 2)], [(1, 0), (1, 1), (1, 2)]),
        ([(1, 0), (1, 4)], [(1, 0), (1, 1), (1, 2), (1, 3), (1, 4)]),
    ],
)
def test_hilbert_basis_examples(gens, expected):
    assert hilbert_basis(RationalCone.make(gens)) == sorted(expected)


def test_hilbert_basis_requires_pointed():
    with pytest.raises(NotPointed):
        hilbert_basis(RationalCone.make([(1, 0), (-1, 0)]))


def cone2_contains(rays, x):
    """Independent 2-D cone membership: Cramer solve over the two extreme
    rays (or a parallel test for a single ray)."""
    if len(rays) == 1:
        (r,) = rays
        if r[0] * x[1] != r[1] * x[0]:
            return False
        t = Fraction(x[0], r[0]) if r[0] else Fraction(x[1], r[1])
        return t >= 0
    r1, r2 = rays
    det = r1[0] * r2[1] - r1[1] * r2[0]
    if det == 0:
        return cone2_contains([r1], x) or cone2_contains([r2], x)
    a = Fraction(x[0] * r2[1] - x[1] * r2[0], det)
    b = Fraction(r1[0] * x[1] - r1[1] * x[0], det)
    return a >= 0 and b >= 0


def generates_in_cone(gens, rays, target):
    """Search for a nonnegative-integer combination, pruning remainders
    that leave the cone (membership by the Cramer oracle above)."""

    def rec(rest, start):
        if not any(rest):
            return True
        for i in range(start, len(gens)):
            nxt = tuple(r - g for r, g in zip(rest, gens[i]))
            if cone2_contains(rays, nxt) and rec(nxt, i):
                return True
        return False

    return rec(tuple(target), 0)


def test_hilbert_basis_generates_and_is_minimal_random():
    rng = random.Random(2024)
    for _ in range(50):
        g1 = (rng.randint(1, 6), rng.randint(0, 6))
        g2 = (rng.randint(0, 6), rng.randint(1, 6))
        cone = RationalCone.make([g1, g2])
        if not cone.is_pointed:
            continue
        basis = hilbert_basis(cone)
        rays = cone.extreme_rays()
        # generation: every cone lattice point in a window decomposes
        for x in itertools.product(range(-10, 11), repeat=2):
            if any(x) and cone2_contains(rays, x):
                coeffs = decompose(x, cone)
                assert coeffs is not None
                rebuilt = tuple(
                    sum(c * g[i] for c, g in zip(coeffs, basis)) for i in range(2)
                )
                assert rebuilt == x
        # minimality: no element decomposes over the others
        for i, h in enumerate(basis):
            others = [g for j, g in enumerate(basis) if j != i]
            assert not generates_in_cone(others, rays, h)


def test_decompose_examples():
    coeffs = decompose((2, 2), RationalCone.make([(1, 0), (1, 2)]))
    basis = hilbert_basis(RationalCone.make([(1, 0), (1, 2)]))
    rebuilt = tuple(sum(c * g[i] for c, g in zip(coeffs, basis)) for i in range(2))
    assert rebuilt == (2, 2)
    assert decompose((0, 0), QUADRANT) == [0, 0]
    assert decompose((-1, 0), QUADRANT) is None
    assert decompose((Fraction(1, 2), 0), QUADRANT) is None


def test_dickson_minimal_examples():
    assert dickson_minimal([(1, 2), (2, 1), (3, 3)]) == [(1, 2), (2, 1)]
    assert dickson_minimal([(1, 1), (2, 2)]) == [(1, 1)]
    assert dickson_minimal([(4, 7)]) == [(4, 7)]


def test_dickson_minimal_properties():
    rng = random.Random(8)
    for _ in range(50):
        pts = [tuple(rng.randint(0, 6) for _ in range(3)) for _ in range(rng.randint(1, 12))]
        mins = dickson_minimal(pts)
        # antichain
        for a in mins:
            for b in mins:
                if a != b:
                    assert not all(x <= y for x, y in zip(a, b))
        # domination
        for p in pts:
            assert any(all(m[i] <= p[i] for i in range(3)) for m in mins)


def test_lemma7_witness_bucket_example():
    vs = [(1, 1), (7, 7), (13, 13), (2, 2)]
    q = (Fraction(1, 2), Fraction(1, 3))
    w = lemma7_witness(vs, q, QUADRANT)
    assert isinstance(w, ChainWitness)
    assert vs[w.i_star] == (1, 1)
    assert {vs[i] for i in w.I} == {(7, 7), (13, 13)}
    assert w.frac == Fraction(5, 6)
    for i in w.I:
        diff = tuple(a - b for a, b in zip(vs[i], vs[w.i_star]))
        assert QUADRANT.contains(diff)


def test_lemma7_witness_zero_fraction():
    w = lemma7_witness([(1, 0), (2, 0)], (0, 0), QUADRANT)
    assert w.i_star == 0 and w.I == (1,) and w.frac == 0


def test_lemma7_witness_none_case():
    # distinct fractional parts and incomparable points: no bucket at all
    vs = [(1, 0), (2, 3)]
    w = lemma7_witness(vs, (Fraction(1, 7), Fraction(0)), QUADRANT)
    assert w is None
    # brute-check the premise: fractional parts really differ
    f = [sum(Fraction(a) * b for a, b in zip(v, (Fraction(1, 7), Fraction(0)))) % 1 for v in vs]
    assert f[0] != f[1]


def test_lemma7_witness_rejects_outside_points():
    with pytest.raises(ValueError):
        lemma7_witness([(-1, 0)], (0, 0), QUADRANT)


def test_monoid_generators_nonpointed():
    halfplane = RationalCone.make([(1, 0), (-1, 0), (0, 1)])
    gens = monoid_generators(halfplane)
    assert set(gens) == {(1, 0), (-1, 0), (0, 1)}
    # generation check against a brute window
    for x in itertools.product(range(-4, 5), repeat=2):
        if halfplane.contains(x):
            assert brute_generates(gens, x, cap=8)


def test_monoid_generators_full_space():
    everything = RationalCone.make([(1, 0), (-1, 0), (0, 1), (0, -1)])
    gens = monoid_generators(everything)
    for x in itertools.product(range(-3, 4), repeat=2):
        assert brute_generates(gens, x, cap=6)
