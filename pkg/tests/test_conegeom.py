import random
from fractions import Fraction

import pytest

from cglab.conegeom import (
    CutFamily,
    closure_region,
    conic_limit,
    decompose_lineality,
    extreme_rays,
    is_valid,
    simplest_between,
)
from cglab.errors import EmptyClosure, NoConvergence, NotPointed
from cglab.linalg import dot, fdot
from cglab.polytope import HPolyhedron, is_subset, set_equal
from cglab.qfield import QuadValue

SQUARE_ROWS = [(1, 0, 1), (0, 1, 1), (-1, 0, 0), (0, -1, 0)]


def test_cut_family_keeps_trivial_row_and_rejects_zero():
    fam = CutFamily.make([(1, 1)], 1)
    assert (0, 1) in fam.rows
    with pytest.raises(ValueError):
        CutFamily.make([(0, 0)], 1)


def test_closure_region_examples():
    fam = CutFamily.make([(1, 1)], 1)
    assert set_equal(closure_region(fam), HPolyhedron.make([(1,)], [1]))
    rows = [(-1, 0, -1), (0, -1, -1), (-1, -1, -4)]
    reg = closure_region(CutFamily.make(rows, 2))
    assert set_equal(reg, HPolyhedron.make([(-1, 0), (0, -1), (-1, -1)], [-1, -1, -4]))
    contradictory = CutFamily.make([(1, 0), (-1, -1)], 1)
    assert closure_region(contradictory).is_empty


def test_is_valid_examples():
    fam = CutFamily.make(SQUARE_ROWS, 2)
    assert is_valid(fam, (1, 1), 2)          # sum of two rows
    assert not is_valid(fam, (1, 1), 1)      # the corner (1,1) violates it
    assert is_valid(fam, (0, 0), 1)          # trivial row

    empty = CutFamily.make([(1, 0), (-1, -1)], 1)
    with pytest.raises(EmptyClosure):
        is_valid(empty, (1,), 1)


def test_is_valid_iff_halfspace_contains_region():
    rng = random.Random(31)
    for _ in range(200):
        n = rng.choice([1, 2, 3])
        rows = [
            tuple(rng.randint(-3, 3) for _ in range(n + 1)) for _ in range(rng.randint(1, 5))
        ]
        rows = [r for r in rows if any(r)]
        fam = CutFamily.make(rows, n) if rows else CutFamily.make([], n)
        region = closure_region(fam)
        if region.is_empty:
            continue
        alpha = tuple(rng.randint(-3, 3) for _ in range(n))
        beta = rng.randint(-3, 3)
        lhs = is_valid(fam, alpha, beta)
        rhs = is_subset(region, HPolyhedron.make([alpha], [beta], n=n), witness=False)[0]
        assert lhs == rhs


def test_decompose_lineality_examples():
    fam = CutFamily.make([(1, 0), (-1, 0), (0, 1)], 1, ensure_trivial=False)
    L, proj = decompose_lineality(fam)
    assert L == [(1, 0)]
    assert proj.rows == ((0, 1),)

    pointed = CutFamily.make([(1, 0), (0, 1)], 1, ensure_trivial=False)
    L, proj = decompose_lineality(pointed)
    assert L == []

    everything = CutFamily.make([(1, 0), (-1, 0), (0, 1), (0, -1)], 1, ensure_trivial=False)
    L, proj = decompose_lineality(everything)
    assert len(L) == 2 and proj.rows == ()


def test_decompose_lineality_membership_roundtrip():
    rng = random.Random(13)
    checked = 0
    while checked < 100:
        n = rng.choice([1, 2])
        rows = [tuple(rng.randint(-2, 2) for _ in range(n + 1)) for _ in range(rng.randint(2, 5))]
        rows = [r for r in rows if any(r)]
        if not rows:
            continue
        fam = CutFamily.make(rows, n, ensure_trivial=False)
        L, proj = decompose_lineality(fam)
        q = tuple(rng.randint(-4, 4) for _ in range(n + 1))
        in_cone = fam.cone_contains(q)
        # membership in cone(proj) + span(L): project q and test the part
        if L:
            from cglab.linalg import proj_subspace

            ql = proj_subspace(q, L)
            q_perp = tuple(QuadValue.of(a) - b for a, b in zip(q, ql))
        else:
            q_perp = tuple(QuadValue.of(a) for a in q)
        if proj.rows:
            split = proj.cone_contains(q_perp)
        else:
            split = all(x.sign() == 0 for x in q_perp)
        assert in_cone == split
        checked += 1


def test_extreme_rays_examples():
    fam = CutFamily.make([(1, 0), (1, 2), (1, 1)], 1, ensure_trivial=False)
    assert set(extreme_rays(fam)) == {(1, 0), (1, 2)}

    axes = CutFamily.make([(1, 0, 0), (0, 1, 0), (0, 0, 1)], 2, ensure_trivial=False)
    assert set(extreme_rays(axes)) == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}

    with pytest.raises(NotPointed):
        extreme_rays(CutFamily.make([(1, 0), (-1, 0)], 1, ensure_trivial=False))


def test_extreme_rays_of_shifted_cut_rows_lie_on_inputs():
    rows = [(-1, 0, -1), (0, -1, -1), (-1, -1, -4), (0, 0, 1)]
    fam = CutFamily.make(rows, 2)
    rays = extreme_rays(fam)
    inputs = set(fam.rows)
    assert rays and all(r in inputs for r in rays)
    # every input row is a nonnegative combination of the extreme rays
    ray_fam = CutFamily.make(rays, 2, ensure_trivial=False)
    for row in fam.rows:
        assert ray_fam.cone_contains(row)


def test_conic_limit_examples():
    assert conic_limit([(i, 1) for i in range(1, 51)], Fraction(1, 16)) == (1, 0)
    assert conic_limit([(2, 2)] * 4, Fraction(1, 1000)) == (1, 1)
    with pytest.raises(NoConvergence):
        conic_limit([(1, 0), (0, 1)] * 10, Fraction(1, 4))


def test_conic_limit_unique_up_to_scaling():
    up = conic_limit([(2 * i, 2) for i in range(1, 51)], Fraction(1, 16))
    assert up == (1, 0)


def test_simplest_between():
    assert simplest_between(Fraction(6, 10), Fraction(9, 10)) == Fraction(2, 3)
    assert simplest_between(Fraction(-1, 50), Fraction(1, 99)) == 0
    assert simplest_between(Fraction(3), Fraction(7, 2)) == 3
    assert simplest_between(Fraction(-7, 2), Fraction(-3)) == -3
