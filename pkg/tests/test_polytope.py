import itertools
import random
from fractions import Fraction

import pytest

from cglab.errors import EmptyPolyhedron, UnboundedDirection
from cglab.linalg import fdot
from cglab.polytope import (
    HPolyhedron,
    VPolyhedron,
    face_of,
    is_subset,
    lineality_space,
    recession_cone,
    remove_redundant,
    set_equal,
    support,
)

SQUARE = HPolyhedron.make([(1, 0), (-1, 0), (0, 1), (0, -1)], [1, 0, 1, 0])
ORTHANT = HPolyhedron.make([(-1, 0), (0, -1)], [0, 0])
HULL_EXAMPLE = HPolyhedron.make([(-1, -1), (-1, 0), (0, -1)], [-3, -1, -1])


def brute_vertices(H):
    """Vertex oracle independent of double description: solve every n-subset
    of rows for equality and keep the feasible, rank-n solutions."""
    n = H.n
    verts = set()
    for rows in itertools.combinations(range(len(H.A)), n):
        mat = [H.A[i] for i in rows]
        rhs = [H.b[i] for i in rows]
        sol = _solve_exact(mat, rhs)
        if sol is not None and H.contains_point(sol):
            verts.add(sol)
    return verts


def _solve_exact(mat, rhs):
    n = len(mat[0])
    m = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(mat, rhs)]
    cols = n
    row_i = 0
    pivots = []
    for col in range(cols):
        piv = next((r for r in range(row_i, len(m)) if m[r][col] != 0), None)
        if piv is None:
            return None  # singular: not a vertex candidate
        m[row_i], m[piv] = m[piv], m[row_i]
        m[row_i] = [x / m[row_i][col] for x in m[row_i]]
        for r in range(len(m)):
            if r != row_i and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[row_i])]
        pivots.append(col)
        row_i += 1
    return tuple(m[i][cols] for i in range(n))


def test_dd_unit_square():
    V = SQUARE.to_v()
    assert set(V.vertices) == {(0, 0), (1, 0), (0, 1), (1, 1)}
    assert V.rays == () and V.lineality == ()


def test_dd_orthant():
    V = ORTHANT.to_v()
    assert V.vertices == ((Fraction(0), Fraction(0)),)
    assert set(V.rays) == {(1, 0), (0, 1)}


def test_dd_integer_hull_polyhedron():
    V = HULL_EXAMPLE.to_v()
    assert set(V.vertices) == {(1, 2), (2, 1)}
    assert set(V.rays) == {(1, 0), (0, 1)}


def test_dd_matches_brute_force_vertices():
    rng = random.Random(99)
    for _ in range(60):
        n = rng.choice([2, 2, 3])
        rows = [tuple(rng.randint(-5, 5) for _ in range(n)) for _ in range(rng.randint(n + 1, n + 4))]
        b = [rng.randint(-5, 8) for _ in rows]
        # bound the region so every vertex shows up in both paths
        for i in range(n):
            rows.append(tuple(1 if j == i else 0 for j in range(n)))
            b.append(10)
            rows.append(tuple(-1 if j == i else 0 for j in range(n)))
            b.append(10)
        H = HPolyhedron.make(rows, b)
        V = H.to_v()
        assert set(V.vertices) == brute_vertices(H)


def test_dd_roundtrip_set_equality_random():
    rng = random.Random(5)
    for _ in range(100):
        n = rng.choice([2, 3])
        rows = [tuple(rng.randint(-4, 4) for _ in range(n)) for _ in range(rng.randint(2, 6))]
        b = [rng.randint(-3, 6) for _ in rows]
        H = HPolyhedron.make(rows, b, n=n)
        V = H.to_v()
        back = V.to_h()
        assert set_equal(H, back)


def test_empty_polyhedron_is_a_value():
    empty = HPolyhedron.make([(1, 0), (-1, 0)], [0, -1])
    assert empty.is_empty
    assert empty.to_v().is_empty
    assert set_equal(empty, HPolyhedron.empty(2))


@pytest.mark.parametrize(
    "P, c, expected",
    [
        (SQUARE, (1, 1), Fraction(2)),
        (HPolyhedron.make([(-1, 0), (0, -1), (2, 2)], [0, 0, 3]), (1, 1), Fraction(3, 2)),
    ],
)
def test_support_finite(P, c, expected):
    res = support(P, c)
    assert res.value.value.to_fraction() == expected
    assert res.attained and P.contains_point(res.argmax)


def test_support_unbounded_direction():
    assert not support(ORTHANT, (1, 0)).is_finite


def test_support_empty_raises():
    with pytest.raises(EmptyPolyhedron):
        support(HPolyhedron.empty(2), (1, 0))


def test_support_equals_vertex_enumeration():
    rng = random.Random(42)
    for _ in range(40):
        rows = [tuple(rng.randint(-4, 4) for _ in range(2)) for _ in range(4)]
        b = [rng.randint(0, 6) for _ in rows]
        rows += [(1, 0), (-1, 0), (0, 1), (0, -1)]
        b += [7, 7, 7, 7]
        H = HPolyhedron.make(rows, b)
        if H.is_empty:
            continue
        c = (rng.randint(-3, 3), rng.randint(-3, 3))
        res = support(H, c)
        assert res.value.value.to_fraction() == max(fdot(c, v) for v in brute_vertices(H))


def test_face_of_square():
    f = face_of(SQUARE, (1, 0))
    assert set(f.vrep.vertices) == {(1, 0), (1, 1)}
    assert [SQUARE.A[i] for i in f.active_rows] == [(1, 0)]
    f2 = face_of(SQUARE, (1, 1))
    assert f2.vrep.vertices == ((1, 1),)


def test_face_of_hull_edge():
    f = face_of(HULL_EXAMPLE, (-1, -1))
    assert set(f.vrep.vertices) == {(1, 2), (2, 1)}


def test_face_of_unbounded_raises():
    with pytest.raises(UnboundedDirection):
        face_of(ORTHANT, (1, 1))


def test_recession_and_lineality():
    assert set(recession_cone(HULL_EXAMPLE)) == {(1, 0), (0, 1)}
    assert recession_cone(SQUARE) == []
    half = HPolyhedron.make([(1, 1)], [0])
    rec = recession_cone(half)
    assert (1, -1) in rec and (-1, 1) in rec
    assert lineality_space(half) == [(1, -1)]


def test_is_subset_with_witness():
    ok, _ = is_subset(SQUARE, HPolyhedron.make([(-1, 0), (0, -1)], [1, 1]))
    assert ok
    ok, w = is_subset(ORTHANT, SQUARE)
    assert not ok
    assert ORTHANT.contains_point(w) and not SQUARE.contains_point(w)


def test_remove_redundant():
    P = remove_redundant(HPolyhedron.make([(1, 0), (1, 0)], [1, 2]))
    assert P.rows() == [((1, 0), 1)]
    sq = remove_redundant(HPolyhedron.make(list(SQUARE.A) * 2, list(SQUARE.b) * 2))
    assert len(sq.A) == 4
    dropped = remove_redundant(HPolyhedron.make([(1, 2), (1, 1), (0, 1)], [5, 4, 1]))
    assert ((1, 2), 5) not in dropped.rows()
    assert set_equal(dropped, HPolyhedron.make([(1, 1), (0, 1)], [4, 1]))


def test_implicit_equalities_stay_as_pairs():
    point = HPolyhedron.make([(1, 0), (-1, 0), (0, 1), (0, -1)], [0, 0, 0, 0])
    R = remove_redundant(point)
    assert set_equal(R, point)
    assert not R.to_v().rays and R.to_v().vertices == ((0, 0),)


def test_sticky_face_property():
    # shrink a rational ball around c0 until every sampled face nests in
    # the c0 face; geometric shrinking must stabilise
    rng = random.Random(17)
    for _ in range(10):
        pts = {(rng.randint(-4, 4), rng.randint(-4, 4)) for _ in range(rng.randint(3, 6))}
        P = VPolyhedron.make(pts).to_h()
        if P.to_v().is_empty or len(P.to_v().vertices) < 2:
            continue
        c0 = (rng.randint(-3, 3), rng.randint(-3, 3))
        if c0 == (0, 0):
            c0 = (1, 0)
        base = face_of(P, c0).vrep
        eps = Fraction(1)
        for _ in range(30):
            good = True
            for k in range(20):
                delta = (
                    Fraction(rng.randint(-100, 100), 100) * eps / 2,
                    Fraction(rng.randint(-100, 100), 100) * eps / 2,
                )
                c = (c0[0] + delta[0], c0[1] + delta[1])
                if c == (0, 0):
                    continue
                moved = face_of(P, c).vrep
                if not is_subset(moved, base, witness=False)[0]:
                    good = False
                    break
            if good:
                break
            eps /= 2
        assert good, "no stable epsilon found while shrinking geometrically"
