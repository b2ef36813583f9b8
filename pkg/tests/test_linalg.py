import random
from fractions import Fraction

import pytest

from cglab.errors import DependentBasis
from cglab.linalg import (
    dot,
    integer_kernel_completion,
    kernel,
    orth_complement,
    proj_subspace,
    q_linear_basis,
    solve,
)
from cglab.qfield import QuadValue

S2 = QuadValue(0, 1, 2)


def test_kernel_identity_is_trivial():
    assert kernel([(1, 0), (0, 1)]) == []


def test_kernel_single_row():
    (v,) = kernel([(1, 1)])
    assert dot((1, 1), v).sign() == 0


def test_kernel_over_quadratic_field():
    (v,) = kernel([(1, S2)])
    # substitute back: exact zero
    assert dot((QuadValue(1), S2), v).sign() == 0


def test_kernel_substitution_random_matrices():
    rng = random.Random(11)
    for _ in range(1000):
        rows = [
            tuple(Fraction(rng.randint(-4, 4)) for _ in range(rng.randint(2, 4)))
            for _ in range(rng.randint(1, 3))
        ]
        width = len(rows[0])
        rows = [r[:width] if len(r) >= width else r + (0,) * (width - len(r)) for r in rows]
        for v in kernel(rows):
            for row in rows:
                assert dot(row, v).sign() == 0


@pytest.mark.parametrize(
    "v, basis, expected",
    [
        ((1, 1), [(1, 0)], (QuadValue(1), QuadValue(0))),
        ((1, 0), [(1, 1)], (QuadValue(Fraction(1, 2)), QuadValue(Fraction(1, 2)))),
        ((3, 4, 0), [(1, 0, 0), (0, 1, 0)], (QuadValue(3), QuadValue(4), QuadValue(0))),
    ],
)
def test_projection_examples(v, basis, expected):
    assert proj_subspace(v, basis) == expected


def test_projection_idempotent_and_orthogonal():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randint(2, 4)
        basis = [tuple(Fraction(rng.randint(-3, 3)) for _ in range(n)) for _ in range(rng.randint(1, n - 1))]
        from cglab.linalg import rank as mat_rank

        if mat_rank(basis) < len(basis):
            continue
        v = tuple(Fraction(rng.randint(-5, 5)) for _ in range(n))
        p = proj_subspace(v, basis)
        assert proj_subspace(p, basis) == p
        residue = tuple(QuadValue.of(x) - y for x, y in zip(v, p))
        for b in basis:
            assert dot(b, residue).sign() == 0


def test_projection_rejects_dependent_basis():
    with pytest.raises(DependentBasis):
        proj_subspace((1, 1), [(1, 0), (2, 0)])


def test_orth_complement_examples():
    (v,) = orth_complement([(1, 0)], 2)
    assert v == (QuadValue(0), QuadValue(1))
    full = orth_complement([], 2)
    assert len(full) == 2
    (w,) = orth_complement([(1, 1, 0), (0, 0, 1)], 3)
    assert dot((1, 1, 0), w).sign() == 0 and dot((0, 0, 1), w).sign() == 0


def test_q_linear_basis_examples():
    lin = q_linear_basis((S2, QuadValue(1)))
    assert lin.index_set == (0,)
    q0, qs = lin.coeffs[1]
    assert q0 == 1 and qs == {}

    lin = q_linear_basis((S2, S2))
    assert lin.index_set == (0,)
    q0, qs = lin.coeffs[1]
    assert q0 == 0 and qs == {0: Fraction(1)}

    lin = q_linear_basis((QuadValue(Fraction(1, 2)), QuadValue(3)))
    assert lin.index_set == ()
    assert lin.coeffs[0][0] == Fraction(1, 2) and lin.coeffs[1][0] == 3


def test_q_linear_basis_reconstruction_random():
    rng = random.Random(23)
    for _ in range(200):
        d = rng.choice([2, 3, 5])
        values = tuple(
            QuadValue(Fraction(rng.randint(-9, 9), rng.randint(1, 5)),
                      Fraction(rng.randint(-9, 9), rng.randint(1, 5)), d)
            for _ in range(rng.randint(1, 5))
        )
        lin = q_linear_basis(values)
        rebuilt = lin.reconstruct(values)
        assert all((a - b).sign() == 0 for a, b in zip(rebuilt, values))


def test_solve_consistent_and_inconsistent():
    assert solve([(2, 0), (0, 4)], (1, 1)) == (QuadValue(Fraction(1, 2)), QuadValue(Fraction(1, 4)))
    assert solve([(1, 1), (1, 1)], (0, 1)) is None


def test_integer_kernel_completion_unimodular():
    rng = random.Random(3)
    for _ in range(100):
        n = rng.randint(2, 4)
        rows = [tuple(rng.randint(-4, 4) for _ in range(n)) for _ in range(rng.randint(1, 2))]
        ker, rest = integer_kernel_completion(rows)
        for v in ker:
            assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in rows)
        cols = list(ker) + list(rest)
        assert len(cols) == n
        det = _int_det([[c[i] for c in cols] for i in range(n)])
        assert det in (1, -1)


def _int_det(m):
    n = len(m)
    mat = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if mat[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            mat[col], mat[piv] = mat[piv], mat[col]
            det = -det
        det *= mat[col][col]
        for r in range(col + 1, n):
            f = mat[r][col] / mat[col][col]
            mat[r] = [a - f * b for a, b in zip(mat[r], mat[col])]
    return det
