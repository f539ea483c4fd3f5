import random

import pytest
from fractions import Fraction

from avgcoh.linalg import (QQ, CompositionNonzero, DenseMatrix, FieldFp,
                           cohomology_dim, kernel_basis, rank, solve)


def M(rows, field=QQ):
    return DenseMatrix.from_rows(field, [[field.from_int(x) if isinstance(x, int) else x
                                          for x in r] for r in rows])


def test_rank_identity():
    assert rank(DenseMatrix.identity(QQ, 2)) == 2


def test_rank_zero_matrix():
    assert rank(DenseMatrix.zeros(QQ, 3, 4)) == 0


def test_rank_proportional_rows():
    assert rank(M([[1, 2], [2, 4]])) == 1


def test_kernel_identity_empty():
    assert kernel_basis(DenseMatrix.identity(QQ, 3)) == []


def test_kernel_zero_is_standard_basis():
    basis = kernel_basis(DenseMatrix.zeros(QQ, 4, 4))
    assert len(basis) == 4
    for i, v in enumerate(basis):
        assert v[i] == 1 and sum(1 for x in v if x != 0) == 1


def test_kernel_one_equation_canonical():
    # single equation x + y = 0, canonical solution (-1, 1)
    basis = kernel_basis(M([[1, 1]]))
    assert basis == [[Fraction(-1), Fraction(1)]]


def test_kernel_vectors_annihilated_and_counted():
    rnd = random.Random(7)
    for _ in range(40):
        rows = rnd.randrange(1, 5)
        cols = rnd.randrange(1, 5)
        m = M([[rnd.randrange(-2, 3) for _ in range(cols)] for _ in range(rows)])
        basis = kernel_basis(m)
        assert len(basis) + rank(m) == cols
        for v in basis:
            assert all(x == 0 for x in m.apply(v))
        assert rank(m) == rank(m.transpose())


def test_rank_agrees_with_prime_field():
    # entries in [-2, 2], 4x4: every minor is < 1009 in absolute value, so
    # rank over F_1009 cannot drop below the rational rank
    fp = FieldFp(1009)
    rnd = random.Random(3)
    for _ in range(30):
        rows = [[rnd.randrange(-2, 3) for _ in range(4)] for _ in range(4)]
        mq = M(rows)
        mp = DenseMatrix.from_rows(fp, [[fp.from_int(x) for x in r] for r in rows])
        assert rank(mq) == rank(mp)


def test_solve_consistent_and_inconsistent():
    m = M([[1, 2], [2, 4]])
    x = solve(m, [Fraction(1), Fraction(2)])
    assert x is not None and m.apply(x) == [Fraction(1), Fraction(2)]
    assert solve(m, [Fraction(1), Fraction(3)]) is None


def test_cohomology_dim_zero_differentials():
    d_in = DenseMatrix.zeros(QQ, 3, 3)
    d_out = DenseMatrix.zeros(QQ, 3, 3)
    assert cohomology_dim(d_in, d_out) == 3


def test_cohomology_dim_identity_in():
    assert cohomology_dim(DenseMatrix.identity(QQ, 2), DenseMatrix.zeros(QQ, 2, 2)) == 0


def test_cohomology_dim_one_relation():
    # in: zero map into the plane; out: (x, y) -> x + y
    d_in = DenseMatrix.zeros(QQ, 2, 1)
    d_out = M([[1, 1]])
    assert cohomology_dim(d_in, d_out) == 1
    assert cohomology_dim(DenseMatrix(QQ, 2, 0), d_out) == 1


def test_cohomology_dim_rejects_noncomplex():
    with pytest.raises(CompositionNonzero):
        cohomology_dim(DenseMatrix.identity(QQ, 2), DenseMatrix.identity(QQ, 2))


def test_fp_arithmetic_roundtrip():
    fp = FieldFp(7)
    a, b = fp.from_int(12), fp.from_int(-3)
    assert a == 5 and b == 4
    assert fp.mul(a, fp.inv(a)) == fp.one
    assert fp.parse("3/5") == fp.div(3, 5)
