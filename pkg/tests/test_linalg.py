"""Exact and floating linear algebra against brute-force oracles."""

from fractions import Fraction

import pytest

from torsioncert.errors import DivisionByZero, DimensionMismatch, NotSquare
from torsioncert.linalg import (
    Matrix,
    block_assemble,
    det,
    det_with_scale,
    inverse,
    matrix_str,
    parse_matrix,
    rank,
)
from torsioncert.scalar import ComplexF, QuadExt, zero_test
from torsioncert.seeds import rng_for

from helpers import minor_rank, perm_det, random_fraction, random_sl2


def rand_rational_matrix(rng, rows, cols):
    return Matrix([[random_fraction(rng) for _ in range(cols)]
                   for _ in range(rows)])


class TestDeterminant:
    def test_against_permutation_expansion(self):
        rng = rng_for(17, 0)
        for _ in range(40):
            n = rng.randint(1, 4)
            m = rand_rational_matrix(rng, n, n)
            rows = [[m[i, j] for j in range(n)] for i in range(n)]
            assert det(m) == perm_det(rows)

    def test_quadext_entries(self):
        rng = rng_for(17, 1)
        for _ in range(20):
            n = rng.randint(1, 3)
            rows = [[QuadExt(random_fraction(rng, 4, 3),
                             random_fraction(rng, 4, 3), 5)
                     for _ in range(n)] for _ in range(n)]
            assert det(Matrix(rows)) == perm_det(rows)

    def test_multiplicative(self):
        rng = rng_for(17, 2)
        for _ in range(25):
            a = rand_rational_matrix(rng, 3, 3)
            b = rand_rational_matrix(rng, 3, 3)
            assert det(a * b) == det(a) * det(b)

    def test_float_route(self):
        rng = rng_for(17, 3)
        for _ in range(20):
            n = rng.randint(1, 4)
            exact = rand_rational_matrix(rng, n, n)
            approx = exact.map(lambda x: ComplexF(float(x), 0.0))
            d, scale = det_with_scale(approx)
            assert complex(d).real == pytest.approx(float(det(exact)), abs=1e-9 * max(1.0, scale))

    def test_sl2_shift_identity(self):
        # det(A - I) = 2 - tr A whenever det A = 1
        rng = rng_for(17, 4)
        for _ in range(50):
            a = random_sl2(rng)
            assert det(a - Matrix.identity(2)) == 2 - a.trace()

    def test_non_square_rejected(self):
        with pytest.raises(NotSquare):
            det(Matrix([[1, 2, 3], [4, 5, 6]]))


class TestRank:
    def test_against_minor_enumeration(self):
        rng = rng_for(17, 5)
        for _ in range(30):
            r = rng.randint(1, 4)
            c = rng.randint(1, 4)
            m = Matrix([[Fraction(rng.randint(-3, 3)) for _ in range(c)]
                        for _ in range(r)])
            assert rank(m) == minor_rank(m)

    def test_float_rank_with_cutoff(self):
        m = Matrix([[ComplexF(1.0), ComplexF(2.0)],
                    [ComplexF(0.5), ComplexF(1.0 + 1e-13)]])
        assert rank(m) == 1
        assert rank(m, tol=1e-15) == 2

    def test_rank_deficient_product(self):
        rng = rng_for(17, 6)
        for _ in range(15):
            a = rand_rational_matrix(rng, 3, 1)
            b = rand_rational_matrix(rng, 1, 3)
            assert rank(a * b) <= 1


class TestInverse:
    def test_round_trip(self):
        rng = rng_for(17, 7)
        count = 0
        while count < 20:
            m = rand_rational_matrix(rng, 3, 3)
            if det(m) == 0:
                continue
            count += 1
            assert m * inverse(m) == Matrix.identity(3)
            assert inverse(m) * m == Matrix.identity(3)

    def test_singular_rejected(self):
        with pytest.raises(DivisionByZero):
            inverse(Matrix([[1, 2], [2, 4]]))

    def test_quadext_inverse(self):
        u = QuadExt(Fraction(5, 2), Fraction(1, 2), 21)
        m = Matrix([[QuadExt(4, 0, 21), -u], [u.inverse(), QuadExt(0, 0, 21)]])
        assert m * inverse(m) == Matrix.identity(2)


class TestStructure:
    def test_block_assemble(self):
        a = Matrix([[1, 2], [3, 4]])
        b = Matrix([[5, 6], [7, 8]])
        big = block_assemble([[a, b], [b, a]])
        assert big.rows == 4 and big.cols == 4
        assert big[0, 2] == 5 and big[3, 1] == 8 and big[2, 2] == 1

    def test_block_assemble_shape_guard(self):
        a = Matrix([[1, 2], [3, 4]])
        c = Matrix([[1], [2]])
        with pytest.raises(DimensionMismatch):
            block_assemble([[a], [Matrix([[1, 2, 3]])]])
        ok = block_assemble([[a, c]])
        assert ok.cols == 3

    def test_delete_column_and_submatrix(self):
        m = Matrix([[1, 2, 3], [4, 5, 6]])
        assert m.delete_column(1) == Matrix([[1, 3], [4, 6]])
        assert m.submatrix([1], [0, 2]) == Matrix([[4, 6]])

    def test_matmul_shapes(self):
        with pytest.raises(DimensionMismatch):
            Matrix([[1, 2]]) * Matrix([[1, 2]])

    def test_trace_and_transpose(self):
        m = Matrix([[1, 2], [3, 4]])
        assert m.trace() == 5
        assert m.transpose() == Matrix([[1, 3], [2, 4]])

    def test_mixed_entry_promotion(self):
        m = Matrix([[1, Fraction(1, 2)], [QuadExt(0, 1, 5), 0]])
        assert det(m) == QuadExt(0, Fraction(-1, 2), 5)


class TestSerialization:
    def test_round_trip_rational(self):
        m = Matrix([[Fraction(1, 3), -2], [0, Fraction(7, 5)]])
        assert parse_matrix(matrix_str(m)) == m

    def test_round_trip_quadext(self):
        u = QuadExt(Fraction(5, 2), Fraction(-1, 2), 21)
        m = Matrix([[u, QuadExt(1, 0, 21)], [QuadExt(0, 0, 21), u.conjugate()]])
        assert parse_matrix(matrix_str(m), kind="quadext") == m

    def test_round_trip_complex(self):
        m = Matrix([[ComplexF(0.5, -1.25), ComplexF(3.0)],
                    [ComplexF(0.0, 2.0), ComplexF(-1.0 / 3.0)]])
        back = parse_matrix(matrix_str(m), kind="complex")
        for i in range(2):
            for j in range(2):
                assert zero_test(back[i, j] - m[i, j])

    def test_known_format(self):
        assert matrix_str(Matrix([[1, 0], [0, 1]])) == "1,0;0,1"
