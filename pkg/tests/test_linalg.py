import random
from fractions import Fraction

import pytest

from lefdist.errors import PreconditionError
from lefdist.linalg import (
    IntMatrix,
    RationalMatrix,
    determinant,
    exterior_power,
    matrix_power,
    rank_kernel,
    rat_from_str,
    rat_to_str,
    smith_normal_form,
)

SEED = 20240817


def rand_int_matrix(rng, n, lo=-5, hi=5):
    return IntMatrix([[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)])


class TestRankKernel:
    def test_identity(self):
        rank, kernel = rank_kernel(RationalMatrix.identity(3))
        assert rank == 3 and kernel == []

    def test_zero(self):
        rank, kernel = rank_kernel(RationalMatrix.zeros(2, 2))
        assert rank == 0 and len(kernel) == 2

    def test_rank_one(self):
        rank, kernel = rank_kernel(RationalMatrix([[1, 2], [2, 4]]))
        assert rank == 1
        assert kernel == [(Fraction(-2), Fraction(1))]

    def test_rank_nullity_battery(self):
        rng = random.Random(SEED)
        for _ in range(40):
            n = rng.randint(1, 5)
            m = rand_int_matrix(rng, n)
            rank, kernel = rank_kernel(m)
            assert rank + len(kernel) == m.cols
            mr = m.to_rational()
            for v in kernel:
                col = RationalMatrix([[x] for x in v])
                assert mr @ col == RationalMatrix.zeros(n, 1)


class TestDeterminant:
    def test_identity(self):
        for n in (1, 2, 4):
            assert determinant(RationalMatrix.identity(n)) == 1

    def test_2x2_cases(self):
        assert determinant(IntMatrix([[2, 1], [1, 1]])) == 1
        assert determinant(IntMatrix([[2, 4], [6, 8]])) == -8

    def test_rational_entries(self):
        m = RationalMatrix([[Fraction(1, 2), 1], [1, Fraction(4, 3)]])
        assert determinant(m) == Fraction(1, 2) * Fraction(4, 3) - 1

    def test_non_square_rejected(self):
        with pytest.raises(PreconditionError):
            determinant(RationalMatrix.zeros(2, 3))


class TestSmithNormalForm:
    def test_identity(self):
        assert smith_normal_form(IntMatrix.identity(2)) == (1, 1)

    def test_example(self):
        assert smith_normal_form(IntMatrix([[2, 4], [6, 8]])) == (2, 4)

    def test_zero(self):
        assert smith_normal_form(IntMatrix.zeros(2, 2)) == ()

    def test_det_equals_product_battery(self):
        rng = random.Random(SEED + 1)
        for _ in range(60):
            n = rng.randint(1, 4)
            m = rand_int_matrix(rng, n)
            d = determinant(m)
            invs = smith_normal_form(m)
            for a, b in zip(invs, invs[1:]):
                assert b % a == 0
            if d != 0:
                prod = 1
                for x in invs:
                    prod *= x
                assert prod == abs(d)


class TestMatrixPower:
    def test_power_zero(self):
        m = IntMatrix([[3, 1], [0, 2]])
        assert matrix_power(m, 0) == IntMatrix.identity(2)

    def test_square(self):
        assert matrix_power(IntMatrix([[2, 1], [1, 1]]), 2) == IntMatrix([[5, 3], [3, 2]])

    def test_inverse(self):
        assert matrix_power(IntMatrix([[2, 1], [1, 1]]), -1) == IntMatrix([[1, -1], [-1, 2]])

    def test_negative_power_of_singular(self):
        with pytest.raises(PreconditionError):
            matrix_power(IntMatrix([[1, 2], [2, 4]]), -1)

    def test_nonunimodular_negative_power_is_rational(self):
        m = matrix_power(IntMatrix([[2, 0], [0, 1]]), -1)
        assert isinstance(m, RationalMatrix)
        assert m[0, 0] == Fraction(1, 2)


class TestExteriorPower:
    def test_degree_zero_and_top(self):
        m = IntMatrix([[2, 1], [1, 1]])
        assert exterior_power(m, 0) == IntMatrix([[1]])
        assert exterior_power(m, 1) == m
        assert exterior_power(m, 2) == IntMatrix([[determinant(m)]])

    def test_out_of_range(self):
        with pytest.raises(PreconditionError):
            exterior_power(IntMatrix.identity(2), 3)

    def test_char_poly_identity_battery(self):
        # det(I - m) = sum_i (-1)^i tr Lambda^i(m), exact, random integer matrices
        rng = random.Random(SEED + 2)
        for _ in range(30):
            n = rng.randint(1, 4)
            m = rand_int_matrix(rng, n, -3, 3)
            lhs = determinant(IntMatrix.identity(n) - m)
            rhs = sum((-1) ** i * exterior_power(m, i).trace() for i in range(n + 1))
            assert lhs == rhs

    def test_functorial(self):
        rng = random.Random(SEED + 3)
        a = rand_int_matrix(rng, 4, -2, 2)
        b = rand_int_matrix(rng, 4, -2, 2)
        for i in range(5):
            assert exterior_power(a @ b, i) == exterior_power(a, i) @ exterior_power(b, i)


class TestSerialization:
    def test_rational_strings(self):
        assert rat_to_str(Fraction(-3, 6)) == "-1/2"
        assert rat_to_str(Fraction(4, 2)) == "2"
        assert rat_from_str("-1/2") == Fraction(-1, 2)
        assert rat_from_str("7") == 7

    def test_matrix_roundtrip(self):
        m = RationalMatrix([[Fraction(1, 3), 2], [0, Fraction(-5, 7)]])
        assert RationalMatrix.from_json_obj(m.to_json_obj()) == m
        n = IntMatrix([[2, 1], [1, 1]])
        assert n.to_json_obj() == [["2", "1"], ["1", "1"]]

    def test_int_matrix_rejects_fractions(self):
        with pytest.raises(PreconditionError):
            IntMatrix([[Fraction(1, 2)]])
