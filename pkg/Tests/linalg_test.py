from fractions import Fraction
from itertools import permutations
import pytest
import sympy
from hypothesis import assume, given, settings, strategies as st
from lefschetztools.linalg import (
    Matrix,
    MatrixShapeError,
    badEpsPolynomial,
    determinant,
    rank,
    rankKernel,
    sameSubspace,
)
from lefschetztools.scalars import RATIONAL, SYMBOLIC_EPS, EpsFraction, EpsPoly


e = EpsPoly.eps()


def squareMatrices(maxSize=4):
    return st.integers(1, maxSize).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(-5, 5), min_size=n, max_size=n),
            min_size=n,
            max_size=n,
        )
    )


rectangularMatrices = st.tuples(st.integers(1, 4), st.integers(1, 4)).flatmap(
    lambda shape: st.lists(
        st.lists(st.integers(-3, 3), min_size=shape[1], max_size=shape[1]),
        min_size=shape[0],
        max_size=shape[0],
    )
)


@pytest.mark.parametrize(
    "rows, expectedRank, expectedKernel",
    [
        ([[1, 2], [2, 4]], 1, [(-2, 1)]),
        ([[1, 0], [0, 1]], 2, []),
        ([[0, 0, 0]], 0, [(1, 0, 0), (0, 1, 0), (0, 0, 1)]),
        ([[1, 1, 0], [0, 1, 1]], 2, [(1, -1, 1)]),
    ],
)
def test_rankKernel(rows, expectedRank, expectedKernel):
    result = rankKernel(Matrix.fromRows(rows))
    assert result.rank == expectedRank
    assert result.kernel.vectors == expectedKernel
    assert result.kernel.dimension == len(rows[0]) - expectedRank


def test_rankKernel_emptyMatrix():
    result = rankKernel(Matrix(0, 3, []))
    assert result.rank == 0
    assert result.kernel.dimension == 3
    result = rankKernel(Matrix(2, 0, []))
    assert result.rank == 0
    assert result.kernel.vectors == []


def test_rankKernel_symbolic():
    matrix = Matrix.fromRows([[1, e], [e, e * e]], SYMBOLIC_EPS)
    result = rankKernel(matrix)
    assert result.rank == 1
    assert result.kernel.vectors == [(EpsFraction(-e), EpsFraction(1))]


@given(rectangularMatrices)
def test_rankKernel_vectorsAreInKernel(rows):
    matrix = Matrix.fromRows(rows)
    result = rankKernel(matrix)
    assert result.rank + result.kernel.dimension == matrix.cols
    for vector in result.kernel.vectors:
        assert not any(matrix.mulVector(vector))


@given(rectangularMatrices)
def test_rank_transpose(rows):
    matrix = Matrix.fromRows(rows)
    assert rank(matrix) == rank(matrix.transpose())


@pytest.mark.parametrize(
    "rows, expected",
    [
        ([[1, 0], [0, 1]], 1),
        ([[0, 1], [1, 0]], -1),
        ([[1, 2], [2, 4]], 0),
        ([[Fraction(1, 2), 1], [0, Fraction(2, 3)]], Fraction(1, 3)),
        ([[0, 0, 1], [0, 2, 0], [3, 0, 0]], -6),
        ([], 1),
    ],
)
def test_determinant(rows, expected):
    matrix = Matrix.fromRows(rows) if rows else Matrix(0, 0, [])
    assert determinant(matrix) == expected


def test_determinant_nonSquare():
    with pytest.raises(MatrixShapeError):
        determinant(Matrix.fromRows([[1, 2, 3], [4, 5, 6]]))


def test_determinant_symbolic():
    matrix = Matrix.fromRows([[1, e], [e, 1]], SYMBOLIC_EPS)
    assert determinant(matrix) == EpsFraction(1 - e * e)
    matrix = Matrix.fromRows([[EpsFraction(1, e), 1], [0, e * e]], SYMBOLIC_EPS)
    assert determinant(matrix) == EpsFraction(e)


def inversions(perm):
    return sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])


@pytest.mark.parametrize("perm", list(permutations(range(4))))
def test_determinant_permutationSign(perm):
    rows = [[1 if perm[i] == j else 0 for j in range(4)] for i in range(4)]
    assert determinant(Matrix.fromRows(rows)) == (-1) ** inversions(perm)


@given(squareMatrices())
@settings(deadline=None)
def test_determinant_matchesSympy(rows):
    expected = sympy.Matrix(rows).det()
    assert determinant(Matrix.fromRows(rows)) == Fraction(str(expected))


@pytest.mark.parametrize(
    "rows, expected",
    [
        ([[e]], e),
        ([[1, e], [e, 1]], e * e - 1),
        ([[e, 0], [0, e]], e * e),
        ([[1, 0], [0, e]], e),
        ([[e, e]], e),
        ([[0, 0]], EpsPoly.constant(1)),
        ([[1, 2], [3, 4]], EpsPoly.constant(1)),
    ],
)
def test_badEpsPolynomial(rows, expected):
    assert badEpsPolynomial(Matrix.fromRows(rows, SYMBOLIC_EPS)) == expected


def test_badEpsPolynomial_includesDenominators():
    matrix = Matrix.fromRows([[EpsFraction(1, e - 1), 0], [0, 1]], SYMBOLIC_EPS)
    assert badEpsPolynomial(matrix) == e - 1


def test_badEpsPolynomial_rationalInput():
    assert badEpsPolynomial(Matrix.fromRows([[1, 0], [0, 0]])) == 1


symbolicCases = [
    [[1, e], [e, 1]],
    [[e, 1, 0], [0, e, 1], [1, 0, e]],
    [[e * e - 4, 0, 1], [0, e, 0]],
    [[1, e, e * e], [e, e * e, e * e * e]],
]


@pytest.mark.parametrize("rows", symbolicCases)
@given(st.fractions(max_denominator=12).filter(lambda v: abs(v) < 20))
@settings(max_examples=100, deadline=None)
def test_specialization_keepsGenericRank(rows, eps0):
    matrix = Matrix.fromRows(rows, SYMBOLIC_EPS)
    bad = badEpsPolynomial(matrix)
    assume(bad.evaluate(eps0) != 0)
    assert rank(matrix.specialize(eps0)) == rank(matrix)


def test_specialization_dropsRankAtRoot():
    matrix = Matrix.fromRows([[1, e], [e, 1]], SYMBOLIC_EPS)
    assert rank(matrix.specialize(1)) == 1
    assert rank(matrix.specialize(-1)) == 1
    assert rank(matrix.specialize(2)) == 2


def test_matrix_shapes():
    with pytest.raises(MatrixShapeError):
        Matrix.fromRows([[1, 2], [3]])
    with pytest.raises(MatrixShapeError):
        Matrix(2, 2, [1, 2, 3])
    matrix = Matrix.fromColumns([[1, 2], [3, 4], [5, 6]], 2)
    assert (matrix.rows, matrix.cols) == (2, 3)
    assert matrix.row(0) == (1, 3, 5)
    assert matrix.column(2) == (5, 6)
    assert matrix.transpose().row(2) == (5, 6)
    assert Matrix.identity(3).mulVector((1, 2, 3)) == (1, 2, 3)
    with pytest.raises(MatrixShapeError):
        matrix.mulVector((1, 2))


def test_matrix_fieldConversion():
    matrix = Matrix.fromRows([[1, 2]], RATIONAL).withField(SYMBOLIC_EPS)
    assert matrix.field is SYMBOLIC_EPS
    assert matrix[0, 1] == EpsFraction(2)
    assert matrix.specialize(5) == Matrix.fromRows([[1, 2]])


def test_matrix_toText():
    assert Matrix.fromRows([[1, Fraction(-1, 2)], [10, 0]]).toText() == " 1  -1/2\n10     0"
    assert Matrix(0, 2, []).toText() == "<empty 0x2 matrix>"


def test_sameSubspace():
    assert sameSubspace([(1, 0, 0), (0, 1, 0)], [(1, 1, 0), (1, -1, 0)], 3)
    assert not sameSubspace([(1, 0, 0)], [(0, 1, 0)], 3)
    assert not sameSubspace([(1, 0, 0)], [(1, 0, 0), (0, 0, 1)], 3)
    assert sameSubspace([], [], 3)
    assert not sameSubspace([], [(0, 0, 1)], 3)
