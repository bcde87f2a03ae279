from itertools import combinations
import logging
from typing import NamedTuple
from sympy.polys.matrices import DomainMatrix
from .scalars import (
    RATIONAL,
    SYMBOLIC_EPS,
    EpsPoly,
    epsPolyGcd,
    epsPolyLcm,
    epsPolynomialDomain,
    formatScalar,
)
from .utils import alignColumns


logger = logging.getLogger(__name__)


# Upper bound on the number of maximal minors inspected by badEpsPolynomial()
MAX_MINORS = 200


class MatrixShapeError(ValueError):
    pass


class Matrix:
    def __init__(self, rows, cols, entries, field=RATIONAL):
        entries = tuple(field.coerce(e) for e in entries)
        if rows < 0 or cols < 0 or len(entries) != rows * cols:
            raise MatrixShapeError(
                f"{len(entries)} entries don't fill a {rows}x{cols} matrix"
            )
        self.rows = rows
        self.cols = cols
        self.entries = entries
        self.field = field

    @classmethod
    def fromRows(cls, rowList, field=RATIONAL, cols=None):
        rowList = [list(row) for row in rowList]
        if cols is None:
            cols = len(rowList[0]) if rowList else 0
        for row in rowList:
            if len(row) != cols:
                raise MatrixShapeError("rows have unequal lengths")
        return cls(len(rowList), cols, [e for row in rowList for e in row], field)

    @classmethod
    def fromColumns(cls, columnList, rows, field=RATIONAL):
        columnList = [list(column) for column in columnList]
        for column in columnList:
            if len(column) != rows:
                raise MatrixShapeError("columns have unequal lengths")
        cols = len(columnList)
        entries = [columnList[j][i] for i in range(rows) for j in range(cols)]
        return cls(rows, cols, entries, field)

    @classmethod
    def identity(cls, n, field=RATIONAL):
        return cls(
            n,
            n,
            [field.one if i == j else field.zero for i in range(n) for j in range(n)],
            field,
        )

    def __getitem__(self, index):
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j):
        return self.entries[j :: self.cols] if self.cols else ()

    def transpose(self):
        return Matrix(
            self.cols,
            self.rows,
            [self[i, j] for j in range(self.cols) for i in range(self.rows)],
            self.field,
        )

    def submatrix(self, rowIndices, colIndices):
        return Matrix(
            len(rowIndices),
            len(colIndices),
            [self[i, j] for i in rowIndices for j in colIndices],
            self.field,
        )

    def mulVector(self, vector):
        if len(vector) != self.cols:
            raise MatrixShapeError(
                f"vector of length {len(vector)} for a {self.rows}x{self.cols} matrix"
            )
        zero = self.field.zero
        return tuple(
            sum((a * b for a, b in zip(self.row(i), vector)), zero)
            for i in range(self.rows)
        )

    def withField(self, field):
        return Matrix(self.rows, self.cols, self.entries, field)

    def specialize(self, eps):
        return Matrix(
            self.rows,
            self.cols,
            [self.field.specialize(e, eps) for e in self.entries],
            RATIONAL,
        )

    def isZero(self):
        return not any(self.entries)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (
            other.rows,
            other.cols,
            other.entries,
        )

    def toText(self):
        if not self.rows or not self.cols:
            return f"<empty {self.rows}x{self.cols} matrix>"
        return alignColumns(
            [[formatScalar(e) for e in self.row(i)] for i in range(self.rows)]
        )

    def __repr__(self):
        rows = [[formatScalar(e) for e in self.row(i)] for i in range(self.rows)]
        return f"Matrix({rows!r}, field={self.field!r})"


class KernelBasis(NamedTuple):
    vectors: list
    ambientDim: int

    @property
    def dimension(self):
        return len(self.vectors)


class RankKernel(NamedTuple):
    rank: int
    kernel: KernelBasis


def toDomainMatrix(matrix):
    """The matrix as a sympy DomainMatrix over QQ or QQ(e)."""
    field = matrix.field
    rows = [[field.toDomain(e) for e in matrix.row(i)] for i in range(matrix.rows)]
    return DomainMatrix(rows, (matrix.rows, matrix.cols), field.domain)


def rowReduce(matrix):
    """Reduced row echelon form; returns (nonzero reduced rows, pivot columns).
    The pivot is the first nonzero entry by column order.
    """
    if not matrix.rows or not matrix.cols:
        return [], []
    field = matrix.field
    reduced, pivotCols = toDomainMatrix(matrix).rref()
    rows = [
        [field.fromDomain(e) for e in row]
        for row in reduced.to_list()[: len(pivotCols)]
    ]
    return rows, list(pivotCols)


def rankKernel(matrix):
    field = matrix.field
    rows, pivotCols = rowReduce(matrix)
    pivotSet = set(pivotCols)
    vectors = []
    for free in range(matrix.cols):
        if free in pivotSet:
            continue
        vector = [field.zero] * matrix.cols
        vector[free] = field.one
        for rowIndex, pivotCol in enumerate(pivotCols):
            vector[pivotCol] = -rows[rowIndex][free]
        vectors.append(tuple(vector))
    for vector in vectors:
        assert not any(matrix.mulVector(vector)), "kernel vector fails re-multiplication"
    return RankKernel(len(pivotCols), KernelBasis(vectors, matrix.cols))


def rank(matrix):
    return len(rowReduce(matrix)[1])


def determinant(matrix):
    if matrix.rows != matrix.cols:
        raise MatrixShapeError(
            f"determinant of a non-square {matrix.rows}x{matrix.cols} matrix"
        )
    field = matrix.field
    if not matrix.rows:
        return field.one
    return field.fromDomain(toDomainMatrix(matrix).det())


def _clearedPolynomialMatrix(matrix):
    """Scale each row of a symbolic matrix by the lcm of its denominators; the
    result lives over QQ[e].
    """
    rows = []
    for i in range(matrix.rows):
        row = matrix.row(i)
        scale = EpsPoly.constant(1)
        for e in row:
            scale = epsPolyLcm(scale, e.denominator)
        rows.append([(e.numerator * scale.exquo(e.denominator)).toDomain() for e in row])
    return DomainMatrix(rows, (matrix.rows, matrix.cols), epsPolynomialDomain)


def _minor(cleared, rowIndices, colIndices):
    return EpsPoly.fromDomain(cleared.extract(list(rowIndices), list(colIndices)).det())


def badEpsPolynomial(matrix, maxMinors=MAX_MINORS):
    """Return a nonzero monic d(e) such that for every rational e0 with
    d(e0) != 0 the specialized matrix has the generic rank.

    d is the gcd of the maximal nonsingular minors of the denominator-cleared
    matrix, times the lcm of all entry denominators. The minor scan starts at
    the pivot minor and stops once the gcd is constant or maxMinors minors have
    been inspected, so the root set may be larger than the true rank-drop set.
    """
    if not matrix.field.isSymbolic:
        matrix = matrix.withField(SYMBOLIC_EPS)
    denominators = EpsPoly.constant(1)
    for e in matrix.entries:
        denominators = epsPolyLcm(denominators, e.denominator)
    _, pivotCols = rowReduce(matrix)
    genericRank = len(pivotCols)
    if genericRank == 0:
        logger.debug("zero matrix: generic rank 0, unit bad-e polynomial")
        return denominators
    _, pivotRows = rowReduce(matrix.transpose())
    cleared = _clearedPolynomialMatrix(matrix)
    g = _minor(cleared, pivotRows, pivotCols)
    assert g, "pivot minor is singular"
    numMinors = 1
    if g.degree > 0:
        allMinors = (
            (rowIndices, colIndices)
            for rowIndices in combinations(range(matrix.rows), genericRank)
            for colIndices in combinations(range(matrix.cols), genericRank)
        )
        for rowIndices, colIndices in allMinors:
            if g.degree == 0:
                break
            if numMinors >= maxMinors:
                logger.warning(
                    f"stopped the minor scan after {numMinors} minors; "
                    f"bad-e polynomial may over-approximate"
                )
                break
            minor = _minor(cleared, rowIndices, colIndices)
            numMinors += 1
            if minor:
                g = epsPolyGcd(g, minor)
    logger.debug(
        f"{matrix.rows}x{matrix.cols} matrix of generic rank {genericRank}: "
        f"{numMinors} minors inspected"
    )
    return (g.monic() * denominators).monic()


def sameSubspace(vectorsA, vectorsB, ambientDim, field=RATIONAL):
    """True if the two lists of vectors span the same subspace."""
    if not vectorsA and not vectorsB:
        return True
    rankA = rank(Matrix.fromRows(vectorsA, field, cols=ambientDim))
    rankB = rank(Matrix.fromRows(vectorsB, field, cols=ambientDim))
    rankAB = rank(Matrix.fromRows(list(vectorsA) + list(vectorsB), field, cols=ambientDim))
    return rankA == rankB == rankAB
