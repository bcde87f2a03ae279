from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
import logging
from typing import NamedTuple
import numpy as np
from .scalars import I, GaussianRational


logger = logging.getLogger(__name__)


SPECIAL_UNITARY = "su"
COMPACT_SYMPLECTIC = "sp"
FULL_UNITARY = "u"

PROBE_NOTE = (
    "sampling evidence only: random nonzero vectors were tested, "
    "this is not a proof that the zero level is {0}"
)

# bounds for the random Gaussian rationals of the probe
MAX_NUMERATOR = 9
MAX_DENOMINATOR = 9


class MomentError(Exception):
    pass


ZERO = GaussianRational(0)
ONE = GaussianRational(1)


def zeroMatrix(size):
    return [[ZERO] * size for _ in range(size)]


def elementaryMatrix(size, entries):
    """Matrix with the given {(row, col): value} entries, zero elsewhere."""
    matrix = zeroMatrix(size)
    for (row, col), value in entries.items():
        matrix[row][col] = value
    return tuple(tuple(row) for row in matrix)


def conjugateTranspose(matrix):
    size = len(matrix)
    return tuple(
        tuple(matrix[col][row].conjugate() for col in range(size)) for row in range(size)
    )


def isSkewHermitian(matrix):
    adjoint = conjugateTranspose(matrix)
    return all(
        adjoint[row][col] == -matrix[row][col]
        for row in range(len(matrix))
        for col in range(len(matrix))
    )


def trace(matrix):
    return sum((matrix[i][i] for i in range(len(matrix))), ZERO)


def offDiagonalBasis(n):
    for j in range(n):
        for k in range(j + 1, n):
            yield {(j, k): ONE, (k, j): -ONE}
            yield {(j, k): I, (k, j): I}


def unitaryBasis(n):
    entries = [{(j, j): I} for j in range(n)]
    entries.extend(offDiagonalBasis(n))
    return [elementaryMatrix(n, e) for e in entries]


def specialUnitaryBasis(n):
    entries = list(offDiagonalBasis(n))
    entries.extend({(j, j): I, (j + 1, j + 1): -I} for j in range(n - 1))
    return [elementaryMatrix(n, e) for e in entries]


def symplecticBasis(n):
    """sp(n) as the matrices [[A, -conj(B)], [B, conj(A)]] in u(2n), with A in
    u(n) and B complex symmetric.
    """
    matrices = []
    for a in unitaryBasis(n):
        entries = {}
        for row in range(n):
            for col in range(n):
                if a[row][col]:
                    entries[row, col] = a[row][col]
                    entries[row + n, col + n] = a[row][col].conjugate()
        matrices.append(elementaryMatrix(2 * n, entries))
    symmetric = [{(j, j): ONE} for j in range(n)]
    symmetric.extend(
        {(j, k): ONE, (k, j): ONE} for j in range(n) for k in range(j + 1, n)
    )
    for s in symmetric:
        real = {}
        imaginary = {}
        for (row, col), value in s.items():
            real[row + n, col] = value
            real[row, col + n] = -value
            imaginary[row + n, col] = I * value
            imaginary[row, col + n] = I * value
        matrices.append(elementaryMatrix(2 * n, real))
        matrices.append(elementaryMatrix(2 * n, imaginary))
    return matrices


basisBuilders = {
    SPECIAL_UNITARY: (specialUnitaryBasis, lambda n: n, lambda n: n * n - 1),
    COMPACT_SYMPLECTIC: (symplecticBasis, lambda n: 2 * n, lambda n: n * (2 * n + 1)),
    FULL_UNITARY: (unitaryBasis, lambda n: n, lambda n: n * n),
}


class LieAlgebraBasis(NamedTuple):
    group: str
    n: int
    matrices: list

    @property
    def representationDim(self):
        return len(self.matrices[0]) if self.matrices else basisBuilders[self.group][1](self.n)


def lieAlgebraBasis(group, n):
    try:
        builder, _, expectedDim = basisBuilders[group]
    except KeyError:
        raise MomentError(
            f"unknown group {group!r}; expected one of {', '.join(basisBuilders)}"
        ) from None
    if n < 1:
        raise MomentError(f"n must be positive, not {n}")
    matrices = builder(n)
    if len(matrices) != expectedDim(n):
        raise MomentError(f"{group}({n}) basis has {len(matrices)} elements")
    for matrix in matrices:
        if not isSkewHermitian(matrix):
            raise MomentError(f"{group}({n}) basis element is not skew-Hermitian")
        if group == SPECIAL_UNITARY and trace(matrix):
            raise MomentError(f"su({n}) basis element is not traceless")
    return LieAlgebraBasis(group, n, matrices)


class MomentValue(NamedTuple):
    components: tuple  # Fraction per basis matrix
    imaginaryParts: tuple  # all zero for a skew-Hermitian basis

    @property
    def isReal(self):
        return not any(self.imaginaryParts)

    @property
    def isZero(self):
        return not any(self.components) and self.isReal


@lru_cache(maxsize=None)
def sparseEntries(matrix):
    return tuple(
        (row, col, value)
        for row, values in enumerate(matrix)
        for col, value in enumerate(values)
        if value
    )


def pairing(z, xi):
    """<(i/2) z z^*, xi> = trace(((i/2) z z^*)^* xi) = (-i/2) z^* xi z."""
    size = len(z)
    if len(xi) != size:
        raise MomentError(f"vector of length {size} against a {len(xi)}x{len(xi)} matrix")
    total = ZERO
    for row, col, value in sparseEntries(xi):
        if z[row] and z[col]:
            total = total + z[row].conjugate() * value * z[col]
    return GaussianRational(0, Fraction(-1, 2)) * total


def momentValue(basis, z):
    z = [GaussianRational(v) if not isinstance(v, GaussianRational) else v for v in z]
    if len(z) != basis.representationDim:
        raise MomentError(
            f"{basis.group}({basis.n}) acts on vectors of length "
            f"{basis.representationDim}, not {len(z)}"
        )
    values = [pairing(z, xi) for xi in basis.matrices]
    return MomentValue(
        tuple(v.re for v in values), tuple(v.im for v in values)
    )


def permutationMatrix(perm):
    size = len(perm)
    return elementaryMatrix(size, {(perm[i], i): ONE for i in range(size)})


def weylPermutations(basis):
    """Permutation matrices normalizing the maximal torus: all of S_n for
    U(n) and SU(n), and sigma + sigma acting on both halves of C^2n for Sp(n).
    """
    n = basis.n
    for perm in permutations(range(n)):
        if basis.group == COMPACT_SYMPLECTIC:
            perm = perm + tuple(p + n for p in perm)
        yield permutationMatrix(perm)


def matrixProduct(a, b):
    size = len(a)
    return tuple(
        tuple(
            sum((a[i][k] * b[k][j] for k in range(size)), ZERO) for j in range(size)
        )
        for i in range(size)
    )


def applyMatrix(matrix, z):
    return [sum((matrix[i][k] * z[k] for k in range(len(z))), ZERO) for i in range(len(z))]


def weylInvariance(basis, z):
    """Violations of <psi(Pz), P xi P^T> = <psi(z), xi> over the Weyl
    permutations P and the basis matrices xi.
    """
    z = [GaussianRational(v) if not isinstance(v, GaussianRational) else v for v in z]
    violations = []
    for p in weylPermutations(basis):
        pT = conjugateTranspose(p)
        pz = applyMatrix(p, z)
        for index, xi in enumerate(basis.matrices):
            conjugated = matrixProduct(matrixProduct(p, xi), pT)
            if pairing(pz, conjugated) != pairing(z, xi):
                violations.append((p, index))
    return violations


def randomRational(rng, nonzero=False):
    numerator = int(rng.integers(-MAX_NUMERATOR, MAX_NUMERATOR + 1))
    if nonzero:
        while not numerator:
            numerator = int(rng.integers(-MAX_NUMERATOR, MAX_NUMERATOR + 1))
    return Fraction(numerator, int(rng.integers(1, MAX_DENOMINATOR + 1)))


def randomVector(rng, size):
    while True:
        z = [
            GaussianRational(randomRational(rng), randomRational(rng))
            for _ in range(size)
        ]
        if any(z):
            return z


@dataclass
class ProbeReport:
    group: str
    n: int
    samples: int
    seed: int
    counterexamples: list = field(default_factory=list)
    realityFailures: int = 0
    scalingFailures: int = 0
    zeroMapsToZero: bool = True
    note: str = PROBE_NOTE

    @property
    def passed(self):
        return (
            not self.counterexamples
            and not self.realityFailures
            and not self.scalingFailures
            and self.zeroMapsToZero
        )

    def toDict(self):
        return {
            "group": self.group,
            "n": self.n,
            "samples": self.samples,
            "seed": self.seed,
            "counterexamples": [[str(v) for v in z] for z in self.counterexamples],
            "realityFailures": self.realityFailures,
            "scalingFailures": self.scalingFailures,
            "zeroMapsToZero": self.zeroMapsToZero,
            "note": self.note,
        }


def probeSample(basis, seedSequence):
    """Evaluate one sample; returns (z, value, scalingHolds)."""
    rng = np.random.default_rng(seedSequence)
    z = randomVector(rng, basis.representationDim)
    t = randomRational(rng, nonzero=True)
    value = momentValue(basis, z)
    scaled = momentValue(basis, [v * t for v in z])
    scalingHolds = scaled.components == tuple(c * t * t for c in value.components)
    return z, value, scalingHolds


def zeroLevelProbe(basis, samples, seed):
    if samples < 1:
        raise MomentError(f"need at least one sample, not {samples}")
    report = ProbeReport(basis.group, basis.n, samples, seed)
    report.zeroMapsToZero = momentValue(basis, [ZERO] * basis.representationDim).isZero
    # one child stream per sample: results don't depend on evaluation order
    for child in np.random.SeedSequence(seed).spawn(samples):
        z, value, scalingHolds = probeSample(basis, child)
        if not value.isReal:
            report.realityFailures += 1
        if not any(value.components):
            report.counterexamples.append(z)
        if not scalingHolds:
            report.scalingFailures += 1
    logger.info(
        f"{basis.group}({basis.n}): {samples} samples, "
        f"{len(report.counterexamples)} nonzero vectors in the zero level"
    )
    return report