"""Cohomology ring of the fiber bundle with fiber a ball in C^n collapsed along
its boundary, over a 4-dimensional base with a circle bundle of Chern class c.

By Leray-Hirsch the total ring is the free H*(B)-module on 1, u, ..., u^n,
subject to u^(n+1) = beta4 u^(n-1) + beta2 u^n. The two classes beta2 and beta4
are read off from two fiber integrals over the ball of radius sqrt(e):

    beta2 V = (n+1) * I(1) * c
    (beta4 + beta2^2) V = (n+1)(n+2)/2 * I(2) * c^2

where V = I(0) is the fiber volume and I(p) is the integral of (r^2/2)^p.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import logging
import math
from typing import NamedTuple
from .algebra import Element, GradedBasis, PDAlgebra, UNIT_NAME, INTEGRAL_CHERN
from .algebraChecks import checkPoincareDuality
from .linalg import KernelBasis, Matrix, rankKernel
from .scalars import RATIONAL, SYMBOLIC_EPS, PiEpsScalar, piEpsDiv, toRational


logger = logging.getLogger(__name__)


SYMBOLIC_EPSILON = "sym"

GEOMETRIC_RESTRICTION = (
    "the geometric condition 0 < e < delta has no cohomological content; "
    "the builder requires e != 0 (symbolic) or e > 0 (rational)"
)


class FibrationError(Exception):
    pass


@dataclass(frozen=True)
class FibrationSpec:
    base: PDAlgebra
    chern: object  # Element, class name or basis element name
    fiberDim: int
    eps: object = SYMBOLIC_EPSILON
    omega: object = None  # defaults to the base's "omega" class

    @property
    def isSymbolic(self):
        return isinstance(self.eps, str) and self.eps == SYMBOLIC_EPSILON


class Betas(NamedTuple):
    beta2: Element
    beta4: Element


class ResolvedSpec(NamedTuple):
    base: PDAlgebra  # the base over the field of the total ring
    chern: Element
    omega: Element
    fiberDim: int
    eps: object
    field: object


def resolveClass(algebra, value, what):
    if isinstance(value, Element):
        return algebra.element(dict(value.components))
    if isinstance(value, str):
        if value in algebra.classes:
            return algebra.element(dict(algebra.classes[value].components))
        if value in algebra.basis:
            return algebra.basisElement(value)
    raise FibrationError(f"{algebra.name} has no {what} class {value!r}")


def resolveSpec(spec):
    base = spec.base
    if base.topDegree != 4:
        raise FibrationError(
            f"the base must be 4-dimensional, {base.name} has top degree {base.topDegree}"
        )
    n = spec.fiberDim
    if not isinstance(n, int) or n < 1:
        raise FibrationError(f"fiber dimension must be a positive integer, not {n!r}")
    if spec.isSymbolic:
        eps = SYMBOLIC_EPSILON
        fieldOfScalars = SYMBOLIC_EPS
        if not base.field.isSymbolic:
            base = base.withField(SYMBOLIC_EPS)
    else:
        try:
            eps = toRational(spec.eps)
        except (TypeError, ValueError) as e:
            raise FibrationError(f"e must be 'sym' or a rational: {e}") from None
        if eps <= 0:
            raise FibrationError(f"e must be positive, not {eps}")
        fieldOfScalars = RATIONAL
        if base.field.isSymbolic:
            base = base.specialize(eps)
    report = checkPoincareDuality(base)
    if not report.passed:
        raise FibrationError(
            f"base {base.name} fails Poincare duality: {'; '.join(report.messages())}"
        )
    chern = resolveClass(base, spec.chern, "chern")
    if chern and chern.degree != 2:
        raise FibrationError(f"the chern class {chern} is not of degree 2")
    if INTEGRAL_CHERN not in base.flags:
        logger.warning(f"{base.name}: the chern class is not flagged integral")
    omega = resolveClass(base, "omega" if spec.omega is None else spec.omega, "omega")
    if omega.degree != 2:
        raise FibrationError(f"the base class omega = {omega} is not of degree 2")
    return ResolvedSpec(base, chern, omega, n, eps, fieldOfScalars)


def momentSphereIntegral(n, p, eps=SYMBOLIC_EPSILON):
    """Integral of (r^2/2)^p over the ball of radius sqrt(e) in C^n, as the
    exact value pi^n e^(n+p) / (2^p (n+p) (n-1)!). A rational e is folded into
    the coefficient.
    """
    if n < 1 or p < 0:
        raise FibrationError(f"no sphere integral for n={n}, p={p}")
    coefficient = Fraction(1, 2**p * (n + p) * math.factorial(n - 1))
    if isinstance(eps, str) and eps == SYMBOLIC_EPSILON:
        return PiEpsScalar(coefficient, n, n + p)
    return PiEpsScalar(coefficient * toRational(eps) ** (n + p), n, 0)


def _fieldScalar(value, fieldOfScalars, eps):
    if value.piExponent:
        raise FibrationError(f"{value} still carries a power of pi")
    return fieldOfScalars.epsMonomial(value.coefficient, value.epsExponent, eps)


def _deriveBetas(resolved):
    base, c, _, n, eps, fieldOfScalars = resolved
    volume = momentSphereIntegral(n, 0, eps)
    first = momentSphereIntegral(n, 1, eps) * (n + 1)
    second = momentSphereIntegral(n, 2, eps) * Fraction((n + 1) * (n + 2), 2)
    beta2 = c * _fieldScalar(piEpsDiv(first, volume), fieldOfScalars, eps)
    cSquared = base.multiply(c, c)
    sumOfBetas = cSquared * _fieldScalar(piEpsDiv(second, volume), fieldOfScalars, eps)
    beta4 = sumOfBetas - base.multiply(beta2, beta2)
    beta2.degree = 2
    beta4.degree = 4
    return Betas(beta2, beta4)


def deriveBetas(spec):
    return _deriveBetas(resolveSpec(spec))


def closedFormBetas(spec):
    """beta2 = (n e / 2) c and beta4 = (n (1 - n) e^2 / 8) c^2."""
    base, c, _, n, eps, fieldOfScalars = resolveSpec(spec)
    beta2 = c * fieldOfScalars.epsMonomial(Fraction(n, 2), 1, eps)
    beta4 = base.multiply(c, c) * fieldOfScalars.epsMonomial(
        Fraction(n * (1 - n), 8), 2, eps
    )
    return Betas(beta2, beta4)


def totalName(baseName, j, unitName=UNIT_NAME):
    if j == 0:
        return baseName
    power = "u" if j == 1 else f"u^{j}"
    if baseName == unitName:
        return power
    return f"{baseName}.{power}"


def _addInto(target, key, element):
    if key in target:
        element = target[key] + element
    if element:
        target[key] = element
    else:
        target.pop(key, None)


def _reducedUPowers(base, betas, n):
    """u^N for 0 <= N <= 2n as {j: base class} with all j <= n."""
    powers = [{0: base.unit()}]
    for _ in range(2 * n):
        nextPower = {}
        for j, coefficient in powers[-1].items():
            if j < n:
                _addInto(nextPower, j + 1, coefficient)
            else:
                _addInto(nextPower, n - 1, base.multiply(coefficient, betas.beta4))
                _addInto(nextPower, n, base.multiply(coefficient, betas.beta2))
        powers.append(nextPower)
    return powers


@dataclass
class TotalSpaceRing:
    algebra: PDAlgebra
    omegaTotal: Element
    betas: Betas
    spec: FibrationSpec
    base: PDAlgebra
    baseOmega: Element
    notes: list = field(default_factory=list)

    @property
    def fiberDim(self):
        return self.spec.fiberDim

    def liftBase(self, element, j=0):
        """The class element * u^j, for element a base class."""
        unitName = self.base.basis.unitName
        return self.algebra.element(
            {totalName(name, j, unitName): v for name, v in element.components.items()}
        )

    def fromExpansion(self, expansion):
        """Sum of coefficient_j * u^j over a {j: base class} mapping."""
        result = Element({})
        for j, coefficient in expansion.items():
            result = result + self.liftBase(coefficient, j)
        return result

    def uPower(self, exponent):
        return self.algebra.power(self.algebra.basisElement(totalName(UNIT_NAME, 1)), exponent)

    def relationHolds(self):
        n = self.fiberDim
        beta2, beta4 = self.betas
        multiply = self.algebra.multiply
        lhs = self.uPower(n + 1)
        rhs = multiply(self.liftBase(beta4), self.uPower(n - 1)) + multiply(
            self.liftBase(beta2), self.uPower(n)
        )
        if lhs != rhs:
            return False
        sumOfBetas = beta4 + self.base.multiply(beta2, beta2)
        return self.uPower(n + 2) == multiply(self.liftBase(sumOfBetas), self.uPower(n))


def buildTotalSpace(spec):
    resolved = resolveSpec(spec)
    base, _, baseOmega, n, eps, fieldOfScalars = resolved
    betas = _deriveBetas(resolved)
    baseBasis = base.basis
    unitName = baseBasis.unitName

    degrees = []
    origin = {}
    for degree in range(baseBasis.topDegree + 2 * n + 1):
        names = []
        for j in range(n + 1):
            for baseName in baseBasis.namesInDegree(degree - 2 * j):
                name = totalName(baseName, j, unitName)
                origin[name] = (baseName, j)
                names.append(name)
        degrees.append(names)
    basis = GradedBasis(degrees)

    uPowers = _reducedUPowers(base, betas, n)
    zero = fieldOfScalars.zero

    def product(a, b):
        baseA, jA = origin[a]
        baseB, jB = origin[b]
        baseProduct = base.basisProduct(baseA, baseB)
        result = {}
        if not baseProduct:
            return result
        for j, coefficient in uPowers[jA + jB].items():
            for name, value in base.multiply(coefficient, baseProduct).components.items():
                key = totalName(name, j, unitName)
                result[key] = result.get(key, zero) + value
        return result

    top = basis.topDegree
    nonUnit = [name for name in basis.names if name != basis.unitName]
    table = {}
    for i, a in enumerate(nonUnit):
        for b in nonUnit[i:]:
            if basis.degreeOf(a) + basis.degreeOf(b) > top:
                continue
            productComponents = {k: v for k, v in product(a, b).items() if v}
            if productComponents:
                table[(a, b)] = productComponents

    omegaComponents = {
        totalName(name, 0, unitName): v for name, v in baseOmega.components.items()
    }
    omegaComponents[totalName(unitName, 1, unitName)] = fieldOfScalars.one
    algebra = PDAlgebra(
        f"{base.name}-fiber{n}",
        basis,
        table,
        fieldOfScalars,
        classes={"omega": omegaComponents},
    )
    ring = TotalSpaceRing(
        algebra,
        algebra.classes["omega"],
        betas,
        spec,
        base,
        baseOmega,
        notes=[GEOMETRIC_RESTRICTION],
    )
    if not spec.isSymbolic:
        logger.warning(
            f"e = {eps}: the geometric construction needs e below the collar "
            f"width; the ring itself does not depend on that"
        )
    logger.info(
        f"built {algebra.name}: {len(basis)} basis classes, top degree {top}, "
        f"beta2 = {betas.beta2}, beta4 = {betas.beta4}"
    )
    return ring


def omegaPowerExpansion(ring, k):
    """(x + u)^k as {j: base class}, for 1 <= k <= n + 1. Powers x^3 and higher
    vanish on a 4-dimensional base; for k = n + 1 the top power of u is reduced
    by the defining relation.
    """
    n = ring.fiberDim
    if not 1 <= k <= n + 1:
        raise FibrationError(f"no expansion for k={k} with fiber dimension {n}")
    base = ring.base
    x = ring.baseOmega
    xSquared = base.multiply(x, x)
    if k <= n:
        expansion = {k: base.unit(), k - 1: x * k}
        if k >= 2:
            expansion[k - 2] = xSquared * math.comb(k, 2)
        return expansion
    beta2, beta4 = ring.betas
    return {
        n - 1: beta4 + xSquared * math.comb(n + 1, 2),
        n: beta2 + x * (n + 1),
    }


def obstructionClass(ring):
    """beta4 - n beta2 x - n(n+1)/2 x^2 in H^4 of the base; the k = n Lefschetz
    map of the total space is injective iff this class is nonzero.
    """
    n = ring.fiberDim
    base = ring.base
    x = ring.baseOmega
    beta2, beta4 = ring.betas
    result = beta4 - base.multiply(beta2, x) * n - base.multiply(x, x) * math.comb(n + 1, 2)
    result.degree = 4
    return result


class CaseAnalysis(NamedTuple):
    k: int
    case: str
    rank: int
    kernel: KernelBasis  # in total-space coordinates of degree n + 2 - k


def _caseEquations(ring, k):
    """The kernel conditions for the k-th Lefschetz map on a class
    sum_i b_i u^((d - i)/2) of degree d = n + 2 - k, with b_i in H^i(B).

    Returns (case, unknown degrees, equations), each equation being
    (target degree, {i: coefficient class of b_i}).
    """
    n = ring.fiberDim
    base = ring.base
    x = ring.baseOmega
    one = base.unit()
    beta2, _ = ring.betas
    if k == n + 1:
        return "k=n+1", [1], [(3, {1: x * (n + 1) + beta2})]
    if k == n:
        return (
            "k=n",
            [0, 2],
            [(2, {2: one, 0: x * n + beta2}), (4, {0: obstructionClass(ring)})],
        )
    if (n - k) % 2:
        return "k<n, n-k odd", [1, 3], [(1, {1: one}), (3, {3: one, 1: x * k})]
    xSquared = base.multiply(x, x)
    return (
        "k<n, n-k even",
        [0, 2, 4],
        [
            (0, {0: one}),
            (2, {2: one, 0: x * k}),
            (4, {4: one, 2: x * k, 0: xSquared * math.comb(k, 2)}),
        ],
    )


def caseAnalysisOracle(ring, k):
    """Kernel of the k-th Lefschetz map of the total space, from the kernel
    conditions over the base ring rather than from the total-space matrix.
    """
    n = ring.fiberDim
    if not 1 <= k <= n + 1:
        raise FibrationError(f"no case analysis for k={k} with fiber dimension {n}")
    base = ring.base
    baseBasis = base.basis
    fieldOfScalars = ring.algebra.field
    case, unknowns, equations = _caseEquations(ring, k)
    columns = [
        (i, name) for i in unknowns for name in baseBasis.namesInDegree(i)
    ]
    rows = []
    for targetDegree, coefficients in equations:
        images = [
            base.multiply(coefficients[i], base.basisElement(name))
            if i in coefficients
            else Element({})
            for i, name in columns
        ]
        for rowName in baseBasis.namesInDegree(targetDegree):
            rows.append([image.coefficient(rowName) for image in images])
    matrix = Matrix.fromRows(rows, fieldOfScalars, cols=len(columns))
    rank, kernel = rankKernel(matrix)

    degree = n + 2 - k
    unitName = baseBasis.unitName
    targetNames = ring.algebra.basis.namesInDegree(degree)
    vectors = []
    for vector in kernel.vectors:
        lifted = {
            totalName(name, (degree - i) // 2, unitName): value
            for (i, name), value in zip(columns, vector)
        }
        vectors.append(
            tuple(lifted.get(name, fieldOfScalars.zero) for name in targetNames)
        )
    logger.debug(f"{ring.algebra.name}: case {case}, kernel dimension {len(vectors)}")
    return CaseAnalysis(k, case, rank, KernelBasis(vectors, len(targetNames)))
