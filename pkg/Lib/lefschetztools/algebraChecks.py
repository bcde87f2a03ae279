from dataclasses import dataclass, field
from itertools import product
import logging
from .algebra import pairingMatrix
from .linalg import determinant


logger = logging.getLogger(__name__)


AXIOM = "axiom"
DUALITY = "duality"


checks = {}
checkKinds = {}


def algebracheck(checkName, kind=AXIOM):
    def wrap(checkFunc):
        assert checkName not in checks, f"Check '{checkName}' already exists"
        checks[checkName] = checkFunc
        checkKinds[checkName] = kind
        return checkFunc

    return wrap


@dataclass
class CheckReport:
    ringName: str
    violations: list = field(default_factory=list)  # (checkName, message) pairs
    checksRun: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.violations

    def messages(self):
        return [f"{checkName}: {msg}" for checkName, msg in self.violations]

    def extend(self, other):
        self.violations.extend(other.violations)
        self.checksRun.extend(other.checksRun)


def nonUnitNames(algebra):
    unitName = algebra.basis.unitName
    return [name for name in algebra.basis.names if name != unitName]


@algebracheck("unit")
def checkUnit(algebra):
    unit = algebra.basis.unitName
    for name in algebra.basis.names:
        expected = algebra.basisElement(name)
        left = algebra.basisProduct(unit, name)
        right = algebra.basisProduct(name, unit)
        if left != expected:
            yield f"one * {name} = {left}, expected {name}"
        if right != expected:
            yield f"{name} * one = {right}, expected {name}"


@algebracheck("degree")
def checkDegree(algebra):
    degreeOf = algebra.basis.degreeOf
    top = algebra.topDegree
    for (a, b), productElement in algebra.explicitTable.items():
        degree = degreeOf(a) + degreeOf(b)
        if degree > top and productElement:
            yield f"{a} * {b} lands in degree {degree} above the top degree {top}"
            continue
        wrong = sorted(n for n in productElement.components if degreeOf(n) != degree)
        if wrong:
            yield (
                f"{a} * {b} should have degree {degree}, "
                f"but has components {', '.join(wrong)}"
            )


@algebracheck("commutativity")
def checkCommutativity(algebra):
    names = algebra.basis.names
    degreeOf = algebra.basis.degreeOf
    for i, a in enumerate(names):
        for b in names[i + 1 :]:
            sign = (-1) ** (degreeOf(a) * degreeOf(b))
            ab = algebra.basisProduct(a, b)
            ba = algebra.basisProduct(b, a)
            if ab != ba * sign:
                yield f"{a} * {b} = {ab} but {b} * {a} = {ba} (sign {sign:+d})"


@algebracheck("odd_square")
def checkOddSquare(algebra):
    for name in algebra.basis.names:
        if algebra.basis.degreeOf(name) % 2:
            square = algebra.basisProduct(name, name)
            if square:
                yield f"{name} * {name} = {square}, expected 0 in odd degree"


@algebracheck("associativity")
def checkAssociativity(algebra):
    names = nonUnitNames(algebra)
    degreeOf = algebra.basis.degreeOf
    top = algebra.topDegree
    for a, b, c in product(names, repeat=3):
        if degreeOf(a) + degreeOf(b) + degreeOf(c) > top:
            continue
        left = algebra.multiply(algebra.basisProduct(a, b), algebra.basisElement(c))
        right = algebra.multiply(algebra.basisElement(a), algebra.basisProduct(b, c))
        if left != right:
            yield f"({a}, {b}, {c}): ({a}*{b})*{c} = {left} but {a}*({b}*{c}) = {right}"


@algebracheck("duality_dims", DUALITY)
def checkDualityDimensions(algebra):
    dims = algebra.basis.dimensions
    top = algebra.topDegree
    for k in range(algebra.halfDimension):
        if dims[k] != dims[top - k]:
            yield f"dim H^{k} = {dims[k]} but dim H^{top - k} = {dims[top - k]}"


@algebracheck("duality_pairing", DUALITY)
def checkDualityPairing(algebra):
    dims = algebra.basis.dimensions
    top = algebra.topDegree
    for k in range(top + 1):
        if dims[k] != dims[top - k]:
            continue  # reported by duality_dims
        det = determinant(pairingMatrix(algebra, k))
        if not det:
            yield f"pairing H^{k} x H^{top - k} -> H^{top} is degenerate"


def runChecks(algebra, include=(), exclude=(), kind=None):
    report = CheckReport(algebra.name)
    for checkName, checkFunc in checks.items():
        if kind is not None and checkKinds[checkName] != kind:
            continue
        if include and checkName not in include:
            continue
        if checkName in exclude:
            continue
        report.checksRun.append(checkName)
        for msg in checkFunc(algebra):
            report.violations.append((checkName, msg))
    logger.info(
        f"{algebra.name}: {len(report.checksRun)} checks, "
        f"{len(report.violations)} violations"
    )
    return report


def checkAxioms(algebra):
    return runChecks(algebra, kind=AXIOM)


def checkPoincareDuality(algebra):
    return runChecks(algebra, kind=DUALITY)
