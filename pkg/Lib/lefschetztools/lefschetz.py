from dataclasses import dataclass, field
import logging
from typing import NamedTuple, Optional
from .algebra import DegreeError
from .algebraChecks import CheckReport
from .linalg import Matrix, badEpsPolynomial, rankKernel
from .scalars import EpsPoly, epsPolyLcm, formatEpsPoly, formatRational, formatScalar, rationalRoots


logger = logging.getLogger(__name__)


strongLefschetz = "strongLefschetz"
lefschetzOnly = "lefschetzOnly"
neither = "neither"


class LefschetzMapReport(NamedTuple):
    k: int
    sourceDim: int
    targetDim: int
    rank: int
    kernel: list  # kernel vectors in source coordinates
    badEps: Optional[EpsPoly] = None

    @property
    def isomorphism(self):
        return self.sourceDim == self.targetDim == self.rank

    def toDict(self):
        return {
            "k": self.k,
            "sourceDim": self.sourceDim,
            "targetDim": self.targetDim,
            "rank": self.rank,
            "kernelDim": len(self.kernel),
            "kernel": [[formatScalar(v) for v in vector] for vector in self.kernel],
            "isomorphism": self.isomorphism,
            "badEps": None if self.badEps is None else formatEpsPoly(self.badEps),
        }


@dataclass
class LefschetzReport:
    ringName: str
    omega: object
    perK: list
    classification: str
    badEps: Optional[EpsPoly] = None
    excludedRoots: list = field(default_factory=list)
    residual: Optional[EpsPoly] = None
    notes: list = field(default_factory=list)

    def mapFor(self, k):
        for mapReport in self.perK:
            if mapReport.k == k:
                return mapReport
        raise KeyError(k)

    def toDict(self):
        return {
            "ring": self.ringName,
            "omega": str(self.omega),
            "perK": [mapReport.toDict() for mapReport in self.perK],
            "classification": self.classification,
            "badEps": None if self.badEps is None else formatEpsPoly(self.badEps),
            "excludedRoots": [
                {"root": formatRational(root), "multiplicity": multiplicity}
                for root, multiplicity in self.excludedRoots
            ],
            "residual": None if self.residual is None else formatEpsPoly(self.residual),
            "notes": list(self.notes),
        }


def checkOmega(algebra, omega):
    """Return omega as an element of `algebra`, or raise DegreeError unless it is
    homogeneous of degree 2.
    """
    omega = algebra.element(dict(omega.components))
    if omega.components:
        if omega.degree != 2:
            raise DegreeError(f"omega = {omega} is not homogeneous of degree 2")
    else:
        omega.degree = 2
    return omega


def lefschetzMatrix(algebra, omega, k):
    omega = checkOmega(algebra, omega)
    m = algebra.halfDimension
    if not 0 <= k <= m:
        raise DegreeError(f"Lefschetz degree {k} outside 0..{m}")
    omegaPower = algebra.power(omega, k)
    sourceNames = algebra.basis.namesInDegree(m - k)
    targetDim = algebra.basis.dimension(m + k)
    columns = [
        algebra.coordinates(
            algebra.multiply(omegaPower, algebra.basisElement(name)), m + k
        )
        for name in sourceNames
    ]
    return Matrix.fromColumns(columns, targetDim, algebra.field)


def lefschetzMapReport(algebra, omega, k):
    matrix = lefschetzMatrix(algebra, omega, k)
    rank, kernel = rankKernel(matrix)
    badEps = None
    if algebra.field.isSymbolic and matrix.rows and matrix.cols:
        badEps = badEpsPolynomial(matrix)
    logger.debug(
        f"{algebra.name}: k={k} map {matrix.cols} -> {matrix.rows}, rank {rank}"
    )
    return LefschetzMapReport(
        k, matrix.cols, matrix.rows, rank, list(kernel.vectors), badEps
    )


def classifyMaps(perK, m):
    if all(mapReport.isomorphism for mapReport in perK):
        return strongLefschetz
    if m >= 1 and perK[m - 1].isomorphism:
        return lefschetzOnly
    return neither


def classify(algebra, omega):
    omega = checkOmega(algebra, omega)
    m = algebra.halfDimension
    perK = [lefschetzMapReport(algebra, omega, k) for k in range(m + 1)]
    classification = classifyMaps(perK, m)
    report = LefschetzReport(algebra.name, omega, perK, classification)
    for mapReport in perK:
        if not mapReport.isomorphism:
            report.notes.append(
                f"k={mapReport.k}: rank {mapReport.rank} on a "
                f"{mapReport.sourceDim}-dimensional source"
            )
    if algebra.field.isSymbolic:
        badEps = EpsPoly.constant(1)
        for mapReport in perK:
            if mapReport.badEps is not None:
                badEps = epsPolyLcm(badEps, mapReport.badEps)
        badEps = badEps.squarefreePart()
        report.badEps = badEps
        if badEps.degree > 0:
            roots = rationalRoots(badEps)
            report.excludedRoots = roots.roots
            report.residual = roots.residual
            report.notes.append(
                "excluded values: the classification holds for every rational e "
                "that is not a root of badEps"
            )
    logger.info(f"{algebra.name}: omega = {omega}: {classification}")
    return report


def surjInjConsistency(algebra, omega):
    """Rank-nullity cross-check: every Lefschetz map is surjective exactly when
    it is injective.
    """
    report = CheckReport(algebra.name, checksRun=["surj_inj"])
    for k in range(algebra.halfDimension + 1):
        mapReport = lefschetzMapReport(algebra, omega, k)
        if mapReport.sourceDim != mapReport.targetDim:
            report.violations.append(
                (
                    "surj_inj",
                    f"k={k}: source dimension {mapReport.sourceDim} != "
                    f"target dimension {mapReport.targetDim}",
                )
            )
            continue
        if mapReport.rank + len(mapReport.kernel) != mapReport.sourceDim:
            report.violations.append(
                ("surj_inj", f"k={k}: rank + kernel dimension != source dimension")
            )
        injective = not mapReport.kernel
        surjective = mapReport.rank == mapReport.targetDim
        if injective != surjective:
            report.violations.append(
                ("surj_inj", f"k={k}: injective={injective}, surjective={surjective}")
            )
    return report
