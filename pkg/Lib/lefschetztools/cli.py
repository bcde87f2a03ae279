import argparse
from fractions import Fraction
import json
import logging
import sys
import traceback
from typing import NamedTuple
import numpy as np
from .algebra import AlgebraError
from .algebraChecks import checkAxioms, checkPoincareDuality
from .fibration import (
    SYMBOLIC_EPSILON,
    FibrationError,
    FibrationSpec,
    buildTotalSpace,
)
from .fixtures import resolveRing
from .lefschetz import classify, lefschetzOnly, neither, strongLefschetz, surjInjConsistency
from .momentcheck import MomentError, basisBuilders, lieAlgebraBasis, weylInvariance, zeroLevelProbe
from .ringFile import RingFileError, emitRing, parseLinearCombination, writeRing
from .scalars import ScalarError, EpsPoly, epsPolyLcm, formatEpsPoly, formatRational, parseRational
from .utils import alignColumns, commaSeparatedIntegers


logger = logging.getLogger(__name__)


PASS = "pass"
FAIL = "fail"

inputErrors = (
    RingFileError,
    FibrationError,
    ScalarError,
    AlgebraError,
    MomentError,
    OSError,
    ValueError,
)


class CommandResult(NamedTuple):
    report: dict
    lines: list
    status: int


def resolveClassArgument(algebra, text):
    if text in algebra.classes:
        return algebra.classes[text]
    return algebra.element(parseLinearCombination(text, algebra))


def parseEpsilon(text):
    text = str(text).strip()
    if text == SYMBOLIC_EPSILON:
        return SYMBOLIC_EPSILON
    return parseRational(text)


def makeReport(command, inputs, **fields):
    report = {
        "command": command,
        "inputs": inputs,
        "perK": [],
        "classification": None,
        "badEps": None,
        "verdict": PASS,
        "failures": [],
    }
    report.update(fields)
    return report


def finish(report, lines):
    if report["failures"]:
        report["verdict"] = FAIL
        lines.append(f"FAIL: {len(report['failures'])} failures")
        lines.extend(f"  {failure}" for failure in report["failures"])
    else:
        lines.append("PASS")
    return CommandResult(report, lines, 1 if report["failures"] else 0)


def formatPerK(perK):
    rows = [["k", "source", "target", "rank", "kernel", "iso"]]
    for mapReport in perK:
        rows.append(
            [
                str(mapReport.k),
                str(mapReport.sourceDim),
                str(mapReport.targetDim),
                str(mapReport.rank),
                str(len(mapReport.kernel)),
                "yes" if mapReport.isomorphism else "no",
            ]
        )
    return alignColumns(rows).splitlines()


def formatLefschetzReport(report):
    lines = [f"ring {report.ringName}, omega = {report.omega}"]
    lines.extend(formatPerK(report.perK))
    lines.append(f"classification: {report.classification}")
    if report.badEps is not None:
        lines.append(f"badEps: {formatEpsPoly(report.badEps)}")
        if report.excludedRoots:
            roots = ", ".join(
                f"{formatRational(root)} (multiplicity {multiplicity})"
                for root, multiplicity in report.excludedRoots
            )
            lines.append(f"excluded rational values: {roots}")
        if report.residual is not None and report.residual.degree > 0:
            lines.append(f"irrational excluded values: roots of {formatEpsPoly(report.residual)}")
    lines.extend(f"note: {note}" for note in report.notes)
    return lines


def checkReportFailures(checkReport):
    return [f"{checkReport.ringName}: {msg}" for msg in checkReport.messages()]


def runAxioms(args):
    algebra = resolveRing(args.ring, validate=False)
    report = makeReport("axioms", {"ring": args.ring})
    checkReport = checkAxioms(algebra)
    report["failures"] = checkReportFailures(checkReport)
    lines = [
        f"ring {algebra.name}: dimensions {list(algebra.basis.dimensions)}",
        f"checks: {', '.join(checkReport.checksRun)}",
    ]
    return finish(report, lines)


def runDuality(args):
    algebra = resolveRing(args.ring)
    report = makeReport("duality", {"ring": args.ring})
    checkReport = checkPoincareDuality(algebra)
    report["failures"] = checkReportFailures(checkReport)
    lines = [
        f"ring {algebra.name}: dimensions {list(algebra.basis.dimensions)}",
        f"checks: {', '.join(checkReport.checksRun)}",
    ]
    return finish(report, lines)


def classificationResult(command, inputs, algebra, omega, expect=None):
    lefschetzReport = classify(algebra, omega)
    report = makeReport(
        command,
        inputs,
        **{
            key: value
            for key, value in lefschetzReport.toDict().items()
            if key in ("perK", "classification", "badEps")
        },
    )
    report["details"] = lefschetzReport.toDict()
    failures = checkReportFailures(surjInjConsistency(algebra, omega))
    if expect is not None and lefschetzReport.classification != expect:
        failures.append(
            f"{algebra.name}: expected {expect}, got {lefschetzReport.classification}"
        )
    report["failures"] = failures
    return lefschetzReport, report, formatLefschetzReport(lefschetzReport)


def runLefschetz(args):
    algebra = resolveRing(args.ring)
    omega = resolveClassArgument(algebra, args.omega)
    inputs = {"ring": args.ring, "omega": args.omega}
    _, report, lines = classificationResult(
        "lefschetz", inputs, algebra, omega, args.expect
    )
    return finish(report, lines)


def fibrationSpecFromArgs(args, forceSymbolic=False):
    values = {}
    if args.spec is not None:
        with open(args.spec, encoding="utf-8") as f:
            values = json.load(f)
        if not isinstance(values, dict):
            raise FibrationError(f"{args.spec}: expected a JSON object")
    for key, argValue in [
        ("base", args.base),
        ("chern", args.chern),
        ("fiberDim", args.fiber_dim),
        ("epsilon", args.epsilon),
        ("omega", args.omega),
    ]:
        if argValue is not None:
            values[key] = argValue
    values.setdefault("base", "gompfFormal")
    values.setdefault("chern", "chern")
    values.setdefault("epsilon", SYMBOLIC_EPSILON)
    if "fiberDim" not in values:
        raise FibrationError("missing fiber dimension (--fiber-dim or 'fiberDim')")
    if forceSymbolic:
        values["epsilon"] = SYMBOLIC_EPSILON
    base = resolveRing(values["base"])
    chern = resolveClassArgument(base, values["chern"])
    omega = values.get("omega")
    if omega is not None:
        omega = resolveClassArgument(base, omega)
    try:
        fiberDim = int(values["fiberDim"])
    except (TypeError, ValueError):
        raise FibrationError(f"fiber dimension must be an integer: {values['fiberDim']!r}") from None
    spec = FibrationSpec(base, chern, fiberDim, parseEpsilon(values["epsilon"]), omega)
    inputs = {key: str(value) for key, value in values.items()}
    return spec, inputs


def totalSpaceFailures(ring):
    failures = checkReportFailures(checkAxioms(ring.algebra))
    failures += checkReportFailures(checkPoincareDuality(ring.algebra))
    if not ring.relationHolds():
        failures.append(f"{ring.algebra.name}: u^(n+1) relation fails")
    return failures


def warnIfBadEpsilon(spec):
    """Warn when a rational e is excluded by the symbolic construction."""
    symbolic = buildTotalSpace(FibrationSpec(spec.base, spec.chern, spec.fiberDim, SYMBOLIC_EPSILON, spec.omega))
    badEps = classify(symbolic.algebra, symbolic.omegaTotal).badEps
    if badEps is not None and badEps.evaluate(spec.eps) == 0:
        logger.warning(
            f"e = {formatRational(spec.eps)} is a root of the bad-e polynomial "
            f"{formatEpsPoly(badEps)}; the classification may differ from the generic one"
        )


def runBuild(args):
    spec, inputs = fibrationSpecFromArgs(args)
    if not spec.isSymbolic:
        warnIfBadEpsilon(spec)
    ring = buildTotalSpace(spec)
    algebra = ring.algebra
    _, report, lines = classificationResult(
        "build", inputs, algebra, ring.omegaTotal, args.expect
    )
    report["failures"] = totalSpaceFailures(ring) + report["failures"]
    report["ring"] = {
        "name": algebra.name,
        "dimension": len(algebra.basis),
        "dimensions": list(algebra.basis.dimensions),
        "beta2": str(ring.betas.beta2),
        "beta4": str(ring.betas.beta4),
        "notes": list(ring.notes),
    }
    lines = [
        f"built {algebra.name}: {len(algebra.basis)} basis classes",
        f"beta2 = {ring.betas.beta2}",
        f"beta4 = {ring.betas.beta4}",
    ] + lines + [f"note: {note}" for note in ring.notes]
    if args.output == "-":
        lines.append(emitRing(algebra).rstrip("\n"))
    elif args.output is not None:
        writeRing(algebra, args.output)
        lines.append(f"wrote {args.output}")
    return finish(report, lines)


def randomEpsilons(seed, count, badEps):
    rng = np.random.default_rng(seed)
    values = []
    while len(values) < count:
        value = Fraction(int(rng.integers(1, 51)), int(rng.integers(1, 51)))
        if value not in values and (badEps is None or badEps.evaluate(value) != 0):
            values.append(value)
    return values


def runGenericity(args):
    spec, inputs = fibrationSpecFromArgs(args, forceSymbolic=True)
    ring = buildTotalSpace(spec)
    lefschetzReport, report, lines = classificationResult(
        "genericity", inputs, ring.algebra, ring.omegaTotal
    )
    failures = report["failures"]
    for eps in randomEpsilons(args.seed, args.samples, lefschetzReport.badEps):
        specialized = ring.algebra.specialize(eps)
        classification = classify(specialized, specialized.classes["omega"]).classification
        if classification != lefschetzReport.classification:
            failures.append(
                f"e = {formatRational(eps)}: {classification}, generic "
                f"{lefschetzReport.classification}"
            )
        rationalSpec = FibrationSpec(spec.base, spec.chern, spec.fiberDim, eps, spec.omega)
        if buildTotalSpace(rationalSpec).algebra != specialized:
            failures.append(
                f"e = {formatRational(eps)}: building at e differs from substituting e"
            )
    lines.append(f"checked {args.samples} rational values of e (seed {args.seed})")
    return finish(report, lines)


def runMoment(args):
    basis = lieAlgebraBasis(args.group, args.n)
    probe = zeroLevelProbe(basis, args.samples, args.seed)
    inputs = {"group": args.group, "n": args.n, "samples": args.samples, "seed": args.seed}
    report = makeReport("moment", inputs, probe=probe.toDict())
    failures = []
    if probe.counterexamples:
        failures.append(f"{len(probe.counterexamples)} nonzero vectors in the zero level")
    if probe.realityFailures:
        failures.append(f"{probe.realityFailures} samples with non-real pairings")
    if probe.scalingFailures:
        failures.append(f"{probe.scalingFailures} samples violate the t^2 scaling law")
    if not probe.zeroMapsToZero:
        failures.append("z = 0 does not map to 0")
    if weylInvariance(basis, list(range(1, basis.representationDim + 1))):
        failures.append("pairing is not invariant under the Weyl permutations")
    report["failures"] = failures
    lines = [
        f"{args.group}({args.n}): {len(basis.matrices)} basis matrices acting on "
        f"C^{basis.representationDim}",
        f"{args.samples} samples (seed {args.seed}): "
        f"{len(probe.counterexamples)} nonzero vectors in the zero level",
        f"note: {probe.note}",
    ]
    return finish(report, lines)


def runReproduceTheorem1(args):
    base = resolveRing(args.base)
    inputs = {
        "base": args.base,
        "fiberDims": list(args.fiber_dims),
        "specialize": args.specialize,
    }
    specializeAt = parseEpsilon(args.specialize)
    lines = []
    failures = []

    baseOmega = base.classes.get("omega")
    if baseOmega is None:
        raise FibrationError(f"{base.name} has no omega class")
    baseReport = classify(base, baseOmega)
    lines.append(f"base {base.name}:")
    lines.extend("  " + line for line in formatLefschetzReport(baseReport))
    m = base.halfDimension
    lefschetzMap = baseReport.mapFor(m - 1)
    if lefschetzMap.isomorphism:
        failures.append(f"{base.name} is Lefschetz: k={m - 1} map is an isomorphism")
    else:
        lines.append(
            f"  not Lefschetz: k={m - 1} map has rank {lefschetzMap.rank} on a "
            f"{lefschetzMap.sourceDim}-dimensional space"
        )

    totalSpaces = []
    combinedBadEps = EpsPoly.constant(1)
    for n in args.fiber_dims:
        spec = FibrationSpec(base, "chern", n, SYMBOLIC_EPSILON)
        ring = buildTotalSpace(spec)
        algebra = ring.algebra
        failures += totalSpaceFailures(ring)
        failures += checkReportFailures(surjInjConsistency(algebra, ring.omegaTotal))
        symbolicReport = classify(algebra, ring.omegaTotal)
        if symbolicReport.classification != strongLefschetz:
            failures.append(f"{algebra.name}: {symbolicReport.classification} over Q(e)")
        combinedBadEps = epsPolyLcm(combinedBadEps, symbolicReport.badEps)
        lines.append(f"total space {algebra.name} ({len(algebra.basis)} basis classes):")
        lines.extend("  " + line for line in formatLefschetzReport(symbolicReport))

        entry = {
            "fiberDim": n,
            "ring": algebra.name,
            "dimension": len(algebra.basis),
            "symbolic": symbolicReport.toDict(),
        }
        if specializeAt != SYMBOLIC_EPSILON:
            if symbolicReport.badEps.evaluate(specializeAt) == 0:
                failures.append(
                    f"{algebra.name}: e = {formatRational(specializeAt)} is an excluded value"
                )
            rationalRing = buildTotalSpace(FibrationSpec(base, "chern", n, specializeAt))
            rationalReport = classify(rationalRing.algebra, rationalRing.omegaTotal)
            if rationalReport.classification != strongLefschetz:
                failures.append(
                    f"{algebra.name} at e = {formatRational(specializeAt)}: "
                    f"{rationalReport.classification}"
                )
            lines.append(
                f"  at e = {formatRational(specializeAt)}: {rationalReport.classification}"
            )
            entry["specialized"] = rationalReport.toDict()
        totalSpaces.append(entry)

    badEps = combinedBadEps.squarefreePart()
    report = makeReport(
        "reproduce-theorem1",
        inputs,
        perK=[mapReport.toDict() for mapReport in baseReport.perK],
        classification=baseReport.classification,
        badEps=formatEpsPoly(badEps),
        totalSpaces=totalSpaces,
    )
    report["failures"] = failures
    if failures:
        verdict = "not reproduced"
    else:
        verdict = (
            f"reproduced: {base.name} is not Lefschetz, the total spaces for "
            f"n = {', '.join(str(n) for n in args.fiber_dims)} are strong Lefschetz "
            f"for every e that is not a root of {formatEpsPoly(badEps)}"
        )
    lines.append(f"verdict: {verdict}")
    result = finish(report, lines)
    result.report["verdict"] = verdict if not failures else FAIL
    return result


commands = {
    "axioms": runAxioms,
    "duality": runDuality,
    "lefschetz": runLefschetz,
    "build": runBuild,
    "genericity": runGenericity,
    "moment": runMoment,
    "reproduce-theorem1": runReproduceTheorem1,
}


def runCheck(command, args):
    try:
        commandFunc = commands[command]
    except KeyError:
        raise ValueError(f"unknown command: {command!r}") from None
    return commandFunc(args)


classifications = [strongLefschetz, lefschetzOnly, neither]


def addFibrationArguments(parser):
    parser.add_argument("--base", help="Base ring: fixture name or ring file (default gompfFormal)")
    parser.add_argument("--chern", help="Chern class of the circle bundle (default the 'chern' class)")
    parser.add_argument("--fiber-dim", type=int, help="Complex dimension n of the fiber")
    parser.add_argument("--epsilon", help="'sym' (default) or a positive rational")
    parser.add_argument("--omega", help="Symplectic class of the base (default the 'omega' class)")
    parser.add_argument("--spec", help="JSON file with base, chern, fiberDim, epsilon, omega")


def buildParser():
    parser = argparse.ArgumentParser(
        prog="lefschetz",
        description="Exact checks of Poincare duality algebras and Lefschetz properties",
    )
    parser.add_argument(
        "--json", metavar="PATH", help="Write the report as JSON to PATH ('-' for stdout)"
    )
    parser.add_argument(
        "--verbose",
        action="store_true",
        help="Log progress and print a full traceback when an exception occurs",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    axioms = subparsers.add_parser("axioms", help="Check the algebra axioms")
    axioms.add_argument("ring")
    duality = subparsers.add_parser("duality", help="Check Poincare duality")
    duality.add_argument("ring")

    lefschetz = subparsers.add_parser("lefschetz", help="Classify Lefschetz properties")
    lefschetz.add_argument("ring")
    lefschetz.add_argument("--omega", default="omega", help="Degree 2 class (default the 'omega' class)")
    lefschetz.add_argument("--expect", choices=classifications)

    build = subparsers.add_parser("build", help="Build a fibration total space")
    addFibrationArguments(build)
    build.add_argument("--output", help="Write the ring file to this path ('-' for stdout)")
    build.add_argument("--expect", choices=classifications)

    genericity = subparsers.add_parser(
        "genericity", help="Symbolic build with the bad-e polynomial"
    )
    addFibrationArguments(genericity)
    genericity.add_argument("--samples", type=int, default=20, help="Rational values of e to cross-check")
    genericity.add_argument("--seed", type=int, default=0)

    moment = subparsers.add_parser("moment", help="Probe the moment map zero level")
    moment.add_argument("--group", choices=list(basisBuilders), required=True)
    moment.add_argument("--n", type=int, required=True)
    moment.add_argument("--samples", type=int, default=1000)
    moment.add_argument("--seed", type=int, default=0)

    reproduce = subparsers.add_parser(
        "reproduce-theorem1",
        help="Base not Lefschetz, total spaces strong Lefschetz",
    )
    reproduce.add_argument("--base", default="gompfFormal")
    reproduce.add_argument("--fiber-dims", type=commaSeparatedIntegers, default=[1, 2, 3])
    reproduce.add_argument(
        "--specialize", default="1", help="Rational e to re-check with ('sym' to skip)"
    )
    return parser


def writeJSON(report, path):
    text = json.dumps(report, indent=2) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)


def main(args=None):
    parser = buildParser()
    args = parser.parse_args(args)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)

    try:
        result = runCheck(args.command, args)
    except inputErrors as e:
        print(f"{parser.prog} {args.command}: error: {e}", file=sys.stderr)
        if args.verbose:
            traceback.print_exc()
        return 2
    except Exception as e:
        print(f"{parser.prog} {args.command}: ERROR {e!r}", file=sys.stderr)
        if args.verbose:
            traceback.print_exc()
        return 3

    if args.json != "-":
        for line in result.lines:
            print(line)
    if args.json is not None:
        writeJSON(result.report, args.json)
    return result.status


if __name__ == "__main__":
    sys.exit(main())
