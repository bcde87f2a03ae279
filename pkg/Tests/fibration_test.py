from fractions import Fraction
import pytest
from hypothesis import given, settings, strategies as st
from lefschetztools.algebraChecks import checkAxioms, checkPoincareDuality
from lefschetztools.fibration import (
    GEOMETRIC_RESTRICTION,
    FibrationError,
    FibrationSpec,
    buildTotalSpace,
    caseAnalysisOracle,
    closedFormBetas,
    deriveBetas,
    momentSphereIntegral,
    obstructionClass,
    omegaPowerExpansion,
    totalName,
)
from lefschetztools.fixtures import GOMPF_FORMAL, gompfFormal, gompfVariant, projectiveSpace
from lefschetztools.lefschetz import classify, lefschetzMapReport, strongLefschetz
from lefschetztools.linalg import sameSubspace
from lefschetztools.ringFile import parseRing
from lefschetztools.scalars import SYMBOLIC_EPS, EpsFraction, EpsPoly, PiEpsScalar


e = EpsPoly.eps()

bases = [gompfFormal, gompfVariant]


@pytest.fixture(scope="module")
def gompfTotal2():
    return buildTotalSpace(FibrationSpec(gompfFormal(), "chern", 2))


@pytest.mark.parametrize(
    "n, p, expected",
    [
        (1, 0, PiEpsScalar(1, 1, 1)),
        (1, 1, PiEpsScalar(Fraction(1, 4), 1, 2)),
        (2, 2, PiEpsScalar(Fraction(1, 16), 2, 4)),
        (3, 0, PiEpsScalar(Fraction(1, 6), 3, 3)),
    ],
)
def test_momentSphereIntegral(n, p, expected):
    assert momentSphereIntegral(n, p) == expected


def test_momentSphereIntegral_rational():
    assert momentSphereIntegral(1, 1, Fraction(2)) == PiEpsScalar(1, 1, 0)
    with pytest.raises(FibrationError):
        momentSphereIntegral(0, 1)


@pytest.mark.parametrize("makeBase", bases)
@pytest.mark.parametrize("n", range(1, 7))
def test_deriveBetas_matchesClosedForm(makeBase, n):
    spec = FibrationSpec(makeBase(), "chern", n)
    derived = deriveBetas(spec)
    closed = closedFormBetas(spec)
    assert derived.beta2 == closed.beta2
    assert derived.beta4 == closed.beta4
    assert derived.beta2.degree == 2
    assert derived.beta4.degree == 4


def test_betas_variant():
    betas = deriveBetas(FibrationSpec(gompfVariant(), "chern", 2))
    assert betas.beta2.components == {"c": EpsFraction(e)}
    assert betas.beta4.components == {"v": EpsFraction(e * e * Fraction(-1, 4))}
    betas = deriveBetas(FibrationSpec(gompfVariant(), "chern", 2, Fraction(2)))
    assert betas.beta2.components == {"c": 2}
    assert betas.beta4.components == {"v": -1}


def test_betas_gompf():
    # c^2 = 0 on the formal model: beta4 vanishes for every n
    betas = deriveBetas(FibrationSpec(gompfFormal(), "chern", 3))
    assert betas.beta2.components == {"c": EpsFraction(e * Fraction(3, 2))}
    assert not betas.beta4


@pytest.mark.parametrize("n, expected", [(1, 18), (2, 27), (3, 36)])
def test_totalSpace_dimensions(n, expected):
    ring = buildTotalSpace(FibrationSpec(gompfFormal(), "chern", n))
    algebra = ring.algebra
    assert len(algebra.basis) == expected
    assert algebra.topDegree == 2 * n + 4
    assert algebra.basis.volumeName == totalName("v", n)
    assert algebra.name == f"gompfFormal-fiber{n}"
    assert algebra.basis.dimension(2) == 4
    assert ring.notes == [GEOMETRIC_RESTRICTION]


def test_totalSpace_names(gompfTotal2):
    names = gompfTotal2.algebra.basis.namesInDegree(4)
    assert names == ("v", "w.u", "c.u", "q.u", "u^2")
    assert totalName("one", 1) == "u"
    assert totalName("one", 3) == "u^3"
    assert totalName("A1", 2) == "A1.u^2"
    assert totalName("w", 0) == "w"


def test_totalSpace_omega(gompfTotal2):
    assert gompfTotal2.omegaTotal == gompfTotal2.algebra.element({"w": 1, "u": 1})
    assert gompfTotal2.algebra.classes["omega"] == gompfTotal2.omegaTotal


@pytest.mark.parametrize("makeBase", bases)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_relationHolds(makeBase, n):
    ring = buildTotalSpace(FibrationSpec(makeBase(), "chern", n))
    assert ring.relationHolds()


@pytest.mark.parametrize("makeBase", bases)
@pytest.mark.parametrize("n, eps", [(1, "sym"), (2, "sym"), (3, Fraction(1, 2))])
def test_totalSpace_axiomsAndDuality(makeBase, n, eps):
    ring = buildTotalSpace(FibrationSpec(makeBase(), "chern", n, eps))
    assert checkAxioms(ring.algebra).passed
    assert checkPoincareDuality(ring.algebra).passed


@pytest.mark.parametrize("makeBase", bases)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_omegaPowerExpansion(makeBase, n):
    ring = buildTotalSpace(FibrationSpec(makeBase(), "chern", n))
    for k in range(1, n + 2):
        expected = ring.algebra.power(ring.omegaTotal, k)
        assert ring.fromExpansion(omegaPowerExpansion(ring, k)) == expected
    with pytest.raises(FibrationError):
        omegaPowerExpansion(ring, n + 2)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_obstructionClass_gompf(n):
    ring = buildTotalSpace(FibrationSpec(gompfFormal(), "chern", n))
    assert obstructionClass(ring) == ring.base.element({"v": -Fraction(n * (n + 1), 2)})


def test_obstructionClass_variant():
    ring = buildTotalSpace(FibrationSpec(gompfVariant(), "chern", 2))
    expected = EpsFraction(e * e * Fraction(-1, 4) - 3)
    assert obstructionClass(ring).components == {"v": expected}


def oracleCases():
    cases = []
    for makeBase in bases:
        for n in [2, 3]:
            for k in range(1, n + 2):
                cases.append((makeBase, "chern", n, k))
    for k in [1, 2, 3]:
        cases.append((gompfFormal, "q", 2, k))
    return cases


@pytest.mark.parametrize("makeBase, chern, n, k", oracleCases())
def test_caseAnalysisOracle(makeBase, chern, n, k):
    ring = buildTotalSpace(FibrationSpec(makeBase(), chern, n))
    oracle = caseAnalysisOracle(ring, k)
    mapReport = lefschetzMapReport(ring.algebra, ring.omegaTotal, k)
    assert oracle.k == k
    assert oracle.kernel.ambientDim == mapReport.sourceDim
    assert oracle.kernel.dimension == len(mapReport.kernel)
    assert sameSubspace(
        oracle.kernel.vectors,
        mapReport.kernel,
        mapReport.sourceDim,
        ring.algebra.field,
    )


def test_caseAnalysisOracle_cases(gompfTotal2):
    assert caseAnalysisOracle(gompfTotal2, 3).case == "k=n+1"
    assert caseAnalysisOracle(gompfTotal2, 2).case == "k=n"
    assert caseAnalysisOracle(gompfTotal2, 1).case == "k<n, n-k odd"
    ring = buildTotalSpace(FibrationSpec(gompfFormal(), "chern", 3))
    assert caseAnalysisOracle(ring, 1).case == "k<n, n-k even"
    with pytest.raises(FibrationError):
        caseAnalysisOracle(ring, 0)


def test_caseAnalysisOracle_nontrivialKernel():
    # with chern = q the k = n + 1 map kills all of H^1
    ring = buildTotalSpace(FibrationSpec(gompfFormal(), "q", 2))
    oracle = caseAnalysisOracle(ring, 3)
    assert oracle.kernel.dimension == 2
    assert oracle.rank == 0
    report = classify(ring.algebra, ring.omegaTotal)
    assert report.classification != strongLefschetz
    assert len(report.mapFor(3).kernel) == 2


@pytest.mark.parametrize("n", [1, 2, 3])
def test_gompfTotalSpace_isStrongLefschetz(n):
    ring = buildTotalSpace(FibrationSpec(gompfFormal(), "chern", n))
    report = classify(ring.algebra, ring.omegaTotal)
    assert report.classification == strongLefschetz
    assert report.badEps == e
    assert report.mapFor(n + 1).badEps == e * e
    assert report.excludedRoots == [(0, 1)]
    assert report.residual == 1


def test_gompfVariantTotalSpace_badEps():
    ring = buildTotalSpace(FibrationSpec(gompfVariant(), "chern", 2))
    report = classify(ring.algebra, ring.omegaTotal)
    assert report.classification == strongLefschetz
    assert report.excludedRoots == [(0, 1)]
    assert report.residual % (e * e + 12) == 0
    assert report.residual % (e * e + 8) == 0
    assert report.mapFor(2).badEps % (e * e + 12) == 0


@given(st.fractions(min_value=Fraction(1, 20), max_value=20, max_denominator=20))
@settings(max_examples=20, deadline=None)
def test_specializeCommutesWithBuild(eps0):
    symbolic = buildTotalSpace(FibrationSpec(gompfVariant(), "chern", 2))
    rational = buildTotalSpace(FibrationSpec(gompfVariant(), "chern", 2, eps0))
    assert rational.algebra == symbolic.algebra.specialize(eps0)


def test_rationalTotalSpace():
    ring = buildTotalSpace(FibrationSpec(gompfFormal(), "chern", 2, Fraction(1)))
    assert not ring.algebra.field.isSymbolic
    assert lefschetzMapReport(ring.algebra, ring.omegaTotal, 3).isomorphism
    assert classify(ring.algebra, ring.omegaTotal).classification == strongLefschetz


def test_symbolicBaseSpecializedForRationalEps():
    symbolicBase = gompfVariant().withField(SYMBOLIC_EPS)
    ring = buildTotalSpace(FibrationSpec(symbolicBase, "chern", 1, Fraction(3)))
    assert not ring.algebra.field.isSymbolic


def brokenDualityBase():
    text = (
        GOMPF_FORMAL.replace("a1 * a2 = q\n", "")
        .replace("c * q = v\n", "")
        .replace("degree 2: w c q", "degree 2: w c")
    )
    return parseRing(text, validate=False)


@pytest.mark.parametrize(
    "makeSpec, message",
    [
        (lambda: FibrationSpec(projectiveSpace(1), "omega", 1), "4-dimensional"),
        (lambda: FibrationSpec(gompfFormal(), "chern", 0), "positive integer"),
        (lambda: FibrationSpec(gompfFormal(), "chern", 1, Fraction(-1)), "positive"),
        (lambda: FibrationSpec(gompfFormal(), "chern", 1, Fraction(0)), "positive"),
        (lambda: FibrationSpec(gompfFormal(), "chern", 1, "abc"), "rational"),
        (lambda: FibrationSpec(gompfFormal(), "a1", 1), "not of degree 2"),
        (lambda: FibrationSpec(gompfFormal(), "nope", 1), "no chern class"),
        (lambda: FibrationSpec(gompfFormal(), "chern", 1, omega="v"), "not of degree 2"),
        (lambda: FibrationSpec(brokenDualityBase(), "chern", 1), "Poincare duality"),
    ],
)
def test_buildTotalSpace_errors(makeSpec, message):
    with pytest.raises(FibrationError, match=message):
        buildTotalSpace(makeSpec())


def test_nonIntegralChernWarns(caplog):
    base = projectiveSpace(2)
    ring = buildTotalSpace(FibrationSpec(base, "h", 1))
    assert "not flagged integral" in caplog.text
    assert len(ring.algebra.basis) == 6
