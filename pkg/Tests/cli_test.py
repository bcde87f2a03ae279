import json
import pytest
from lefschetztools import cli, lint
from lefschetztools.fixtures import GOMPF_FORMAL
from lefschetztools.ringFile import readRing


def runJSON(capsys, args):
    status = cli.main(["--json", "-"] + args)
    out = capsys.readouterr().out
    return status, json.loads(out)


def test_axioms(capsys):
    assert cli.main(["axioms", "gompfFormal"]) == 0
    out = capsys.readouterr().out
    assert "dimensions [1, 2, 3, 2, 1]" in out
    assert out.rstrip().endswith("PASS")


def test_axioms_violation(tmp_path, capsys):
    path = tmp_path / "broken.ring"
    path.write_text(GOMPF_FORMAL.replace("c * q = v\n", ""))
    status, report = runJSON(capsys, ["axioms", str(path)])
    assert status == 1
    assert report["verdict"] == "fail"
    assert any("associativity" in failure for failure in report["failures"])


def test_duality(capsys):
    status, report = runJSON(capsys, ["duality", "CP3"])
    assert status == 0
    assert report["command"] == "duality"
    assert report["inputs"] == {"ring": "CP3"}


def test_lefschetz_json(capsys):
    status, report = runJSON(capsys, ["lefschetz", "gompfFormal"])
    assert status == 0
    assert set(report) >= {
        "command",
        "inputs",
        "perK",
        "classification",
        "badEps",
        "verdict",
        "failures",
    }
    assert report["classification"] == "neither"
    assert report["perK"][1]["rank"] == 0
    assert report["badEps"] is None
    assert report["verdict"] == "pass"


def test_lefschetz_expect(capsys):
    assert cli.main(["lefschetz", "gompfFormal", "--expect", "neither"]) == 0
    assert cli.main(["lefschetz", "gompfFormal", "--expect", "strongLefschetz"]) == 1
    assert cli.main(["lefschetz", "gompfFormal", "--omega", "c", "--expect", "lefschetzOnly"]) == 0
    assert cli.main(["lefschetz", "CP2", "--omega", "2*h", "--expect", "strongLefschetz"]) == 0
    out = capsys.readouterr().out
    assert "expected strongLefschetz, got neither" in out


def test_lefschetz_writesJSONFile(tmp_path, capsys):
    path = tmp_path / "report.json"
    assert cli.main(["--json", str(path), "lefschetz", "S2"]) == 0
    assert "classification: strongLefschetz" in capsys.readouterr().out
    report = json.loads(path.read_text())
    assert report["classification"] == "strongLefschetz"


@pytest.mark.parametrize(
    "args",
    [
        ["lefschetz", "noSuchRing"],
        ["lefschetz", "gompfFormal", "--omega", "a1"],
        ["lefschetz", "gompfFormal", "--omega", "w + zz"],
        ["build", "--fiber-dim", "0"],
        ["build", "--fiber-dim", "1", "--epsilon", "-1"],
        ["build", "--fiber-dim", "1", "--epsilon", "x"],
        ["build", "--fiber-dim", "1", "--base", "CP1"],
        ["build"],
        ["moment", "--group", "su", "--n", "0"],
    ],
)
def test_inputErrors(args, capsys):
    assert cli.main(args) == 2
    assert "error" in capsys.readouterr().err


def test_usageError():
    with pytest.raises(SystemExit) as excinfo:
        cli.main(["moment", "--group", "so", "--n", "2"])
    assert excinfo.value.code == 2


def test_build(tmp_path, capsys):
    path = tmp_path / "total.ring"
    status, report = runJSON(capsys, ["build", "--fiber-dim", "2", "--output", str(path)])
    assert status == 0
    assert report["ring"]["name"] == "gompfFormal-fiber2"
    assert report["ring"]["dimension"] == 27
    assert report["classification"] == "strongLefschetz"
    assert report["badEps"] == "1*e^1"
    algebra = readRing(path)
    assert len(algebra.basis) == 27
    assert algebra.field.name == "symbolic-eps"


def test_build_rational(capsys):
    status, report = runJSON(
        capsys, ["build", "--fiber-dim", "1", "--epsilon", "1/2", "--expect", "strongLefschetz"]
    )
    assert status == 0
    assert report["inputs"]["epsilon"] == "1/2"
    assert report["badEps"] is None


def test_build_printRing(capsys):
    assert cli.main(["build", "--fiber-dim", "1", "--output", "-"]) == 0
    out = capsys.readouterr().out
    assert "name gompfFormal-fiber1\n" in out
    assert "degree 6: v.u\n" in out


def test_build_specFile(tmp_path, capsys):
    specPath = tmp_path / "spec.json"
    specPath.write_text(json.dumps({"base": "gompfVariant", "fiberDim": 2, "epsilon": "sym"}))
    status, report = runJSON(capsys, ["build", "--spec", str(specPath)])
    assert status == 0
    assert report["ring"]["name"] == "gompfVariant-fiber2"
    assert report["inputs"]["base"] == "gompfVariant"

    # explicit flags override the JSON values
    status, report = runJSON(capsys, ["build", "--spec", str(specPath), "--fiber-dim", "1"])
    assert status == 0
    assert report["ring"]["name"] == "gompfVariant-fiber1"


def test_genericity(capsys):
    status, report = runJSON(
        capsys, ["genericity", "--fiber-dim", "1", "--samples", "3", "--seed", "7"]
    )
    assert status == 0
    assert report["classification"] == "strongLefschetz"
    assert report["failures"] == []


def test_moment(capsys):
    status, report = runJSON(
        capsys, ["moment", "--group", "sp", "--n", "2", "--samples", "100", "--seed", "3"]
    )
    assert status == 0
    assert report["probe"]["counterexamples"] == []
    assert report["probe"]["samples"] == 100
    assert "not a proof" in report["probe"]["note"]


def test_reproduceTheorem1(capsys):
    args = ["reproduce-theorem1", "--fiber-dims", "1,2"]
    status, first = runJSON(capsys, args)
    assert status == 0
    assert first["verdict"].startswith("reproduced")
    assert first["classification"] == "neither"
    assert [entry["dimension"] for entry in first["totalSpaces"]] == [18, 27]
    assert all(
        entry["specialized"]["classification"] == "strongLefschetz"
        for entry in first["totalSpaces"]
    )
    status, second = runJSON(capsys, args)
    assert status == 0
    assert first == second


def test_reproduceTheorem1_text(capsys):
    assert cli.main(["reproduce-theorem1", "--fiber-dims", "1", "--specialize", "sym"]) == 0
    out = capsys.readouterr().out
    assert "not Lefschetz: k=1 map has rank 0 on a 2-dimensional space" in out
    assert "verdict: reproduced" in out


def test_reproduceTheorem1_lefschetzBase(tmp_path, capsys):
    path = tmp_path / "lefschetzBase.ring"
    path.write_text(GOMPF_FORMAL.replace("omega w\n", "omega c\n"))
    status, report = runJSON(
        capsys, ["reproduce-theorem1", "--base", str(path), "--fiber-dims", "1"]
    )
    assert status == 1
    assert report["verdict"] == "fail"


def test_ringlint(tmp_path, capsys):
    assert lint.main(["gompfFormal", "CP2", "gompfFormalxS2"]) == 0
    assert capsys.readouterr().out == ""

    path = tmp_path / "broken.ring"
    path.write_text(GOMPF_FORMAL.replace("c * q = v\n", ""))
    assert lint.main([str(path)]) == 1
    out = capsys.readouterr().out
    assert f"{path}:associativity: (a1, a2, c)" in out
    assert f"{path}:duality_pairing:" in out

    assert lint.main([str(path), "--exclude", "associativity,duality_pairing"]) == 0


def test_ringlint_customChecks(tmp_path, capsys):
    source = tmp_path / "myChecks.py"
    source.write_text(
        "from lefschetztools.algebraChecks import algebracheck\n"
        "\n"
        "@algebracheck('test_no_sphere')\n"
        "def checkNoSphere(algebra):\n"
        "    if algebra.name == 'S2':\n"
        "        yield 'is a sphere'\n"
    )
    try:
        assert lint.main(["S2", "--custom-checks", str(source), "--include", "test_no_sphere"]) == 1
        assert "S2:test_no_sphere: is a sphere" in capsys.readouterr().out
    finally:
        from lefschetztools.algebraChecks import checkKinds, checks

        checks.pop("test_no_sphere", None)
        checkKinds.pop("test_no_sphere", None)


def test_ringlint_unknownRing(capsys):
    assert lint.main(["noSuchRing"]) == 1
    assert "noSuchRing: ERROR unknown ring" in capsys.readouterr().out


def test_ringlint_kind(tmp_path, capsys):
    path = tmp_path / "broken.ring"
    path.write_text(GOMPF_FORMAL.replace("c * q = v\n", ""))
    assert lint.main([str(path), "--kind", "duality"]) == 1
    out = capsys.readouterr().out
    assert "duality_pairing" in out
    assert "associativity" not in out
    assert lint.main([str(path), "--kind", "axiom", "--exclude", "associativity"]) == 0


def test_selectChecks():
    assert [name for name, _ in lint.selectChecks(kinds=["duality"])] == [
        "duality_dims",
        "duality_pairing",
    ]
    names = [name for name, _ in lint.selectChecks(exclude={"unit", "degree"})]
    assert names[:2] == ["commutativity", "odd_square"]
    assert [name for name, _ in lint.selectChecks(include={"unit"})] == ["unit"]


def test_runCheck():
    args = cli.buildParser().parse_args(["duality", "gompfVariant"])
    result = cli.runCheck("duality", args)
    assert result.status == 0
    assert result.report["verdict"] == "pass"
    assert result.lines[-1] == "PASS"
    with pytest.raises(ValueError, match="unknown command"):
        cli.runCheck("nonsense", args)


def test_internalErrorStatus(monkeypatch, capsys):
    def failingCheck(command, args):
        raise RuntimeError("boom")

    monkeypatch.setattr(cli, "runCheck", failingCheck)
    assert cli.main(["axioms", "S2"]) == 3
    assert "ERROR RuntimeError('boom')" in capsys.readouterr().err


def test_lefschetz_largeCoefficients(tmp_path, capsys):
    path = tmp_path / "largeQuadric.ring"
    path.write_text(
        "scalars symbolic-eps\n"
        "top 4\n"
        "degree 0: one\n"
        "degree 2: h\n"
        "degree 4: v\n"
        "h * h = (3*e^2 + 2305843009213693951*e^0)*v\n"
        "omega h\n"
    )
    status, report = runJSON(capsys, ["lefschetz", str(path)])
    assert status == 0
    assert report["classification"] == "strongLefschetz"
    assert report["badEps"] == "1*e^2 + 2305843009213693951/3*e^0"
