import json

import jsonschema
import pytest

from epivariants.cli import main
from epivariants.core import parse_semigroup
from epivariants.corpus import corpus_text
from epivariants.epigroup import pseudoinverse_map

try:
    from importlib.resources import files
except ImportError:  # pragma: no cover
    files = None

SCHEMA = json.loads(files("epivariants").joinpath("report.schema.json").read_text())


@pytest.fixture
def corpus_file(tmp_path):
    def write(name):
        path = tmp_path / name
        path.write_text(corpus_text(name))
        return str(path)

    return write


def run_json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    return code, report


def test_validate_ok(corpus_file, capsys):
    assert main(["validate", corpus_file("z3.sgp")]) == 0
    assert capsys.readouterr().out.strip() == "ok"


def test_validate_failure(tmp_path, capsys):
    path = tmp_path / "bad.sgp"
    path.write_text("2\n0 1\n0 0\n")
    code, report = run_json(capsys, ["validate", str(path), "--json"])
    assert code == 1
    assert report["checks"][0]["status"] == "fail"


def test_missing_file_is_usage_error(capsys):
    assert main(["validate", "/nonexistent.sgp"]) == 2
    assert "error:" in capsys.readouterr().err


def test_unknown_command_is_usage_error(capsys):
    assert main(["frobnicate"]) == 2


def test_green_json(corpus_file, capsys):
    code, report = run_json(capsys, ["green", corpus_file("w_not_v1.sgp"), "--json"])
    assert code == 0
    data = report["data"]
    assert data["idempotents"] == [1, 2, 3]
    assert len(set(data["h_class"])) == 4


def test_green_eggbox_text(corpus_file, capsys):
    assert main(["green", corpus_file("left_zero2.sgp")]) == 0
    out = capsys.readouterr().out
    assert "D-class" in out and "0*" in out and "1*" in out


def test_epi_json(corpus_file, capsys):
    code, report = run_json(capsys, ["epi", corpus_file("w_not_v1.sgp"), "--json"])
    assert code == 0
    assert report["data"]["pseudoinverse"] == [2, 1, 2, 3]
    assert report["data"]["index"] == [2, 1, 1, 1]
    assert all(c["status"] == "pass" for c in report["checks"])


def test_variety_pass_and_fail(corpus_file, capsys):
    path = corpus_file("w_not_v1.sgp")
    code, report = run_json(capsys, ["variety", path, "--test", "E2,W", "--json"])
    assert code == 0
    assert [c["status"] for c in report["checks"]] == ["pass", "pass"]
    code, report = run_json(capsys, ["variety", path, "--test", "V1", "--json"])
    assert code == 1
    check = report["checks"][0]
    assert check["status"] == "fail"
    assert check["counterexample"] == {"x": 0, "y": 1}


def test_variety_adhoc_identity(corpus_file, capsys):
    path = corpus_file("z3.sgp")
    code, report = run_json(capsys, ["variety", path, "--identity", "x*y = y*x", "--json"])
    assert code == 0
    code, _ = run_json(capsys, ["variety", corpus_file("s3.sgp"), "--identity", "x*y = y*x", "--json"])
    assert code == 1


def test_variety_unknown_name(corpus_file, capsys):
    assert main(["variety", corpus_file("z3.sgp"), "--test", "Q7"]) == 2


def test_variant_round_trip(corpus_file, capsys):
    assert main(["variant", corpus_file("z3.sgp"), "--at", "1", "--unary"]) == 0
    model = parse_semigroup(capsys.readouterr().out)
    assert model.base.table == tuple(tuple((x + y + 1) % 3 for y in range(3)) for x in range(3))
    assert model.unary == tuple((1 - x) % 3 for x in range(3))


def test_variant_out_of_range(corpus_file, capsys):
    assert main(["variant", corpus_file("z3.sgp"), "--at", "9"]) == 2


def test_conjugacy_json(corpus_file, capsys):
    code, report = run_json(capsys, ["conjugacy", corpus_file("s3.sgp"), "--json"])
    assert code == 0
    assert report["data"]["transitive"] is True
    assert report["data"]["classes"] == [[0], [1, 3, 4], [2, 5]]


def test_enumerate_count_only(capsys):
    assert main(["enumerate", "--order", "4", "--count-only", "--plain"]) == 0
    assert capsys.readouterr().out.strip() == "188"
    assert main(["enumerate", "--order", "3", "--count-only", "--merge-anti", "--plain"]) == 0
    assert capsys.readouterr().out.strip() == "18"


def test_enumerate_filtered_count(capsys):
    code = main(["enumerate", "--order", "3", "--filter", "not:completely_regular", "--count-only"])
    assert code == 0
    n = int(capsys.readouterr().out.strip())
    code = main(["enumerate", "--order", "3", "--filter", "completely_regular", "--count-only"])
    assert code == 0
    assert n + int(capsys.readouterr().out.strip()) == 24


def test_enumerate_out_manifest(tmp_path, capsys):
    out = tmp_path / "models"
    code = main(["enumerate", "--order", "2", "--out", str(out)])
    assert code == 0
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["order"] == 2 and len(manifest["models"]) == 5
    digests = set()
    for entry in manifest["models"]:
        model = parse_semigroup((out / entry["file"]).read_text())
        assert model.unary == pseudoinverse_map(model.base).unary
        digests.add(entry["canonical_sha256"])
    assert len(digests) == 5


def test_enumerate_identities_file(tmp_path, capsys):
    path = tmp_path / "idents.txt"
    path.write_text("# commutativity\nx*y = y*x\n")
    code = main(["enumerate", "--order", "2", "--identities", str(path), "--count-only"])
    assert code == 0
    assert capsys.readouterr().out.strip() == "3"


def test_enumerate_over_cap(capsys):
    assert main(["enumerate", "--order", "6", "--count-only", "--plain"]) == 2


def test_verify_paper_json(capsys):
    code, report = run_json(capsys, ["verify-paper", "--json"])
    assert code == 0
    assert len(report["checks"]) == 10
    assert all(c["status"] == "pass" for c in report["checks"])


def test_verify_paper_reports_broken_check(capsys, monkeypatch):
    from epivariants import checks

    def broken():
        return checks.CheckOutcome("group-sanity", False, "forced failure")

    patched = [broken if fn is checks.check_group_sanity else fn for fn in checks.ALL_CHECKS]
    monkeypatch.setattr(checks, "ALL_CHECKS", patched)
    code, report = run_json(capsys, ["verify-paper", "--json"])
    assert code == 1
    failed = [c for c in report["checks"] if c["status"] == "fail"]
    assert [c["name"] for c in failed] == ["group-sanity"]
