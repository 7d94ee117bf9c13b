import json

import pytest

from elmendorf2.cli import EXIT_FAILED, EXIT_OK, EXIT_PARSE, main
from elmendorf2.fixtures import BUNDLED, bundled_path


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name", sorted(BUNDLED))
def test_validate_bundled(name, capsys):
    code, out, _ = run(["validate", "--fixtures", bundled_path(name)], capsys)
    report = json.loads(out)
    assert code == EXIT_OK and report["summary"]["failed"] == 0
    assert all(c["timing"] is None for c in report["checks"])


def test_validate_s3_candidate_reports_interchange(capsys):
    code, out, err = run(["validate", "--fixtures", bundled_path("s3_candidate")], capsys)
    assert code == EXIT_FAILED
    (bad,) = [c for c in json.loads(out)["checks"] if not c["passed"]]
    assert bad["check"] == "validate[twogroup:ONE_S3]"
    assert bad["witness"]["error"] == "InterchangeViolation" and len(bad["witness"]["witness"]) == 4
    assert "FAILED validate[twogroup:ONE_S3]" in err


def test_parse_errors_exit_3(tmp_path, capsys):
    bad = tmp_path / "bad.e2"
    bad.write_text("[group Z2\nmul 0 1\n")
    code, out, err = run(["validate", "--fixtures", str(bad)], capsys)
    assert code == EXIT_PARSE and out == "" and "line 1" in err
    code, _, _ = run(["validate", "--fixtures", str(tmp_path / "missing.e2")], capsys)
    assert code == EXIT_PARSE
    code, _, _ = run(["equivalence", "--fixtures", bundled_path("d2"), "--group", "nope"], capsys)
    assert code == EXIT_PARSE
    code, _, _ = run(["validate", "--fixtures", bundled_path("d2"), "--bounds", "bogus=1"], capsys)
    assert code == EXIT_PARSE


def test_unresolved_reference_exits_3(tmp_path, capsys):
    f = tmp_path / "ref.e2"
    f.write_text("[twogroup D]\ndiscrete Missing\n")
    code, _, err = run(["validate", "--fixtures", str(f)], capsys)
    assert code == EXIT_PARSE and "line 2" in err


def test_bound_violation_is_a_recorded_failure(capsys):
    code, out, _ = run(["equivalence", "--fixtures", bundled_path("d3"), "--bounds", "max_group_order=2"], capsys)
    assert code == EXIT_FAILED
    failed = [c for c in json.loads(out)["checks"] if not c["passed"]]
    assert failed and failed[0]["witness"]["error"] == "SizeBoundExceeded"


def test_validate_reports_axiom_failure_with_line(tmp_path, capsys):
    f = tmp_path / "nonassoc.e2"
    f.write_text("# header\n[group G]\nmul 0 1 2\nmul 1 0 2\nmul 2 2 0\n")
    code, out, _ = run(["validate", "--fixtures", str(f)], capsys)
    (c,) = json.loads(out)["checks"]
    assert code == EXIT_FAILED and c["witness"]["error"] == "NotAssociative" and c["witness"]["line"] == 2


@pytest.mark.parametrize("name", sorted(BUNDLED))
def test_equivalence_passes_and_is_deterministic(name, tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        code, out, _ = run(["equivalence", "--fixtures", bundled_path(name), "--report", str(p)], capsys)
        assert code == EXIT_OK and out == ""
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_equivalence_with_2colimit_and_timing(capsys):
    code, out, _ = run(["equivalence", "--fixtures", bundled_path("d2"), "--check-2colimit", "--timing"], capsys)
    assert code == EXIT_OK
    checks = json.loads(out)["checks"]
    assert any(c["check"].startswith("2colimit_universal[") for c in checks)
    assert any(c["check"].startswith("degeneration.gset[") for c in checks)
    assert any(c["check"].startswith("nonsheaf_detected[") and c["passed"] for c in checks)
    assert all(isinstance(c["timing"], float) for c in checks if c["check"].startswith("phi_is_2sheaf"))


def test_sheaf_check_flags_only_the_nonsheaf(capsys):
    code, out, _ = run(["sheaf-check", "--fixtures", bundled_path("d2")], capsys)
    assert code == EXIT_FAILED
    failed = {c["check"] for c in json.loads(out)["checks"] if not c["passed"]}
    assert failed == {"is_2sheaf[nonsheaf]", "atomic_injectivity[nonsheaf]"}
    code, _, _ = run(["sheaf-check", "--fixtures", bundled_path("d2"), "--presheaf", "y1"], capsys)
    assert code == EXIT_OK


@pytest.mark.parametrize("raw", [False, True])
def test_orbit_dump_round_trips(raw, tmp_path, capsys):
    dump = tmp_path / "orbit.e2"
    argv = ["orbit", "--fixtures", bundled_path("xm"), "--dump", str(dump)] + (["--raw"] if raw else [])
    code, out, _ = run(argv, capsys)
    assert code == EXIT_OK
    assert any(c["check"] == "orbit.dump_roundtrip" and c["passed"] for c in json.loads(out)["checks"])
    code, out, _ = run(["validate", "--fixtures", str(dump)], capsys)
    assert code == EXIT_OK
    assert any(c["check"].startswith("validate[orbit:") for c in json.loads(out)["checks"])


def test_tampered_orbit_table_fails(tmp_path, capsys):
    dump = tmp_path / "orbit.e2"
    run(["orbit", "--fixtures", bundled_path("d2"), "--dump", str(dump)], capsys)
    text = dump.read_text().replace("hom 0 1 0", "hom 0 1 1", 1)
    dump.write_text(text)
    code, out, _ = run(["validate", "--fixtures", str(dump)], capsys)
    assert code == EXIT_FAILED
