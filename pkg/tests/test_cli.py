"""
Tests for the command-line front end and its exit codes
"""

import json

import pytest

from conftest import FIXTURES_DIR
from skewpbw import config
from skewpbw.main import main


def _fixture(name):
    return str(FIXTURES_DIR / f"{name}.json")


def _write(tmp_path, document, name="pres.json"):
    path = tmp_path / name
    path.write_text(document if isinstance(document, str) else json.dumps(document))
    return str(path)


TWO_GENERATORS = {
    "base_arity": 1,
    "generators": 2,
    "sigma": [[{"scale": "2"}], [{"scale": "3"}]],
    "delta_p": [["0", "0", "1"], ["0"]],
    "c": [["1"]],
}


@pytest.fixture(autouse=True)
def light_sampling(monkeypatch):
    monkeypatch.setattr(config, "RECONSTRUCTION_SAMPLES", 3)
    monkeypatch.setattr(config, "DUALITY_SAMPLES", 5)


# ============= validate =============

def test_validate_ok(capsys):
    """Test a well-formed presentation."""
    assert main(["validate", _fixture("kt_n2_i")]) == 0
    assert capsys.readouterr().out.strip() == "valid: kt_n2_i (m=1, n=2)"


def test_validate_zero_c(tmp_path, capsys):
    """Test that a zero twist is a semantic failure."""
    document = dict(TWO_GENERATORS, c=[["0"]])
    assert main(["validate", _write(tmp_path, document)]) == 1
    assert "invalid: c[1,2]: c must be nonzero" in capsys.readouterr().out


def test_validate_json(capsys):
    """Test the JSON validation report."""
    assert main(["validate", "--json", _fixture("weyl")]) == 0
    assert json.loads(capsys.readouterr().out) == {"valid": True, "violations": []}


@pytest.mark.parametrize(
    "document",
    [
        '{"base_arity": 1,',
        dict(TWO_GENERATORS, extra_field=True),
        dict(TWO_GENERATORS, generators=3),
        dict(TWO_GENERATORS, c=[["1/0"]]),
        dict(TWO_GENERATORS, base_arity=3),
    ],
)
def test_bad_documents_are_input_errors(tmp_path, document):
    """Test malformed JSON, schema violations and count mismatches."""
    assert main(["validate", _write(tmp_path, document)]) == 2


def test_missing_and_unsupported_files(tmp_path):
    """Test files that never reach the parser."""
    assert main(["validate", str(tmp_path / "missing.json")]) == 2
    assert main(["validate", _write(tmp_path, TWO_GENERATORS, name="pres.txt")]) == 2


def test_argument_errors_exit_with_two():
    """Test argparse usage errors."""
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["certify", _fixture("weyl"), "--degree", "many"])
    assert info.value.code == 2


# ============= classify =============

def test_classify_prints_matched_rows(capsys):
    """Test the matched row listing."""
    assert main(["classify", _fixture("kt_n2_i")]) == 0
    assert "k[t]:n=2/(i)" in capsys.readouterr().out.splitlines()


def test_classify_commutative_matches_several_rows(capsys):
    """Test that the commutative presentation sits in more than one row."""
    assert main(["classify", _fixture("commutative")]) == 0
    assert len(capsys.readouterr().out.splitlines()) > 1


def test_classify_without_match(tmp_path, capsys):
    """Test the residual listing when no row matches."""
    assert main(["classify", _write(tmp_path, TWO_GENERATORS)]) == 1
    out = capsys.readouterr().out
    assert out.startswith("no match; residuals:")
    assert "k[t]:n=2/(i): p1 = p1 t" in out


def test_classify_json(capsys):
    """Test the JSON label list."""
    assert main(["classify", "--json", _fixture("kt_n2_a1")]) == 0
    labels = json.loads(capsys.readouterr().out)
    assert {"label_id": "k[t]:n=2/(a).1", "matched": True, "residuals": []} in labels


# ============= reduce =============

def test_reduce(capsys):
    """Test the normal form printout."""
    assert main(["reduce", _fixture("kt_n2_i"), "x1*t"]) == 0
    assert capsys.readouterr().out.strip() == "2*t*x1 + t"


def test_reduce_json(capsys):
    """Test the JSON normal form."""
    assert main(["reduce", "--json", _fixture("kt_n2_i"), "x2*x1"]) == 0
    assert json.loads(capsys.readouterr().out) == {"input": "x2*x1", "normal_form": "x1*x2"}


def test_reduce_errors():
    """Test unknown generators (1) and syntax errors (2)."""
    assert main(["reduce", _fixture("kt_n2_i"), "x3*t"]) == 1
    assert main(["reduce", _fixture("kt_n2_i"), "x1 +"]) == 2


def test_reduce_refuses_malformed_presentation(tmp_path, capsys):
    """Test that shape violations are reported before reducing."""
    document = dict(TWO_GENERATORS, sigma=[[{"scale": "0"}], [{"scale": "3"}]])
    assert main(["reduce", _write(tmp_path, document), "x1"]) == 1
    assert "invalid: sigma[1]" in capsys.readouterr().out


# ============= autos =============

def test_autos_on_smooth_presentation(capsys):
    """Test the images and the commutation summary."""
    assert main(["autos", _fixture("kt_n2_i")]) == 0
    out = capsys.readouterr().out
    assert "nu_x1(t) = 1/2*t" in out
    assert "pairwise commute: yes" in out


def test_autos_report_residuals(capsys):
    """Test residual output for a perturbed presentation."""
    assert main(["autos", _fixture("ktt_n2_p1_perturbed")]) == 1
    assert "residual nu_x1 on x2*t1: -7/2*x2" in capsys.readouterr().out


def test_autos_json(capsys):
    """Test the JSON automorphism report."""
    assert main(["autos", "--json", _fixture("weyl")]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert [report["name"] for report in payload["automorphisms"]] == ["nu_t", "nu_x1"]
    assert all(report["bijective"] for report in payload["automorphisms"])
    assert payload["commutation"] == []


# ============= certify =============

def test_certify_smooth(capsys):
    """Test a SMOOTH certificate in text form."""
    assert main(["certify", _fixture("weyl"), "--degree", "3", "--trials", "4"]) == 0
    out = capsys.readouterr().out
    assert any(line.startswith("Verdict:") and line.endswith("SMOOTH") for line in out.splitlines())
    assert "[PASS] dimension" in out


def test_certify_failure(capsys):
    """Test that a failed stage exits with 1."""
    assert main(["certify", "--json", _fixture("kt_n2_f"), "--degree", "3", "--trials", "4"]) == 1
    payload = json.loads(capsys.readouterr().out)
    assert payload["verdict"] == "NOT_CERTIFIED"
    assert payload["failing_stage"] == "automorphism-extension"


def test_certify_writes_output(tmp_path, capsys):
    """Test the --output certificate file."""
    output = tmp_path / "cert.json"
    code = main(["certify", _fixture("weyl"), "--degree", "3", "--trials", "4", "--seed", "9", "--output", str(output)])
    assert code == 0
    saved = json.loads(output.read_text())
    assert saved["rng_seed"] == 9
    assert saved["presentation_name"] == "weyl"


def test_certify_output_directory_must_exist(tmp_path):
    """Test that an unwritable output path is an input error."""
    output = tmp_path / "nowhere" / "cert.txt"
    assert main(["certify", _fixture("weyl"), "--degree", "2", "--trials", "2", "--output", str(output)]) == 2


def test_certify_unwritable_output_is_input_error(tmp_path):
    """Test that a failed write exits with 2 instead of raising."""
    blocker = tmp_path / "plain.txt"
    blocker.write_text("not a directory")
    output = blocker / "cert.json"
    assert main(["certify", _fixture("weyl"), "--degree", "2", "--trials", "2", "--output", str(output)]) == 2


def test_reduce_zero_denominator_is_input_error():
    """Test that 1/0 is a syntax error, not a crash."""
    assert main(["reduce", _fixture("kt_n2_i"), "1/0"]) == 2
    assert main(["reduce", _fixture("kt_n2_i"), "x1 + 2/0"]) == 2
