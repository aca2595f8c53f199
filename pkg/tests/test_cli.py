import json

import jsonschema
import pytest

from quatkuga import __version__
from quatkuga.cli import main
from quatkuga.config import SpecError, load_schema, load_spec, parse_spec, read_spec_file


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "-a", "2", "-b", "-3")
    assert code == 0 and "{2, 3}" in out and "division; indefinite" in out
    code, out, _ = run(capsys, "classify", "-a", "1", "-b", "7")
    assert code == 0 and "split" in out
    code, out, _ = run(capsys, "classify", "-a", "2", "-b", "-3", "--degree", "2")
    assert "matrix-hamiltonian" in out


@pytest.mark.parametrize("argv", [["classify", "-a", "two", "-b", "3"],
                                  ["classify", "-a", "0", "-b", "3"],
                                  ["classify", "-a", "2", "-b", "3", "--degree", "0"],
                                  ["ledger"], ["ledger", "-m", "2", "-n", "5"],
                                  ["ledger", "--slope", "-n", "0"], ["bogus"]])
def test_input_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_ledger(capsys):
    code, out, _ = run(capsys, "ledger", "-m", "3", "-n", "1", "--degE", "2", "--genus", "2")
    assert code == 0 and "Arakelov gap: 0" in out and "deg E 1, canonical 2" in out
    code, out, _ = run(capsys, "ledger", "-m", "2")
    assert "[1, 1, 1/3]" in out and "Chen-Ogiue gap: 0" in out
    code, out, _ = run(capsys, "ledger", "-n", "2", "--slope")
    assert "2/3 vs 1/2, strict" in out
    code, out, _ = run(capsys, "ledger", "-m", "3", "--degE", "3", "--genus", "2")
    assert code == 1 and "violates Arakelov" in out


def test_toml_and_json_mirror_agree(fixtures_dir):
    a = load_spec(fixtures_dir / "paper_example.toml")
    b = load_spec(fixtures_dir / "paper_example.json")
    assert a.canonical_json() == b.canonical_json()
    assert a.digest() == b.digest()


def test_certify_golden(capsys, tmp_path, fixtures_dir):
    out = tmp_path / "r.json"
    code, _, _ = run(capsys, "certify", "--spec", str(fixtures_dir / "paper_example.toml"),
                     "--out", str(out))
    assert code == 0
    report = json.loads(out.read_text())
    jsonschema.validate(report, load_schema("report.schema.json"))
    golden = json.loads((fixtures_dir / "paper_example.golden.json").read_text())
    assert report["entries"] == golden["entries"]
    assert report["input_digest"] == golden["input_digest"]
    assert report["tool_version"] == __version__


def test_certify_broken_s(capsys, tmp_path, fixtures_dir):
    out = tmp_path / "r.json"
    code, stdout, _ = run(capsys, "certify", "--spec", str(fixtures_dir / "broken_s.json"),
                          "--out", str(out))
    assert code == 1
    report = json.loads(out.read_text())
    sym = [e for e in report["entries"] if e["name"] == "kuga.S_symmetric"][0]
    assert sym["status"] == "fail" and sym["witness"]["indices"] == [1, 2]
    assert "verdict: fail" in stdout


def test_certify_bad_tau(capsys, fixtures_dir):
    code, _, err = run(capsys, "certify", "--spec", str(fixtures_dir / "bad_tau.json"))
    assert code == 2 and "imaginary part" in err


def test_certify_missing_file(capsys, tmp_path):
    assert run(capsys, "certify", "--spec", str(tmp_path / "nope.toml"))[0] == 2


def test_certify_flags(capsys, tmp_path, fixtures_dir):
    out = tmp_path / "r.json"
    code, _, _ = run(capsys, "certify", "--spec", str(fixtures_dir / "paper_example.toml"),
                     "--out", str(out), "--tau", "0,sqrt(3)", "--tau", "1,2",
                     "--word-ball", "2", "--copies", "2", "--numeric-bits", "80")
    assert code == 0
    entries = json.loads(out.read_text())["entries"]
    statuses = {e["status"] for e in entries}
    assert "numeric-pass" in statuses
    assert any(e["name"] == "gamma.torsion_screen" and e["witness"]["radius"] == 2 for e in entries)


def test_certify_elliptic(capsys, tmp_path):
    spec = tmp_path / "ell.json"
    spec.write_text(json.dumps({"mode": "elliptic", "level": 3}))
    out = tmp_path / "r.json"
    assert run(capsys, "certify", "--spec", str(spec), "--out", str(out))[0] == 0
    entries = json.loads(out.read_text())["entries"]
    assert any(e["name"] == "kuga.flag" and e["witness"]["flag"] == "non-cocompact" for e in entries)


def test_certify_raw_kuga(capsys, tmp_path):
    raw = {"mode": "raw-kuga", "algebra": {"a": "1", "b": "1"},
           "generators": [["1", "0", "3/2", "-3/2"]],
           "g": 1, "rho": [[["1"]]], "lattice": [[["1", "0"]], [["0", "1"]]], "S": [["1"]]}
    spec = tmp_path / "raw.json"
    spec.write_text(json.dumps(raw))
    assert run(capsys, "certify", "--spec", str(spec), "--out", str(tmp_path / "r.json"))[0] == 0


@pytest.mark.parametrize("raw,msg", [
    ({"mode": "nope"}, "mode"),
    ({"mode": "elliptic", "level": 2}, "level"),
    ({"mode": "false-elliptic", "algebra": {"a": "2", "b": "x"}, "order": {"basis": [["1", "0", "0", "0"]] * 4},
      "generators": [["1", "0", "0", "0"]]}, "algebra"),
    ({"mode": "elliptic", "level": 3, "tau": [{"re": "0", "im": "-1"}]}, "imaginary"),
    ({"mode": "elliptic", "level": 3, "copies": 0}, "copies"),
])
def test_spec_validation(raw, msg):
    with pytest.raises(SpecError, match=msg):
        parse_spec(raw)


def test_malformed_toml(tmp_path):
    p = tmp_path / "x.toml"
    p.write_text("mode = \n")
    with pytest.raises(SpecError):
        read_spec_file(p)
