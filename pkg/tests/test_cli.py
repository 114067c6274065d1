import json
import subprocess
import sys

import pytest

from tphopf.cli import main
from tphopf.gallery import NAMES
from tphopf.serialize import Workspace, dumps


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def c2_files(tmp_path, capsys):
    code, _, _ = run(capsys, "example", "c2-regular", "--out", str(tmp_path))
    assert code == 0
    return tmp_path


def test_check_tp_passes(capsys):
    code, out, _ = run(capsys, "check", "tp", "a3-derivation")
    assert code == 0
    assert "pass" in out.lower()


def test_fundamental_valid_and_diagnostic(capsys):
    code, out, _ = run(capsys, "--json", "fundamental", "c2-regular")
    assert code == 0
    assert json.loads(out)["status"] == "VALID"
    code, out, _ = run(capsys, "--json", "fundamental", "a3-derivation")
    assert code == 1
    doc = json.loads(out)
    assert doc["status"] == "DIAGNOSTIC"
    assert doc["witnesses"][0]["at"] == ["1", "1", "x"]
    assert doc["alpha_bijective"] is True


def test_subcommand_json_flag(capsys):
    code, out, _ = run(capsys, "fundamental", "c2-regular", "--json")
    assert code == 0 and json.loads(out)["status"] == "VALID"


def test_json_output_is_byte_identical(capsys):
    outs = []
    for _ in range(2):
        code, out, _ = run(capsys, "--json", "fundamental", "c2-free2")
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]
    assert outs[0] == dumps(json.loads(outs[0]))


def test_example_files_round_trip(c2_files):
    for name in ("hopf", "algebra", "module", "phi", "bundle"):
        path = c2_files / f"{name}.json"
        text = path.read_text()
        assert dumps(json.loads(text)) == text
    ws = Workspace()
    ws.load(c2_files / "bundle.json")
    assert ws.of_kind("module")


def test_fundamental_from_files(c2_files, capsys):
    f = c2_files
    code, out, _ = run(capsys, "--json", "fundamental", "--hopf", str(f / "hopf.json"), "--algebra",
                       str(f / "algebra.json"), "--module", str(f / "module.json"), "--phi", str(f / "phi.json"))
    assert code == 0
    assert json.loads(out)["status"] == "VALID"
    code, out, _ = run(capsys, "--json", "fundamental", str(f / "bundle.json"))
    assert code == 0


def test_noncanonical_rational_is_normalized(c2_files, capsys):
    path = c2_files / "hopf.json"
    doc = json.loads(path.read_text())
    doc["unit"] = ["2/2", "0/5"]
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "--json", "check", "hopf", str(path))
    assert code == 0
    ws = Workspace()
    (name,) = ws.load(path)
    entry = ws.entry(name, "hopf")
    assert tuple(entry.obj.unit) == (1, 0)
    assert entry.report.passed and len(entry.sha256) == 64


def test_fraction_normalized_in_output(tmp_path, capsys):
    path = tmp_path / "q.json"
    doc = {"kind": "hopf", "name": "Q", "basis": ["1"], "mult": [[["2/2"]]], "unit": ["4/4"],
           "comult": [["1"]], "counit": ["1"], "antipode": [["1"]]}
    path.write_text(json.dumps(doc))
    assert run(capsys, "check", "hopf", str(path))[0] == 0


def test_inconsistent_dims_exit_2_with_location(c2_files, capsys):
    path = c2_files / "hopf.json"
    doc = json.loads(path.read_text())
    doc["mult"][1][0] = ["0"]
    path.write_text(json.dumps(doc))
    code, _, err = run(capsys, "check", "hopf", str(path))
    assert code == 2
    assert "mult[1][0]" in err


def test_float_rejected(c2_files, capsys):
    path = c2_files / "hopf.json"
    doc = json.loads(path.read_text())
    doc["counit"] = [1.0, 1]
    path.write_text(json.dumps(doc))
    assert run(capsys, "check", "hopf", str(path))[0] == 2


def test_broken_axiom_exit_1(c2_files, capsys):
    path = c2_files / "hopf.json"
    doc = json.loads(path.read_text())
    doc["counit"] = ["2", "1"]
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "check", "hopf", str(path))
    assert code == 1
    assert "counit" in out


def test_missing_file_and_bad_json(tmp_path, capsys):
    assert run(capsys, "check", "hopf", str(tmp_path / "nope.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "check", "hopf", str(bad))[0] == 2


def test_unknown_example_is_usage_error(capsys):
    assert run(capsys, "example", "no-such")[0] == 2


@pytest.mark.parametrize("what", ["center", "coinvariants", "lie-invariants", "B", "p", "lambda"])
def test_compute_commands(capsys, what):
    code, out, _ = run(capsys, "--json", "compute", what, "c2-regular")
    assert code == 0
    json.loads(out)


def test_compute_ideal_closure_with_seed_vector(capsys):
    code, out, _ = run(capsys, "--json", "compute", "ideal-closure", "a3-derivation", "--seed", "0,1,0")
    assert code == 0
    doc = json.loads(out)
    assert doc["dim"] == 2


def test_global_seed_echoed(capsys):
    code, out, _ = run(capsys, "--seed", "5", "--json", "compute", "B", "a3-derivation")
    assert code == 0
    assert json.loads(out)["field"]["seed"] == 5


def test_adjunction_default_instances(capsys):
    code, out, _ = run(capsys, "--json", "adjunction", "c2-regular")
    assert code == 0
    doc = json.loads(out)
    assert doc["verified"] and set(doc["instances"]) == {"B", "G(M)"}


@pytest.mark.parametrize("name", NAMES)
def test_every_example_builds(capsys, name):
    assert run(capsys, "example", name)[0] == 0


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "tphopf", "check", "hopf", "c2-regular"],
                         capture_output=True, text=True)
    assert res.returncode == 0
