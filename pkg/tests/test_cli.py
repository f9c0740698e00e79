import json
import subprocess
import sys

import pytest

from cohocoring import cli
from cohocoring import gallery
from cohocoring import manifest as mf


def run(*argv):
    code, report, _ = cli.run(list(argv) + ["--json"])
    return code, report


# the coalgebra dual to k[x]/(x^2): Delta(1) = 1 (x) 1, Delta(x) = 1 (x) x + x (x) 1;
# it is not cosemisimple, so it has no coseparator
DUAL_NUMBER_COALGEBRA = {
    "field": "Q",
    "algebras": {"k": {"dim": 1, "mult": [[["1"]]], "unit": ["1"]}},
    "corings": {"dn": {"base": "k", "dim": 2,
                       "left_action": [[["1", "0"], ["0", "1"]]],
                       "right_action": [[["1", "0"], ["0", "1"]]],
                       "coproduct": [[[0, 0, "1"]], [[0, 1, "1"], [1, 0, "1"]]],
                       "counit": [["1", "0"]]}},
}


def test_gallery_listing():
    code, report = run("gallery")
    assert code == 0
    names = [o["name"] for o in report["objects"]]
    assert "sweedler:k->M2" in names and "conj-crossed:kZ2" in names
    assert names == sorted(names, key=names.index)
    assert run("gallery") == (code, report)


def test_reports_are_byte_identical():
    argv = ["cohomology", "--object", "coalg:kZ3", "--theory", "hc", "--degree", "4", "--json"]
    out = [subprocess.run([sys.executable, "-m", "cohocoring.cli"] + argv, capture_output=True,
                          text=True, check=True).stdout for _ in range(2)]
    assert out[0] == out[1]
    assert json.loads(out[0])["schema"] == 1


def test_hc_of_trivial_coalgebra():
    code, report = run("cohomology", "--object", "coalg:k", "--theory", "hc", "--degree", "5")
    assert code == 0
    assert report["dims"] == [1, 0, 1, 0, 1] and report["degrees"] == [0, 1, 2, 3, 4]


def test_hh_homology_of_dual_numbers_two_ways():
    base = ["cohomology", "--object", "alg:D", "--theory", "hh", "--direction", "homology", "--degree", "4"]
    code1, natural = run(*base)
    code2, sweedler = run(*base, "--pipeline", "sweedler")
    assert code1 == code2 == 0
    assert natural["dims"] == sweedler["dims"] == [2, 1, 1, 1, 1]


def test_hp_of_trivial_coring():
    code, report = run("cohomology", "--object", "trivial-coring:k", "--theory", "hp", "--degree", "5")
    assert code == 0
    assert report["dims"][0] == 1 and report["stabilized"][0]


def test_validate_sweedler_and_trivial():
    for name in ("sweedler:k->D", "trivial-coring:k", "trivial-coring:D"):
        code, report = run("validate", "--object", name)
        assert code == 0 and all(c["passed"] for c in report["checks"]), name


@pytest.mark.parametrize("check,name", [
    ("prop36", "kZ2"), ("prop34", "sweedler-coring:k->M2"), ("prop32", "kZ2"), ("prop33", "kZ2"),
    ("prop35", "alg:D"), ("lemma31", "self:kZ3"), ("lemma32", "env:coalg:kZ2"),
])
def test_checks_pass(check, name):
    degree = "4" if check in ("prop33", "prop34") else "3"
    code, report = run("check", check, "--object", name, "--degree", degree)
    assert code == 0 and report["passed"], report


@pytest.mark.parametrize("name", ["coalg:kZ2", "sweedler:k->D", "conj-crossed:kZ2", "alg:M2",
                                  "env:sweedler-coring:k->D", "square:kZ2"])
def test_identities_on_builders(name):
    code, report = run("check", "identities", "--object", name, "--degree", "3")
    assert code == 0 and report["passed"]


def test_precondition_failure_exits_2(tmp_path):
    path = tmp_path / "dn.json"
    path.write_text(json.dumps(DUAL_NUMBER_COALGEBRA))
    code, report = run("check", "prop34", "--manifest", str(path), "--object", "dn", "--degree", "3")
    assert code == 2
    assert report["error"]["witness"]["precondition"] == "coseparator"


def test_check_failure_exits_1(tmp_path):
    data = mf.dump_objects({"Z2": gallery.get("kZ2")})
    data["haar"] = {"bad": {"algebroid": "Z2", "theta": [["1", "1"]]}}
    path = tmp_path / "h.json"
    path.write_text(json.dumps(data))
    code, report = run("validate", "--manifest", str(path), "--object", "bad")
    assert code == 1 and not report["passed"]


def test_invalid_input_exits_2(tmp_path):
    assert run("cohomology", "--object", "no-such-object")[0] == 2
    assert run("check", "prop36", "--object", "coalg:kZ2", "--degree", "3")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{ not json")
    code, report = run("validate", "--manifest", str(bad), "--object", "x")
    assert code == 2 and report["error"]["witness"]["line"] == 1
    assert run("cohomology", "--manifest", str(tmp_path / "missing.json"), "--object", "x")[0] == 2


def test_bad_characteristic_exits_2(monkeypatch):
    monkeypatch.setenv("COHOCORING_FIELD", "F5")
    code, report = run("cohomology", "--object", "coalg:kZ2", "--theory", "hc", "--degree", "4")
    assert code == 2 and report["error"]["error"] == "BadCharacteristic"


def test_square_gate_is_reported():
    code, report = run("validate", "--object", "square:kZ2")
    assert code == 0
    code, report = cli.run(["check", "lemma31", "--object", "square:sweedler:k->D", "--json"])[:2]
    assert code == 2


def test_text_output(capsys):
    assert cli.main(["cohomology", "--object", "coalg:k", "--theory", "hh", "--degree", "3"]) == 0
    out = capsys.readouterr().out
    assert "result: PASS" in out and "degree  2       0  (edge)" in out
