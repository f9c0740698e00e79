import json

import pytest

from cohocoring import algebra as alg
from cohocoring import cli
from cohocoring import gallery
from cohocoring import manifest as mf
from cohocoring.errors import AssociativityViolation, ParseError
from cohocoring.linalg import QQ, Field


def _round_trip(name, field=QQ):
    obj = gallery.get(name, field)
    text = mf.dumps(mf.dump_objects({name: obj}, field))
    back = mf.loads(text).get(name)
    assert mf.same_object(obj, back), name
    assert mf.dumps(mf.dump_objects({name: back}, field)) == text


@pytest.mark.parametrize("name", gallery.names() + gallery.module_coring_names())
def test_round_trip_over_q(name):
    _round_trip(name)


@pytest.mark.parametrize("name", ["kZ2", "sweedler:k->D", "conj-crossed:kZ3", "matrix-coring:2xD"])
def test_round_trip_over_f7(name):
    _round_trip(name, Field(7))


def test_field_spellings():
    assert mf.parse_field("Q") == QQ == mf.parse_field("QQ")
    assert mf.parse_field("F7") == Field(7) == mf.parse_field({"Fp": 7}) == mf.parse_field("7")
    with pytest.raises(ParseError):
        mf.parse_field("F6")


def test_json_syntax_error_has_position():
    with pytest.raises(ParseError) as e:
        mf.loads('{"field": "Q",\n  "algebras": {\n  }, }')
    assert e.value.witness["line"] == 3


def test_unresolved_reference():
    data = {"field": "Q", "corings": {"C": {"base": "nowhere", "dim": 1}}}
    with pytest.raises(ParseError) as e:
        mf.load_data(data)
    assert e.value.witness["name"] == "nowhere"
    with pytest.raises(ParseError):
        mf.load_data({"field": "Q"}).get("missing")


def test_duplicate_names_are_rejected():
    A = mf.algebra_json(gallery.make_algebra("k"))
    with pytest.raises(ParseError):
        mf.load_data({"algebras": {"x": A}, "corings": {"x": {"base": "x"}}})


BROKEN = {
    "field": "Q",
    "algebras": {
        "broken": {"dim": 3, "unit": ["1", "0", "0"],
                   "mult": [[["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
                            [["0", "1", "0"], ["0", "0", "1"], ["1", "0", "0"]],
                            [["0", "0", "1"], ["1", "0", "0"], ["1", "0", "0"]]]},
    },
}


def test_broken_associativity_is_kept_and_reported(tmp_path):
    m = mf.load_data(BROKEN)
    with pytest.raises(AssociativityViolation) as e:
        m.get("broken")
    assert len(e.value.witness["triple"]) == 3
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(BROKEN))
    code, report, _ = cli.run(["validate", "--manifest", str(path), "--object", "broken", "--json"])
    assert code == 1
    failed = [c for c in report["checks"] if not c["passed"]]
    assert failed and failed[0]["error"]["error"] == "AssociativityViolation"
    assert len(failed[0]["error"]["witness"]["triple"]) == 3


def test_manifest_objects_are_usable_from_the_cli(tmp_path):
    path = tmp_path / "m.json"
    path.write_text(mf.dumps(mf.dump_objects({"mine": gallery.get("coalg:kZ2")})))
    code, report, _ = cli.run(["cohomology", "--manifest", str(path), "--object", "mine",
                               "--theory", "hc", "--degree", "4", "--json"])
    assert code == 0 and report["dims"] == [2, 0, 2, 0]


def test_field_override(tmp_path, monkeypatch):
    path = tmp_path / "m.json"
    path.write_text(mf.dumps(mf.dump_objects({"mine": gallery.get("coalg:kZ2")})))
    monkeypatch.setenv("COHOCORING_FIELD", "F3")
    code, report, _ = cli.run(["cohomology", "--manifest", str(path), "--object", "mine",
                               "--theory", "hc", "--degree", "4", "--json"])
    assert code == 2 and report["error"]["error"] == "BadCharacteristic"


def test_haar_and_coseparator_blocks(tmp_path):
    data = mf.dump_objects({"Z2": gallery.get("kZ2")})
    data["haar"] = {"th": {"algebroid": "Z2", "theta": [["1", "0"]]}}
    m = mf.load_data(data)
    assert m.get("th").normal
    data["haar"]["bad"] = {"algebroid": "Z2", "theta": [["1", "1"]]}
    path = tmp_path / "h.json"
    path.write_text(json.dumps(data))
    code, report, _ = cli.run(["validate", "--manifest", str(path), "--object", "bad", "--json"])
    assert code == 1


def test_algebra_json_shape():
    blk = mf.algebra_json(alg.dual_numbers(QQ))
    assert blk["dim"] == 2 and blk["unit"] == ["1", "0"]
