import io
import json

import pytest

from coquasi.cli import (ParseError, ValidationError, algebra_document, dumps_algebra,
                         loads_algebra, run)
from coquasi.zoo import ZOO_NAMES, build


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("name", ZOO_NAMES)
def test_round_trip_is_byte_identical(name):
    text = dumps_algebra(build(name))
    assert dumps_algebra(loads_algebra(text)) == text


def test_canonical_entry_order():
    doc = algebra_document(build("H4"))
    for key in ("delta", "product", "phi"):
        idx = [tuple(e[:-1]) for e in doc[key]]
        assert idx == sorted(idx) and len(set(idx)) == len(idx)


def _doc(name):
    return json.loads(dumps_algebra(build(name)))


def test_out_of_range_index_names_entry():
    doc = _doc("H4")
    doc["delta"][0][1] = 9
    with pytest.raises(ValidationError, match=r"delta\[0\]"):
        loads_algebra(json.dumps(doc))


def test_non_canonical_residue():
    doc = _doc("kZ3")
    doc["counit"][0] = "7"
    with pytest.raises(ValidationError, match="non-canonical"):
        loads_algebra(json.dumps(doc))


def test_repeated_entry_rejected():
    doc = _doc("H4")
    doc["product"].append(doc["product"][0])
    with pytest.raises(ValidationError):
        loads_algebra(json.dumps(doc))


def test_malformed_json_reports_location():
    with pytest.raises(ParseError, match="line"):
        loads_algebra('{"format": ')


def test_broken_coalgebra_rejected():
    doc = _doc("kZ2")
    doc["counit"] = ["1", "0"]
    with pytest.raises(ValidationError):
        loads_algebra(json.dumps(doc))


def test_max_dim_guard(monkeypatch, tmp_path):
    monkeypatch.setenv("COQUASI_MAX_DIM", "4")
    code, _, err = call("zoo", "Taft3")
    assert code == 2 and "COQUASI_MAX_DIM" in err


def test_emit_then_check(tmp_path):
    f = tmp_path / "h4.json"
    assert call("zoo", "H4", "--emit", str(f))[0] == 0
    code, out, _ = call("check", str(f))
    assert code == 0 and out.startswith("PASS")


def test_corrupted_phi_gives_witness(tmp_path):
    doc = _doc("kZ3_omega")
    for e in doc["phi"]:
        if e[:3] == [1, 1, 1]:
            e[3] = "3"
    f = tmp_path / "bad.json"
    f.write_text(json.dumps(doc))
    code, out, _ = call("check", str(f), "--json")
    assert code == 1
    rep = json.loads(out)
    failed = {k: v for k, v in rep["checks"].items() if not v["ok"]}
    assert failed and all("witness" in v for v in failed.values())
    w = next(iter(failed.values()))["witness"]
    assert {"index", "lhs", "rhs"} <= set(w) and w["lhs"] != w["rhs"]


def test_bad_input_exit_two(tmp_path):
    f = tmp_path / "bad.json"
    f.write_text("[1, 2")
    assert call("check", str(f))[0] == 2
    assert call("check", str(tmp_path / "missing.json"))[0] == 2
    assert call("zoo", "nonsense")[0] == 2


def test_hopf_case_requires_hopf(tmp_path):
    f = tmp_path / "c.json"
    call("zoo", "kZ2_omega", "--emit", str(f))
    code, _, err = call("hopf-case", str(f))
    assert code == 2 and "not an ordinary Hopf algebra" in err


def test_report_schema(tmp_path):
    f = tmp_path / "k.json"
    call("zoo", "kZ2", "--emit", str(f))
    code, out, _ = call("radford", str(f), "--json", "--direct")
    rep = json.loads(out)
    assert code == 0
    assert {"tool", "version", "schema", "command", "input_digest", "algebra", "pass",
            "checks", "certificate"} <= set(rep)
    assert rep["certificate"]["sigma_source"] == "DirectSolve"
    assert len(rep["input_digest"]) == 64


def test_zoo_parameters(tmp_path):
    f = tmp_path / "c.json"
    assert call("zoo", "cyclic", "--n", "3", "--p", "7", "--emit", str(f))[0] == 0
    doc = json.loads(f.read_text())
    assert doc["field"] == "GF(7)" and doc["dim"] == 3
    assert call("zoo", "taft", "--n", "3", "--p", "7", "--q", "3")[0] == 2   # 3 has order 6
