import json
import subprocess
import sys

import pytest

from ribbonalg.category import fixture_path
from ribbonalg.cli import brauer_scan, jandl_classify, run
from ribbonalg.scalar import CycNum
from conftest import cat


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def blocks(text):
    """Parse the structured [NAME] ... [/NAME] sections of a text report."""
    out, cur = {}, None
    for line in text.splitlines():
        if line.startswith("[/"):
            cur = None
        elif line.startswith("[") and line.endswith("]"):
            cur = out.setdefault(line[1:-1], {})
        elif cur is not None:
            k, v = line.split(" = ", 1)
            cur[k] = json.loads(v)
    return out


def test_validate_example(capsys):
    code, out, _ = call(capsys, "validate", "fixtures/ising.json")
    assert code == 0
    b = blocks(out)["VALIDATE"]
    assert b["passed"] and all(c["passed"] for c in b["checks"])
    assert out.rstrip().endswith("certified = true")


def test_zmatrix_of_unit_example(capsys):
    code, out, _ = call(capsys, "zmatrix", "fixtures/ising.json", "--algebra", "one")
    assert code == 0
    assert blocks(out)["ZMATRIX"]["z"] == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_eval_example(capsys):
    code, out, _ = call(capsys, "eval", "fixtures/semion.json", "-e", "d[s1] . c[s1,s1] . c[s1,s1] . b[s1]")
    assert code == 0
    assert blocks(out)["EVAL"]["scalar"] == "1"


def test_eval_open_diagram(capsys):
    code, out, _ = call(capsys, "eval", "ising", "-e", "c[s,s]", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["EVAL"]["dom"] == doc["EVAL"]["cod"]


def test_homdim(capsys):
    code, out, _ = call(capsys, "homdim", "ising", "s s", "1 + psi")
    assert code == 0 and blocks(out)["HOMDIM"]["dim"] == 2


def test_mutated_spec_exits_one_with_witness(capsys, tmp_path):
    doc = json.loads(fixture_path("ising").read_text())
    k = next(k for k, t in enumerate(doc["F"]) if t[:4] == ["s", "s", "s", "s"])
    doc["F"][k][6] = (-CycNum.from_json(doc["F"][k][6])).to_json()
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(doc))
    code, out, _ = call(capsys, "validate", str(p))
    assert code == 1
    b = blocks(out)["VALIDATE"]
    assert not b["passed"]
    assert any(c["witness"] for c in b["checks"] if not c["passed"])


@pytest.mark.parametrize(
    "argv",
    [
        ("validate", "no-such-fixture"),
        ("eval", "ising"),
        ("eval", "ising", "-e", "id[s] . (c[s,s]"),
        ("eval", "ising", "-e", "id[s] . id[psi]"),
        ("homdim", "ising", "s"),
        ("zmatrix", "ising", "--algebra", "end:zz"),
    ],
)
def test_bad_input_exits_two(capsys, argv):
    code, _, err = call(capsys, *argv)
    assert code == 2 and "usage" in err


def test_bad_flag_exits_two(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["validate", "ising", "--format", "xml"])
    assert exc.value.code == 2


@pytest.mark.parametrize(
    "argv, block",
    [
        (("find-frobenius", "ising", "--algebra", "1+psi"), "FROBENIUS"),
        (("aut", "z4", "--algebra", "1+g2"), "AUT"),
        (("reversions", "ising", "--algebra", "1+psi"), "REV"),
        (("azumaya", "fib", "--algebra", "1+t"), "AZUMAYA"),
        (("picard", "z2-semion"), "PICARD"),
        (("zmatrix", "z4", "--algebra", "end:g"), "ZMATRIX"),
    ],
)
def test_commands_text_and_json_agree(capsys, argv, block):
    code, text, _ = call(capsys, *argv)
    code2, js, _ = call(capsys, *argv, "--format", "json")
    assert code == code2 == 0
    doc = json.loads(js)
    assert doc["certified"] is True and doc["command"] == argv[0]
    assert blocks(text)[block] == json.loads(json.dumps(doc[block]))


def test_aut_reports_exact_sequence(capsys):
    _, out, _ = call(capsys, "aut", "z4", "--algebra", "1+g2")
    b = blocks(out)
    assert b["AUT"]["order"] == 2 and b["EXACT-SEQ"]["equal"]


def test_reversions_count(capsys):
    _, out, _ = call(capsys, "reversions", "ising", "--algebra", "1+psi")
    b = blocks(out)["REV"]
    assert len(b["reversions"]) == 2 and b["complete"]


def test_picard_alpha_maps(capsys):
    _, out, _ = call(capsys, "picard", "z4", "--algebra", "1+g2")
    b = blocks(out)["PICARD"]
    assert b["alpha_plus"] != b["alpha_minus"]


def test_output_is_deterministic(capsys):
    argv = ("jandl-classify", "z2-semion", "--format", "json")
    first = call(capsys, *argv)
    assert call(capsys, *argv) == first


def test_brauer_scan_triv():
    rep = brauer_scan(cat("triv"))
    assert rep["exhaustive"] and len(rep["classes"]) == 1


def test_jandl_classify_triv():
    rep = jandl_classify(cat("triv"))
    assert rep["exhaustive"] and rep["class_count"] == 1
    assert len(rep["jandl_algebras"]) == 1


def test_brauer_scan_ising_contains_both_algebras():
    rep = brauer_scan(cat("ising"))
    names = {a["name"] for a in rep["algebras"]}
    assert {"1", "1+psi"} <= names and rep["exhaustive"]


def test_jandl_classify_free_fermion():
    rep = jandl_classify(cat("ising"))
    assert rep["exhaustive"] and rep["reflexive"] and rep["symmetric"] and rep["transitive"]
    assert sum(1 for j in rep["jandl_algebras"] if j["algebra"] == "1+psi") == 2
    assert rep["class_count"] == 2


def test_console_script():
    r = subprocess.run(
        [sys.executable, "-m", "ribbonalg.cli", "homdim", "triv", "1", "1"], capture_output=True, text=True
    )
    assert r.returncode == 0 and "dim Hom(1, 1) = 1" in r.stdout
