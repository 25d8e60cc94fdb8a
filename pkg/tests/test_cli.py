import json
import subprocess
import sys

import pytest

from psi_monoid import builtin
from psi_monoid.cli import run
from psi_monoid.graph import load_graph


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_present_circle(capsys):
    code, out, _ = call(capsys, "present", "circle", "--max-len", "4")
    assert code == 0
    assert "generators (primitive loops up to length 4): 1" in out
    assert "a  = a" in out
    assert "J (l = l'): ∅" in out


def test_present_json(capsys):
    code, out, _ = call(capsys, "present", "circle", "--max-len", "4", "--json")
    data = json.loads(out)
    assert code == 0
    assert [g["name"] for g in data["generators"]] == ["a"]
    assert data["J"] == []


def test_present_from_file(capsys, tmp_path):
    path = tmp_path / "circle.json"
    path.write_text(builtin.circle().to_json())
    code, out, _ = call(capsys, "present", str(path), "--max-len", "4")
    assert code == 0 and "a  = a" in out


def test_exactness_torus(capsys):
    code, out, _ = call(capsys, "exactness", "torus", "--max-len", "4")
    assert code == 0 and out.startswith("PASS")


def test_exactness_needs_product(capsys):
    code, _, err = call(capsys, "exactness", "circle")
    assert code == 1 and "product" in err


def test_mul_and_dagger(capsys):
    assert call(capsys, "mul", "a b", "b'")[1].strip() == "a b b'"
    assert call(capsys, "dagger", "a b")[1].strip() == "b' a'"
    assert call(capsys, "dagger", "e", "--self-dual", "e")[1].strip() == "e"
    assert call(capsys, "mul", "a@w", "v@b", "--graph", "torus")[1].strip() == "a@w v@b"


def test_mul_graph_non_composable(capsys):
    code, _, err = call(capsys, "mul", "p01", "p01", "--graph", "triangle")
    assert code == 1 and err.startswith("error:")


def test_normalize(capsys):
    assert call(capsys, "normalize", "b a' a", "--commutative")[1].strip() == "a a' b"
    assert call(capsys, "normalize", "b a")[1].strip() == "b a"


def test_loops_and_primitive(capsys):
    code, out, _ = call(capsys, "loops", "circle", "--max-len", "2")
    assert code == 0 and len(out.splitlines()) == 7
    code, out, _ = call(capsys, "primitive", "rp2", "--max-len", "2")
    assert "self-dual" in out


def test_factorize(capsys):
    code, out, _ = call(capsys, "factorize", "triangle", "p01 p12 p20 p01 p12 p20")
    assert code == 0 and out.strip() == "p01_p12_p20 p01_p12_p20"


def test_crossings(capsys):
    code, out, _ = call(capsys, "crossings", "circle", "a a a'")
    assert code == 0 and "crossings=3" in out and "signed=+1" in out


def test_quotient_and_pi1(capsys):
    code, out, _ = call(capsys, "quotient", "circle", "a a a'")
    assert code == 0 and "reduced: a" in out
    code, out, _ = call(capsys, "pi1", "rp2")
    assert code == 0 and "Z/2(e)" in out


def test_wedge_product_roundtrip(capsys, tmp_path):
    out_file = tmp_path / "w.json"
    assert call(capsys, "wedge", "circle", "circle_b", "-o", str(out_file))[0] == 0
    g = load_graph(str(out_file))
    assert g.to_json() == out_file.read_text()
    code, out, _ = call(capsys, "product", "circle", "circle_b")
    assert code == 0 and out == builtin.torus().to_json()
    p_file = tmp_path / "t.json"
    p_file.write_text(out)
    assert call(capsys, "exactness", str(p_file), "--max-len", "3")[0] == 0


def test_realize(capsys):
    code, out, _ = call(capsys, "realize", "triangle")
    assert code == 0 and "components: 3" in out


def test_sphere_and_tangle(capsys):
    assert call(capsys, "sphere", "--k", "1", "--r", "2")[1].strip() == "FreeDagger{a, b}"
    assert call(capsys, "tangle", "b a", "--k", "2")[1].strip() == "{a+, b+}"
    code, _, err = call(capsys, "sphere", "--k", "0")
    assert code == 1 and "k must be >= 1" in err


def test_validate_reports_violations(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({
        "vertices": ["u", "v"],
        "edges": [{"name": "e", "src": "u", "dst": "v"}],
        "involution": {"e": "e"},
        "base": "u",
    }))
    code, out, _ = call(capsys, "validate", str(bad))
    assert code == 1 and "self-dual edge must be a loop" in out
    assert call(capsys, "validate", "torus")[:2] == (0, "ok\n")


def test_malformed_json_position(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{\n  "vertices": [,]\n}')
    code, _, err = call(capsys, "present", str(bad))
    assert code == 1
    assert f"{bad}:2:" in err


def test_unknown_graph(capsys):
    code, _, err = call(capsys, "present", "nowhere.json")
    assert code == 1 and "bundled graphs" in err


def test_bad_word_position(capsys):
    code, _, err = call(capsys, "dagger", "a $b")
    assert code == 1 and ":1:3:" in err


def test_usage_errors_exit_2(capsys):
    for argv in ([], ["present"], ["loops", "circle", "--max-len", "-1"], ["frobnicate"]):
        with pytest.raises(SystemExit) as info:
            run(argv)
        assert info.value.code == 2
    capsys.readouterr()


def test_check_is_deterministic(capsys):
    code, first, _ = call(capsys, "check", "--seed", "3", "--max-len", "4")
    assert code == 0
    assert first.splitlines()[-1].endswith("checks passed")
    assert all(line.startswith("PASS") for line in first.splitlines()[:-1])
    assert call(capsys, "check", "--seed", "3", "--max-len", "4")[1] == first


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "psi_monoid", "mul", "a b", "b'"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "a b b'"
