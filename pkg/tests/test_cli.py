import json

import pytest

from fermatcx.builder import build_projective
from fermatcx.cli import demo_d2_lines, main
from fermatcx.io import import_complex


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_homology_projective(capsys):
    code, out, _ = run(capsys, "homology", "--degree", "2", "--space", "projective")
    assert code == 0
    assert "H0 = Z\n" in out and "H1 = Z/2\n" in out and "H2 = 0\n" in out


def test_homology_json(capsys):
    code, out, _ = run(capsys, "homology", "-d", "3", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["betti"] == [1, 0, 8] and doc["groups"] == ["Z", "0", "Z^8"]


def test_euler(capsys):
    code, out, _ = run(capsys, "euler", "--degree", "4", "--space", "projective")
    assert code == 0 and "= 7" in out


def test_build_writes_document(capsys, tmp_path):
    path = tmp_path / "p3.json"
    code, _, _ = run(capsys, "build", "--degree", "3", "--space", "projective", "--out", str(path))
    assert code == 0
    assert import_complex(path) == build_projective(3)


def test_build_stdout_is_stable(capsys):
    _, a, _ = run(capsys, "build", "--degree", "2")
    _, b, _ = run(capsys, "build", "--degree", "2")
    assert a == b and json.loads(a)["format_version"] == "1"


@pytest.mark.parametrize("argv", [
    ["build", "--degree", "0", "--space", "affine"],
    ["homology", "--degree", "x"],
    ["homology", "--degree", "2", "--bogus"],
    ["verify", "--degree", "2", "--tol", "-1"],
    ["mesh", "--resolution", "0", "--out", "m.obj"],
    ["nope"],
    [],
])
def test_invalid_arguments(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "usage:" in err


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "--degree", "3", "--samples", "1000", "--seed", "1",
                       "--tol", "1e-8", "--steps", "64")
    assert code == 0 and "verdict: pass" in out


def test_verify_json_same_across_workers(capsys):
    args = ["verify", "-d", "2", "-n", "300", "--seed", "4", "--steps", "8", "--projective", "--json"]
    _, a, _ = run(capsys, *args, "--workers", "1")
    _, b, _ = run(capsys, *args, "--workers", "2")
    assert json.loads(a) == json.loads(b)
    assert set(json.loads(a)) == {"retraction", "projective"}


def test_verify_failure_exit_code(capsys):
    # a tolerance below rounding error cannot be met
    code, out, _ = run(capsys, "verify", "-d", "3", "-n", "50", "--seed", "1", "--tol", "1e-30", "--steps", "4")
    assert code == 1 and "verdict: fail" in out


def test_mesh(capsys, tmp_path):
    path = tmp_path / "s.obj"
    code, out, _ = run(capsys, "mesh", "--resolution", "2", "--out", str(path))
    assert code == 0 and "18 vertices and 32 faces" in out
    assert path.read_text().count("\nf ") == 32


def test_demo_d2(capsys):
    code, out, _ = run(capsys, "demo-d2")
    assert code == 0
    assert out.splitlines() == demo_d2_lines()
    assert "affine, d = 2: 6 vertices, 12 edges, 8 faces" in out
    assert "projective, d = 2: 3 vertices, 6 edges, 4 faces" in out
    assert "  X[1:1:1] = X[-1:-1:-1]\n" in out
    assert "  L^x[1:1:1] = L^x[1:-1:-1]\n" in out
    assert "  V^x[1:1:1] = V^x[-1:1:1] = [1:0:0]\n" in out
    assert "V^z(1,1,-1) = (0, 0, -1)" in out
    assert "octahedron: yes" in out
