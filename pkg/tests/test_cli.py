"""Command-line behaviour: example invocations, exit codes, determinism and figures."""
import json
import math
import subprocess
import sys

import pytest

from planefix.cli import main, parse_curve, parse_points, parse_radius
from planefix.grid import BUILTINS, parse_continuum, read_grid, write_grid


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_certify_rotation_json(capsys):
    code, out, _ = run(capsys, "certify", "--map", "rot:pi", "--continuum", "builtin:disc5", "--json")
    assert code == 0
    rep = json.loads(out)
    assert rep["status"] == "ok" and rep["outcome"] == "fixed_point"
    assert math.hypot(*rep["fixed_point"]["point"]) <= 2 ** -10
    assert all(c == 1 for c in rep["fixed_point"]["certificate_chain"])


def test_index_text(capsys):
    code, out, _ = run(capsys, "index", "--map", "scale:0.5", "--curve", "circle:1:64")
    assert code == 0
    assert "\nindex: 1\n" in out


def test_approximate_from_file(tmp_path, capsys):
    path = tmp_path / "blob.grid"
    write_grid(parse_continuum("builtin:blob", 3), path)
    code, out, _ = run(capsys, "approximate", "--continuum", f"file:{path}", "--depth", "6", "--json")
    assert code == 0
    rep = json.loads(out)
    assert rep["status"] == "ok"
    assert rep["nesting_verified"]
    assert [r["m"] for r in rep["discs"]][-1] == 6
    assert all(r["max_vertex_distance"] <= r["distance_bound"] + 1e-12 for r in rep["discs"])


def test_grid_roundtrip(tmp_path):
    for name, make in BUILTINS.items():
        g = make()
        write_grid(g, tmp_path / f"{name}.grid")
        back = read_grid(tmp_path / f"{name}.grid")
        assert back.n == g.n and back.cells == g.cells


def test_locate_and_cycle_commands(capsys):
    code, out, _ = run(capsys, "locate", "--map", "diag:2:0.5", "--curve", "square:1", "--json")
    assert code == 0
    assert set(json.loads(out)["fixed_point"]["certificate_chain"]) == {-1}
    code, out, _ = run(capsys, "theorem_d", "--map", "rot:pi", "--points", "1,0;-1,0", "--json")
    assert code == 0
    assert math.hypot(*json.loads(out)["fixed_point"]["point"]) < 1e-3


@pytest.mark.parametrize("argv", [
    ["certify", "--map", "bogus:1", "--continuum", "builtin:disc5"],
    ["certify", "--map", "translate:3:0", "--continuum", "builtin:disc5"],
    ["index", "--map", "scale:0.5", "--curve", "circle:-1:8"],
    ["approximate", "--continuum", "file:/nonexistent/grid"],
    ["theorem_d", "--map", "rot:pi", "--points", "1,0"],
])
def test_input_errors_exit_1(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 1
    assert err.startswith("error:")
    assert out == ""


def test_certification_failure_exit_2(capsys):
    code, out, err = run(capsys, "index", "--map", "identity", "--curve", "circle:1:16", "--json")
    assert code == 2
    assert json.loads(out)["status"] == "failed"
    assert "certification failed" in err


@pytest.mark.parametrize("argv", [
    ["certify", "--map", "rot:pi", "--continuum", "builtin:disc5", "--json"],
    ["certify", "--map", "rot:1", "--continuum", "builtin:disc5", "--witness"],
    ["index", "--map", "diag:2:0.5", "--curve", "circle:1:32", "--json"],
])
def test_outputs_byte_identical(argv):
    cmd = [sys.executable, "-m", "planefix", *argv]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a


def test_svg_written(tmp_path, capsys):
    path = tmp_path / "fig.svg"
    code, _, _ = run(capsys, "certify", "--map", "rot:pi", "--continuum", "builtin:disc5", "--svg", str(path))
    assert code == 0
    text = path.read_text()
    assert text.splitlines()[1].startswith("<!-- planefix certify: scale")
    for tag in ("<rect x=", "<polygon", "<circle"):
        assert tag in text


def test_failure_leaves_no_svg(tmp_path, capsys):
    path = tmp_path / "fig.svg"
    code, _, _ = run(capsys, "index", "--map", "identity", "--curve", "circle:1:16", "--svg", str(path))
    assert code == 2
    assert not path.exists()


def test_empty_geometry_leaves_no_svg(tmp_path):
    from planefix.errors import EmptyReport
    from planefix.svg import emit_svg
    with pytest.raises(EmptyReport):
        emit_svg({"pipeline": "x", "geometry": {}}, tmp_path / "e.svg")
    assert not (tmp_path / "e.svg").exists()


def test_parsers():
    assert parse_radius("2^-20") == 2.0 ** -20
    assert parse_radius("2**-3") == 0.125
    with pytest.raises(ValueError):
        parse_radius("0")
    assert parse_points("1,2; 3,4") == [(1.0, 2.0), (3.0, 4.0)]
    assert len(parse_curve("circle:1:12").vertices) == 12
    with pytest.raises(ValueError):
        parse_curve("rect:1:0:0:1")


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert "planefix" in capsys.readouterr().out
