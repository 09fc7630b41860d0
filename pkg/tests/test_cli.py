import json
import subprocess
import sys

import jsonschema
import pytest

from geosaddle.certify import CERTIFICATE_SCHEMA
from geosaddle.cli import main
from geosaddle.render import mesh_counts


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def fields(text):
    return dict(line.split(": ", 1) for line in text.strip().splitlines())


def test_classify_xy(capsys):
    code, out, _ = run(capsys, "classify", "--f", "x*y", "--at", "0,0")
    assert code == 0
    d = fields(out)
    assert d["verdict"] == "StrictSaddle" and d["discriminant"] == "-1"


def test_classify_fake_saddle(capsys):
    code, out, _ = run(capsys, "classify", "--f", "x^3", "--at", "0,0")
    assert code == 0 and fields(out)["verdict"] == "ClassicalSaddleOnly"


def test_classify_exit_follows_verdict(capsys):
    code, out, _ = run(capsys, "classify", "--f", "x^2*y^3", "--at", "0,0")
    verdict = fields(out)["verdict"]
    assert verdict in ("Unknown", "RefutedSaddle")
    assert code == (3 if verdict == "Unknown" else 0)


def test_classify_json_schema(capsys, tmp_path):
    out_file = tmp_path / "r.json"
    code, _, _ = run(capsys, "classify", "--f", "x^3-3*x*y^2", "--at", "0,0", "--json", "--out", str(out_file))
    assert code == 0
    doc = json.loads(out_file.read_text())
    assert doc["verdict"] == "StrictSaddle"
    jsonschema.validate(doc["certificate"], CERTIFICATE_SCHEMA)


def test_classify_png(capsys, tmp_path):
    png = tmp_path / "c.png"
    code, _, _ = run(capsys, "classify", "--f", "(y-x^2)*(y-2*x^2)", "--at", "0,0", "--png", str(png), "--nx", "21", "--ny", "21")
    assert code == 0 and png.read_bytes()[:4] == b"\x89PNG"


def test_line_only_flag(capsys):
    code, out, _ = run(capsys, "classify", "--f", "(y-x^2)*(y-2*x^2)", "--at", "0,0", "--parabola-coeffs", "")
    assert fields(out)["verdict"] != "StrictSaddle"


@pytest.mark.parametrize(
    "argv",
    [
        ["classify", "--f", "x +", "--at", "0,0"],
        ["classify", "--f", "x", "--at", "0"],
        ["classify", "--f", "x", "--at", "0,0", "--K", "2"],
        ["classify", "--f", "1/x", "--at", "0,0"],
        ["plot", "--f", "x", "--region", "1,0,0,1", "--mesh", "/dev/null"],
        ["plot", "--f", "x", "--mesh", "/nonexistent/dir/m.mesh"],
    ],
)
def test_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_syntax_error_message(capsys):
    _, _, err = run(capsys, "classify", "--f", "x +", "--at", "0,0")
    assert "offset 3" in err


def test_critical_points(capsys):
    code, out, _ = run(capsys, "critical-points", "--f", "x^3-3*x+y^2", "--region", "-2,2,-2,2")
    rows = [l.split("\t") for l in out.strip().splitlines()[1:]]
    assert code == 0
    assert [(r[0], r[1], r[3], r[4]) for r in rows] == [("-1", "0", "-12", "StrictSaddle"), ("1", "0", "12", "LocalMin")]


def test_critical_points_json(capsys):
    code, out, _ = run(capsys, "critical-points", "--f", "x^2+y^2", "--region", "-1,1,-1,1", "--json")
    doc = json.loads(out)
    assert [d["verdict"] for d in doc] == ["LocalMin"]
    code, out, _ = run(capsys, "critical-points", "--f", "x*y", "--region", "-2,2,-2,2", "--json")
    assert [(d["point"], d["discriminant"]) for d in json.loads(out)] == [([0.0, 0.0], -1.0)]


def test_oracle_suite_subset(capsys):
    code, out, _ = run(capsys, "oracle-suite", "--only", "dog-saddle,two-parabola")
    rows = {l.split("\t")[0]: l.split("\t") for l in out.splitlines() if not l.startswith("#")}
    assert code == 0
    assert rows["dog-saddle"][3:5] == ["PASS", "exact"]
    assert rows["two-parabola"][3] == "PASS" and rows["two-parabola"][5] == "parabola"


def test_plot_outputs(capsys, tmp_path):
    mesh = tmp_path / "out.mesh"
    code, out, _ = run(capsys, "plot", "--f", "x^3-3*x*y^2", "--region", "-1,1,-1,1",
                       "--nx", "65", "--ny", "65", "--mesh", str(mesh))
    assert code == 0
    assert mesh_counts(mesh.read_text()) == (4225, 8192)
    code, out, _ = run(capsys, "plot", "--f", "x^3*y-x*y^3", "--out", str(tmp_path / "dog"), "--nx", "9", "--ny", "9", "--at", "0,0")
    names = sorted(p.name for p in (tmp_path / "dog").iterdir())
    assert names == ["contours.svg", "figure.png", "grid.csv", "level_curves.csv", "surface.mesh"]


def test_plot_needs_output(capsys):
    code, _, err = run(capsys, "plot", "--f", "x")
    assert code == 2


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "geosaddle.cli", "classify", "--f", "x^4+y^4", "--at", "0,0"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert "verdict: RefutedSaddle" in r.stdout
