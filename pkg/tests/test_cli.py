import json
import os
import re
import subprocess
import sys

import pytest

HERE = os.path.dirname(__file__)
GOLDEN = os.path.join(HERE, "golden")


def run_cli(*args, expect=0):
    proc = subprocess.run([sys.executable, "-m", "octica.cli", *args],
                          capture_output=True, text=True)
    assert proc.returncode == expect, (proc.returncode, proc.stderr)
    return proc.stdout


def test_lattice_show():
    out = run_cli("lattice", "show", "--name", "lz")
    assert "rank 2" in out and "signature (0, 2)" in out
    obj = json.loads(run_cli("--json", "lattice", "show", "--name", "lambda"))
    assert obj["rank"] == 6 and obj["signature"] == [1, 5]


def test_fix_subcommand():
    out = run_cli("fix", "--chi", "2")
    assert "all checks pass" in out
    obj = json.loads(run_cli("--json", "fix", "--chi", "3"))
    assert obj["verification"]["ok"]
    assert len(obj["basis"]) == 6


@pytest.mark.parametrize("i,count", [(0, 6), (1, 7), (2, 7), (3, 8), (4, 6)])
def test_vinberg_subcommand(i, count):
    out = run_cli("vinberg", "--lattice", f"L{i}", "--stop", "volume")
    assert f"{count} fundamental roots" in out


def test_vinberg_stop_criteria():
    out = run_cli("vinberg", "--lattice", "L0", "--stop", "expected:6")
    assert "6 fundamental roots" in out
    out = run_cli("vinberg", "--lattice", "L0", "--stop", "height:4")
    assert "fundamental roots" in out


def test_diagram_golden_dot_bytes():
    for i in range(5):
        out = run_cli("diagram", "--lattice", f"L{i}", "--format", "dot")
        with open(os.path.join(GOLDEN, f"vinberg_L{i}.dot")) as fh:
            assert out == fh.read()


def test_diagram_dot_parses_as_graph():
    out = run_cli("diagram", "--lattice", "L1", "--format", "dot")
    assert out.startswith("graph L1 {") and out.rstrip().endswith("}")
    body = out[out.index("{") + 1:out.rindex("}")]
    node_re = re.compile(r'^\s*n\d+ \[label="-?\d+"\];$')
    edge_re = re.compile(r'^\s*n\d+ -- n\d+ \[.*\];$')
    attr_re = re.compile(r"^\s*node \[shape=circle\];$")
    for line in filter(None, map(str.rstrip, body.splitlines())):
        assert node_re.match(line) or edge_re.match(line) or attr_re.match(line), line


def test_diagram_json_round_trip():
    from octica.render import diagram_from_json
    out = run_cli("diagram", "--lattice", "L2", "--format", "json")
    diag = diagram_from_json(out)
    assert len(diag) == 7
    assert json.loads(out)["name"] == "L2"


def test_outputs_byte_deterministic():
    for args in (("diagram", "--lattice", "L3", "--format", "json"),
                 ("vinberg", "--lattice", "L2", "--stop", "volume"),
                 ("--json", "cone-angle"),
                 ("--json", "mod2", "--chi", "4"),
                 ("s8-table",)):
        assert run_cli(*args) == run_cli(*args)


def test_mod2_subcommand():
    out = run_cli("mod2", "--chi", "2")
    assert "dim Fix = 4" in out and "norm-one fixed vectors = 8" in out
    obj = json.loads(run_cli("--json", "mod2", "--chi", "4"))
    assert obj["type"] == "type4-or-antipodal"


def test_s8_table_subcommand():
    out = run_cli("s8-table")
    assert "28" in out and "16" in out
    obj = json.loads(run_cli("--json", "s8-table"))
    assert len(obj["rows"]) == 5


def test_type2_subcommand():
    obj = json.loads(run_cli("--json", "type2", "--chi", "2"))
    assert obj["structure"] == "equal"
    assert "2*r3" in obj["certificate"]
    obj3 = json.loads(run_cli("--json", "type2", "--chi", "3"))
    assert obj3["structure"] == "semidirect"
    assert "witness" in obj3


def test_cone_angle_subcommand():
    obj = json.loads(run_cli("--json", "cone-angle"))
    assert obj["isometry_group_order"] == 96
    assert obj["anti_involution_count"] == 36
    assert obj["total_angle"] == "3/4 pi"
    assert obj["orbifold_point"] is False
    text = run_cli("cone-angle")
    assert "3/4 pi" in text


def test_verify_all_filter_and_exit_codes(tmp_path):
    out = run_cli("verify-all", "--only", "cuspidal-cone")
    assert "overall: PASS" in out
    assert "cone.summary" in out and "vinberg.L0" not in out


def test_missing_data_file_exit_code_2():
    run_cli("--data", "/nonexistent/nowhere.json", "lattice", "show",
            "--name", "lz", expect=2)


def test_corrupted_data_pinpoints_check_and_exits_1(tmp_path):
    from octica import data as data_mod
    with open(data_mod.default_path()) as fh:
        obj = json.load(fh)
    obj["fixed_grams"]["L3"][0][0] += 2
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(obj, sort_keys=True, indent=1))
    proc = subprocess.run([sys.executable, "-m", "octica.cli",
                           "--data", str(bad), "verify-all", "--only", "fix"],
                          capture_output=True, text=True)
    assert proc.returncode == 1
    assert "[FAIL] fix.B3" in proc.stdout
    assert "[PASS] fix.B2" in proc.stdout


def test_verify_all_report_dir(tmp_path):
    out_dir = tmp_path / "report"
    proc = subprocess.run([sys.executable, "-m", "octica.cli", "verify-all",
                           "--only", "gram-matrices",
                           "--report-dir", str(out_dir)],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    files = sorted(os.listdir(out_dir))
    assert "report.csv" in files
    assert "cone_gluing.png" in files
    assert {f"vinberg_L{i}.png" for i in range(5)} <= set(files)
    csv = (out_dir / "report.csv").read_text()
    assert csv.splitlines()[0] == "check_id,anchor,expected,computed,status"


def test_png_rendering_deterministic(tmp_path):
    p1, p2 = tmp_path / "a.png", tmp_path / "b.png"
    run_cli("diagram", "--lattice", "L0", "--format", "png", "--out", str(p1))
    run_cli("diagram", "--lattice", "L0", "--format", "png", "--out", str(p2))
    assert p1.read_bytes() == p2.read_bytes()


def test_external_lattice_file(tmp_path):
    f = tmp_path / "toy.json"
    f.write_text(json.dumps({"name": "toy", "gram": [[1, 0], [0, -2]]}))
    out = run_cli("vinberg", "--lattice", str(f), "--stop", "height:9")
    assert "2 fundamental roots" in out


def test_json_encoding_of_scalars():
    obj = json.loads(run_cli("--json", "lattice", "show", "--name", "lz"))
    # GaussInt encodes as the two-element array [re, im]
    assert obj["gram"][0][1] == [1, -1]
