import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from hyperchow.cli import run

FIX = Path(__file__).resolve().parents[1] / "src" / "hyperchow" / "fixtures"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def test_hilbert_p12():
    code, out, _ = call("hilbert", "--orbifold", FIX / "p12.toml")
    assert code == 0 and out.strip() == "1 2"
    code, out, _ = call("hilbert", "--coarse", FIX / "p12.toml")
    assert out.strip() == "1 1"


def test_validate_nongeneric():
    code, out, _ = call("validate", FIX / "nongeneric.toml")
    assert code == 1
    assert "genericity: FAIL" in out


def test_other_commands_refuse_invalid_input():
    code, _, err = call("chow", FIX / "nongeneric.toml")
    assert code == 1 and "genericity: FAIL" in err


def test_box_json_tp112():
    code, out, _ = call("box", FIX / "tp112.toml", "--json")
    data = json.loads(out)
    assert code == 0
    assert len(data["boxes"]) == 2
    assert [1, 3] in [b["sigma"] for b in data["boxes"]]
    twisted = data["boxes"][1]
    assert twisted["alpha"] == {"1": "1/2", "3": "1/2"} and twisted["age"] == 2


@pytest.mark.parametrize("cmd", ["validate", "gale", "arrangement", "multifan", "lawrence",
                                 "box", "inertia", "chow", "hilbert"])
def test_every_command_text_and_json(cmd):
    for name in ("p122", "gerbe"):
        code, out, _ = call(cmd, FIX / f"{name}.toml")
        assert code == 0 and out
        code, out, _ = call(cmd, FIX / f"{name}.toml", "--json")
        assert code == 0
        first = json.loads(out)
        assert call(cmd, FIX / f"{name}.toml", "--json")[1] == out  # stable
        assert first


def test_chow_presentations():
    code, out, _ = call("chow", "--orbifold", FIX / "p12.toml")
    assert "u1^2" in out and "y1 - 2*y2" in out
    data = json.loads(call("chow", "--coarse", FIX / "p12.toml", "--json")[1])
    assert data["dimensions"] == [1, 1]
    assert [g["name"] for g in data["generators"]] == ["y1", "y2"]


def test_multiply():
    code, out, _ = call("multiply", FIX / "p12.toml", "--left", "u1", "--right", "u1")
    assert code == 0 and out.strip() == "0"
    code, out, _ = call("multiply", FIX / "gerbe.toml", "--left", "u1", "--right", "u1")
    assert out.strip() == "1"
    code, out, _ = call("multiply", FIX / "p12.toml", "--left", "y1", "--right", "1", "--json")
    assert json.loads(out)["product"] == "2*y2"


def test_usage_errors(tmp_path):
    assert call()[0] == 2
    assert call("frobnicate", FIX / "p12.toml")[0] == 2
    assert call("hilbert")[0] == 2
    assert call("hilbert", tmp_path / "missing.toml")[0] == 2
    assert call("multiply", FIX / "p12.toml", "--left", "y9", "--right", "1")[0] == 2
    bad = tmp_path / "bad.toml"
    bad.write_text("[group\n")
    code, _, err = call("validate", bad)
    assert code == 2 and "line 1" in err


def test_arrangement_regions_text():
    code, out, _ = call("arrangement", FIX / "p122.toml")
    assert "bounded regions: 2" in out


def test_inertia_json_p122():
    data = json.loads(call("inertia", FIX / "p122.toml", "--json")[1])
    comp = data["components"][1]
    assert comp["group"] == {"rank": 1, "torsion": [2]}
    assert comp["link"] == [1, 2, 4]


def test_selftest_small():
    code, out, _ = call("selftest", "--random", "1", "--samples", "50", "--json")
    data = json.loads(out)
    assert code == 0 and data["ok"]
    assert set(data["golden"]) >= {"p12", "gerbe", "p122", "tp112", "aprime"}
    assert "coorientation" in data["suites"]


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hyperchow.cli", "hilbert", str(FIX / "tp112.toml")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "1 1 2"
