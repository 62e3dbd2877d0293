import csv
import hashlib
import io
import json
import math
import subprocess
import sys
from pathlib import Path

import pytest

from squeezed_otto.cli import COLUMNS, EXIT_IO, EXIT_OK, EXIT_USAGE, EXIT_VERIFY, main, parse_values
from squeezed_otto.cycle import SC, SE
from squeezed_otto.high_temp import HTParams
from squeezed_otto.phase import classify

GOLDEN = Path(__file__).parent / "golden"
PHASE_SHA256 = "cd776e0519b4b3dea67f7560ea4a3c984303ceb0bd745a63541d31b0d995e3d6"

DOCUMENTED = {
    "eta_up": ["sweep", "--quantity", "eta_up", "--config", "both", "--eta-c", "0.4",
               "--r", "0:3:0.01"],
    "work": ["sweep", "--quantity", "work", "--config", "both", "--tau", "0.16",
             "--z", "0.01:0.99:0.001", "--r", "0,0.5,1"],
    "phase": ["sweep", "--quantity", "phase", "--config", "SE", "--r", "0.3", "--grid", "512"],
}


def run(argv, tmp_path, name="out"):
    out = tmp_path / name
    code = main(argv + ["--out", str(out)])
    return code, out


def rows(path):
    return list(csv.DictReader(io.StringIO(path.read_text())))


# ---------------------------------------------------------------- parsing

def test_parse_values_range_includes_stop_within_roundoff():
    vals = parse_values("0:3:0.01")
    assert len(vals) == 301 and vals[0] == 0.0 and vals[-1] == 3.0
    assert vals[17] == 0.17


def test_parse_values_range_excludes_unreached_stop():
    assert parse_values("0:1:0.3") == [0.0, 0.3, 0.6, 0.9]


def test_parse_values_list_and_scalar():
    assert parse_values("0,0.5,1") == [0.0, 0.5, 1.0]
    assert parse_values("0.16") == [0.16]


@pytest.mark.parametrize("text", ["0:1:0", "1:0:0.1", "a,b", "0:1"])
def test_parse_values_rejects(text):
    from squeezed_otto.cli import UsageError
    with pytest.raises(UsageError):
        parse_values(text)


# ---------------------------------------------------------------- documented sweeps

def test_eta_up_sweep_matches_golden(tmp_path):
    code, out = run(DOCUMENTED["eta_up"], tmp_path)
    assert code == EXIT_OK
    assert out.read_bytes() == (GOLDEN / "eta_up_eta_c_0.4.csv").read_bytes()
    data = rows(out)
    assert list(data[0]) == list(COLUMNS["eta_up"])
    assert max(float(d["value_SE"]) for d in data) < 0.5


def test_work_sweep_matches_golden(tmp_path):
    code, out = run(DOCUMENTED["work"], tmp_path)
    assert code == EXIT_OK
    assert out.read_bytes() == (GOLDEN / "work_tau_0.16.csv").read_bytes()
    data = rows(out)
    assert len(data) == 3 * 981
    # work curves cross near z = sqrt(tau sech 2r)
    for r in (0.0, 0.5, 1.0):
        sub = [d for d in data if float(d["r"]) == r]
        diff = [float(d["W_SE"]) - float(d["W_SC"]) for d in sub]
        k = next(i for i in range(len(diff) - 1) if diff[i] > 0 >= diff[i + 1])
        z_x = math.sqrt(0.16 / math.cosh(2 * r))
        assert float(sub[k]["z"]) <= z_x + 1e-12 and z_x <= float(sub[k + 1]["z"]) + 1e-12


def test_phase_sweep_pinned_and_pointwise(tmp_path):
    code, out = run(DOCUMENTED["phase"], tmp_path)
    assert code == EXIT_OK
    blob = out.read_bytes()
    assert hashlib.sha256(blob).hexdigest() == PHASE_SHA256
    data = rows(out)
    assert len(data) == 512 * 512
    assert list(data[0]) == list(COLUMNS["phase"])
    for d in data[::1021]:
        p = HTParams(float(d["z"]), float(d["tau"]), 0.3)
        assert classify(p, SE).label == d["mode"]


@pytest.mark.parametrize("name", ["eta_up", "work", "phase"])
def test_repeat_runs_byte_identical(tmp_path, name):
    _, a = run(DOCUMENTED[name], tmp_path, "a")
    _, b = run(DOCUMENTED[name], tmp_path, "b")
    assert a.read_bytes() == b.read_bytes()


def test_csv_format_details(tmp_path):
    code, out = run(["sweep", "--quantity", "delta", "--config", "SC", "--eta-c", "0.8",
                     "--r", "0,1"], tmp_path)
    assert code == EXIT_OK
    text = out.read_bytes()
    assert b"\r" not in text
    lines = text.decode("utf-8").splitlines()
    assert lines[0] == "r,eta_c,delta_SE,delta_SC"
    r, ec, se, sc = lines[1].split(",")
    assert se == "" and float(sc) > 0
    assert float(sc) == float(format(float(sc), ".17g"))


@pytest.mark.parametrize("quantity", ["work", "efficiency", "eta_up", "eta_mw", "delta", "phase"])
def test_json_schema(tmp_path, quantity):
    argv = ["sweep", "--quantity", quantity, "--format", "json", "--r", "0.3"]
    if quantity in ("work", "efficiency"):
        argv += ["--tau", "0.2,0.4", "--z", "0.1:0.9:0.2"]
    elif quantity == "phase":
        argv += ["--config", "SC", "--grid", "4"]
    else:
        argv += ["--eta-c", "0.4"]
    code, out = run(argv, tmp_path)
    assert code == EXIT_OK
    doc = json.loads(out.read_text())
    assert set(doc) == {"spec", "rows"}
    assert doc["spec"]["quantity"] == quantity
    assert doc["rows"] and all(list(row) == list(COLUMNS[quantity]) for row in doc["rows"])


def test_efficiency_sweep_marks_undefined_cells(tmp_path):
    code, out = run(["sweep", "--quantity", "efficiency", "--config", "SE", "--tau", "0.5",
                     "--r", "0", "--z", "0.1,0.9"], tmp_path)
    assert code == EXIT_OK
    data = rows(out)
    assert data[0]["eta_SE"] == ""  # no heat input from the hot bath
    assert float(data[1]["eta_SE"]) > 0 and data[1]["eta_SC"] == ""


def test_stdout_default(capsys):
    assert main(["sweep", "--quantity", "eta_mw", "--config", "SE", "--tau", "0.16",
                 "--r", "0"]) == EXIT_OK
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "r,eta_c,value_SE,value_SC" and len(out) == 2


# ---------------------------------------------------------------- exit codes

@pytest.mark.parametrize("argv", [
    ["sweep", "--quantity", "eta_up", "--tau", "0.5", "--eta-c", "0.5", "--r", "0"],
    ["sweep", "--quantity", "eta_up", "--r", "0"],
    ["sweep", "--quantity", "eta_up", "--eta-c", "1.5", "--r", "0"],
    ["sweep", "--quantity", "eta_up", "--eta-c", "0.4", "--r", "0:1:0"],
    ["sweep", "--quantity", "eta_up", "--eta-c", "0.4", "--r", "-1"],
    ["sweep", "--quantity", "work", "--tau", "0.2", "--r", "0"],
    ["sweep", "--quantity", "work", "--tau", "0.2", "--r", "0", "--z", "0,0.5"],
    ["sweep", "--quantity", "phase", "--config", "both", "--r", "0.3", "--grid", "8"],
    ["sweep", "--quantity", "phase", "--config", "SE", "--r", "0.3,0.5", "--grid", "8"],
    ["sweep", "--quantity", "phase", "--config", "SE", "--r", "0.3", "--grid", "1"],
    ["sweep", "--quantity", "power"],
    ["sweep", "--quantity", "eta_up", "--config", "XX", "--eta-c", "0.4", "--r", "0"],
    ["verify", "--scope", "nothing"],
    [],
])
def test_usage_errors_exit_1(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        sys.exit(main(argv))
    assert exc.value.code == EXIT_USAGE
    assert capsys.readouterr().err


def test_unwritable_path_exit_3(tmp_path, capsys):
    code = main(DOCUMENTED["eta_up"] + ["--out", str(tmp_path / "missing" / "x.csv")])
    assert code == EXIT_IO
    assert "cannot write" in capsys.readouterr().err


@pytest.mark.parametrize("scope", ["cubics", "optima", "phase"])
def test_verify_scopes_pass(scope, capsys):
    assert main(["verify", "--scope", scope]) == EXIT_OK
    out = capsys.readouterr().out
    assert "FAIL" not in out and out.rstrip().endswith("all checks passed")


def test_verify_bounds_reports_half_bound(capsys):
    assert main(["verify", "--scope", "bounds"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "PASS  exact SE efficiency < 1/2" in out


def test_verify_negative_control(capsys):
    assert main(["verify", "--scope", "cubics", "--inject-fault"]) == EXIT_VERIFY
    assert "FAIL" in capsys.readouterr().out


def test_console_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "squeezed_otto", "sweep", "--quantity", "eta_up",
                          "--config", "SC", "--eta-c", "0.8", "--r", "10"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    value = float(res.stdout.splitlines()[1].split(",")[3])
    assert value > 0.9
