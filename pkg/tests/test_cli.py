import csv
import io
import json
import math
import subprocess
import sys

import pytest

from ladm.cli import main
from ladm.series import from_tree


def invoke(capsys, *args):
    code = main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


def read_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_solve_defaults(capsys):
    code, out, _ = invoke(capsys, "solve")
    assert code == 0
    data = json.loads(out)
    assert data["terms"] == 4 and len(data["iterates"]) == 5
    u1 = data["iterates"][1]["series"]
    assert len(u1) == 1 and u1[0]["power_t"] == 1
    (term,) = u1[0]["terms"]
    assert term["k"] == 1
    assert term["re"] == 0 and round(term["im"], 5) == 0.19758


def test_solve_fixed_point(capsys):
    _, out, _ = invoke(capsys, "solve", "--beta", "1")
    data = json.loads(out)
    assert all(it["series"] == [] for it in data["iterates"][1:])


def test_solve_zero_terms(capsys):
    _, out, _ = invoke(capsys, "solve", "--terms", "0")
    data = json.loads(out)
    assert [it["n"] for it in data["iterates"]] == [0]


def test_solve_csv(capsys):
    code, out, _ = invoke(capsys, "solve", "--emit", "csv", "--terms", "1")
    assert code == 0
    rows = read_csv(out)
    assert [(r["n"], r["power_t"], r["k"]) for r in rows] == [("0", "0", "1"), ("1", "1", "1"), ("sum", "0", "1"), ("sum", "1", "1")]


@pytest.mark.parametrize(
    "args",
    [
        ("solve", "--beta", "0"),
        ("solve", "--terms", "-1"),
        ("table", "--t", "1", "--t", "2"),
        ("table", "--x-count", "0"),
        ("grid", "--x-count", "3", "--x-step", "0"),
        ("grid", "--harmonic", "2"),
        ("table", "--beta", "0.8", "--t", "2"),
    ],
)
def test_invalid_config_exit_code(capsys, args):
    code, out, err = invoke(capsys, *args)
    assert code == 2
    assert out == ""
    assert "error" in err


def test_argparse_rejects_unknown_part(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["table", "--part", "phase"])
    assert exc.value.code == 2


def test_table_real(capsys):
    code, out, _ = invoke(capsys, "table", "--part", "real", "--t", "1.0")
    assert code == 0
    rows = read_csv(out)
    assert list(rows[0]) == ["x", "t", "re_ladm", "re_exact", "err_re"]
    assert [float(r["x"]) for r in rows] == [0.5 * i for i in range(1, 11)]
    assert rows[-1]["re_exact"] == "0.250854433879"
    for r in rows:
        assert float(r["err_re"]) == pytest.approx(abs(float(r["re_exact"]) - float(r["re_ladm"])), abs=1e-11)


def test_table_defaults_are_real_t1(capsys):
    assert invoke(capsys, "table")[1] == invoke(capsys, "table", "--part", "real", "--t", "1.0")[1]


def test_table_imag(capsys):
    _, out, _ = invoke(capsys, "table", "--part", "imag")
    rows = read_csv(out)
    assert list(rows[0]) == ["x", "t", "im_ladm", "im_exact", "err_im"]
    assert rows[0]["im_exact"] == "0.443634458364"


def test_table_fixed_point(capsys):
    _, out, _ = invoke(capsys, "table", "--beta", "1")
    assert all(float(r["err_re"]) < 1e-12 for r in read_csv(out))


def test_grid_ordering(capsys):
    args = ["grid", "--x-start", "0", "--x-step", str(2 * math.pi / 8), "--x-count", "9"]
    for t in ("1", "2", "3", "4", "5"):
        args += ["--t", t]
    code, out, _ = invoke(capsys, *args)
    assert code == 0
    rows = read_csv(out)
    assert len(rows) == 45
    keys = [(float(r["t"]), float(r["x"])) for r in rows]
    assert keys == sorted(keys)
    assert float(rows[8]["x"]) == pytest.approx(2 * math.pi)


def test_grid_single_point(capsys):
    _, out, _ = invoke(capsys, "grid", "--x-count", "1", "--t", "0.25")
    assert len(read_csv(out)) == 1


def test_grid_consistent_with_table(capsys):
    _, grid_out, _ = invoke(capsys, "grid", "--x-count", "10", "--t", "1.0")
    for part, cols in (("real", ["x", "t", "re_ladm", "re_exact", "err_re"]), ("imag", ["x", "t", "im_ladm", "im_exact", "err_im"])):
        _, table_out, _ = invoke(capsys, "table", "--part", part, "--t", "1.0")
        projected = io.StringIO()
        writer = csv.writer(projected, lineterminator="\n")
        writer.writerow(cols)
        for r in read_csv(grid_out):
            writer.writerow([r[c] for c in cols])
        assert projected.getvalue() == table_out


def test_solve_round_trip_matches_grid(capsys):
    _, solve_out, _ = invoke(capsys, "solve")
    truncated = from_tree(json.loads(solve_out)["truncated"])
    _, grid_out, _ = invoke(capsys, "grid", "--emit", "json", "--t", "0.5", "--t", "2.0")
    rows = json.loads(grid_out)
    assert len(rows) == 20
    for r in rows:
        v = truncated(r["x"], r["t"])
        assert abs(v.real - r["re_ladm"]) < 1e-12
        assert abs(v.imag - r["im_ladm"]) < 1e-12


def test_residual_defaults(capsys):
    _, out, _ = invoke(capsys, "residual")
    orders = json.loads(out)["orders"]
    assert all(o["max_abs"] < 1e-9 and o["annihilated"] for o in orders[:4])
    assert not orders[4]["annihilated"]


def test_residual_fixed_point(capsys):
    _, out, _ = invoke(capsys, "residual", "--beta", "1")
    assert all(o["max_abs"] < 1e-12 for o in json.loads(out)["orders"])


def test_residual_two_terms(capsys):
    _, out, _ = invoke(capsys, "residual", "--terms", "2")
    flags = [o["annihilated"] for o in json.loads(out)["orders"]]
    assert flags[:2] == [True, True]
    assert flags[2] is False


def test_output_file_is_deterministic(tmp_path, capsys):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        assert main(["grid", "--t", "1", "--t", "2", "--out", str(p)]) == 0
    assert capsys.readouterr().out == ""
    assert paths[0].read_bytes() == paths[1].read_bytes()
    assert paths[0].read_bytes().count(b"\n") == 21


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ladm", "table", "--x-count", "2"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "x,t,re_ladm,re_exact,err_re"
