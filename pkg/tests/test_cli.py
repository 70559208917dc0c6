import json

import pytest

from anaqsim.cli import ERROR_RATE_COLUMNS, ERROR_TERM_COLUMNS, main
from anaqsim.config import ConfigError, config_from_dict, load_config
from anaqsim.io import fmt, read_csv
from anaqsim.schedules import MethodId, schedule_from_json


def _write(tmp_path, text, name="cfg.toml"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


BASE = """
methods = ["S_HALF", "S1", "S1_TILDE", "S2", "C1"]
[geometry]
nx = 2
ny = 2
c6 = 1.0
[device]
epsilon = 1e-5
[sweep]
epsilon_min = 1e-4
epsilon_max = 1e-2
points_per_decade = 2
"""


def test_error_rate_csv_and_svg(tmp_path):
    cfg = _write(tmp_path, BASE)
    out = tmp_path / "o"
    assert main(["error-rate", "--config", cfg, "--out", str(out)]) == 0
    rows = read_csv(out / "error_rates.csv")
    assert tuple(rows[0]) == ERROR_RATE_COLUMNS
    assert {r["method"] for r in rows} == {m.value for m in MethodId}
    for m in MethodId:
        assert (out / f"error-rate_{m.value}.svg").exists()
    svg = (out / "error-rate_S1.svg").read_text()
    assert "stroke-dasharray" not in svg  # 1e-5 lies outside this sweep
    # S2 below S1 at the smallest epsilon
    small = {r["method"]: float(r["error_rate"]) for r in rows if float(r["epsilon"]) == 1e-4}
    assert small["S2"] < small["S1"] < small["S_HALF"]
    for r in rows:
        if r["method"] in ("S_HALF", "S1", "C1"):
            assert float(r["bound_value"]) >= float(r["error_rate"])


def test_outputs_are_deterministic(tmp_path):
    cfg = _write(tmp_path, BASE)
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["error-rate", "--config", cfg, "--out", str(a), "--no-svg", "--methods", "S1,C1"]) == 0
    assert main(["error-rate", "--config", cfg, "--out", str(b), "--no-svg", "--methods", "S1,C1"]) == 0
    assert (a / "error_rates.csv").read_bytes() == (b / "error_rates.csv").read_bytes()
    assert not list(a.glob("*.svg"))


def test_single_site_zero_rates(tmp_path):
    cfg = _write(tmp_path, BASE.replace("nx = 2\nny = 2", "nx = 1\nny = 1"))
    assert main(["error-rate", "--config", cfg, "--out", str(tmp_path), "--no-svg"]) == 0
    assert all(float(r["error_rate"]) <= 1e-12 for r in read_csv(tmp_path / "error_rates.csv"))


def test_capacity_exit_code(tmp_path, capsys):
    cfg = _write(tmp_path, BASE.replace("nx = 2\nny = 2", "nx = 13\nny = 1"))
    assert main(["error-rate", "--config", cfg, "--out", str(tmp_path / "x")]) == 3
    assert "at most 12" in capsys.readouterr().err
    assert not (tmp_path / "x" / "error_rates.csv").exists()


@pytest.mark.parametrize(
    "patch",
    [
        ("epsilon_min = 1e-4", "epsilon_min = 1e-1"),
        ("points_per_decade = 2", "points_per_decade = 0"),
        ('methods = ["S_HALF", "S1", "S1_TILDE", "S2", "C1"]', "methods = []"),
        ('methods = ["S_HALF", "S1", "S1_TILDE", "S2", "C1"]', 'methods = ["S9"]'),
        ("c6 = 1.0", "c6 = -1.0"),
        ("[device]", "[device]\nbogus = 1"),
    ],
)
def test_invalid_config_exit_code(tmp_path, patch):
    cfg = _write(tmp_path, BASE.replace(*patch))
    assert main(["table", "--config", cfg, "--out", str(tmp_path)]) == 2


def test_missing_and_malformed_config(tmp_path):
    assert main(["table", "--config", str(tmp_path / "nope.toml")]) == 2
    assert main(["table", "--config", _write(tmp_path, "[geometry\n")]) == 2
    with pytest.raises(ConfigError):
        load_config(_write(tmp_path, "{", "bad.json"))


def test_json_config_and_omega(tmp_path):
    cfg = config_from_dict({"device": {"omega": 1000.0}, "methods": ["S1"]})
    assert cfg.device.epsilon == pytest.approx(3.14159265e-3 / 2, rel=1e-8)
    with pytest.raises(ConfigError):
        config_from_dict({"device": {"omega": 1.0, "epsilon": 1.0}})
    path = _write(tmp_path, json.dumps({"methods": ["S2"], "geometry": {"nx": 1, "ny": 2, "c6": 1.0}}), "c.json")
    assert load_config(path).methods == (MethodId.S2,)


def test_error_terms(tmp_path):
    cfg = _write(
        tmp_path,
        """
methods = ["S_HALF", "S1", "C1"]
[geometry]
c6 = 1.0
nx_values = [1]
ny_values = [2, 3]
""",
    )
    assert main(["error-terms", "--config", cfg, "--out", str(tmp_path)]) == 0
    rows = read_csv(tmp_path / "error_terms.csv")
    assert tuple(rows[0]) == ERROR_TERM_COLUMNS
    assert {r["method"] for r in rows} == {"S_HALF", "S1"}
    for r in rows:
        assert float(r["bound"]) >= float(r["numeric_norm"])
        if r["ny"] == "2" and (r["k1"], r["k2"]) == ("2", "0"):
            assert float(r["bound"]) == 0.0
    assert (tmp_path / "error-terms_S1.svg").exists()


def test_multistep(tmp_path):
    cfg = _write(tmp_path, BASE)
    assert main(["multistep", "--config", cfg, "--out", str(tmp_path), "--methods", "S1,C1", "--n-max", "4"]) == 0
    rows = read_csv(tmp_path / "multistep.csv")
    assert [r["n"] for r in rows] == ["1", "2", "3", "4"]
    assert float(rows[0]["delta"]) == 0.0
    assert all(float(r["delta"]) > 0 for r in rows[1:])
    assert main(["multistep", "--config", cfg, "--out", str(tmp_path), "--n-max", "1"]) == 2


def test_table(tmp_path, capsys):
    cfg = _write(tmp_path, BASE)
    assert main(["table", "--config", cfg, "--out", str(tmp_path)]) == 0
    lines = {ln.split()[0]: ln.split() for ln in capsys.readouterr().out.splitlines()[1:]}
    assert abs(float(lines["S1"][1]) - 1) < 0.05 and lines["S1"][2] == "6"
    assert abs(float(lines["C1"][1]) - 1) < 0.05 and lines["C1"][2] == "4"
    assert abs(float(lines["S2"][1]) - 2) < 0.05 and lines["S2"][2] == "12"
    assert (tmp_path / "table.txt").exists()


def test_jsums(tmp_path):
    cfg = _write(tmp_path, "[geometry]\nnx = 3\nc6 = 1.0\nny_values = [1, 2, 3, 4]\n")
    assert main(["jsums", "--config", cfg, "--out", str(tmp_path)]) == 0
    rows = read_csv(tmp_path / "jsums.csv")
    assert len(rows) == 12
    fits = read_csv(tmp_path / "jsum_fits.csv")
    assert [f["order"] for f in fits] == ["1", "2", "3"]
    for k in (1, 2, 3):
        assert (tmp_path / f"jsums_J{k}.svg").exists()


def test_schedule_dump(tmp_path):
    cfg = _write(tmp_path, BASE + "[schedule]\nt = 0.001\n")
    assert main(["schedule-dump", "--config", cfg, "--out", str(tmp_path)]) == 0
    s1 = schedule_from_json((tmp_path / "schedule_S1.json").read_text())
    assert s1.t == 0.001 and s1.duration == pytest.approx(6e-5 + 3e-3)
    c1 = json.loads((tmp_path / "schedule_C1.json").read_text())
    assert c1["t"] == 0.0 and len(c1["segments"]) == 1


def test_fmt():
    assert fmt(0.1) == "1.00000000000e-01"
    assert fmt(True) == "true" and fmt(3) == "3" and fmt(MethodId.S1) == "S1"
