import json

import pytest

from targetrace.cli import main


@pytest.fixture()
def config_path(tmp_path):
    doc = {
        "eta": 0.2, "n_b": 1.0, "d": 3,
        "m_grid": [10, "inf"],
        "rule_grid": [{"kind": "first_click"}, {"kind": "truncated_first_click", "n_max": 5}],
        "trials": 2000,
        "seed": 99,
        "output_path": str(tmp_path / "out.csv"),
    }
    path = tmp_path / "sweep.json"
    path.write_text(json.dumps(doc))
    return path


def test_simulate_end_to_end(config_path, tmp_path, capsys):
    out = tmp_path / "explicit.csv"
    mirror = tmp_path / "mirror.json"
    code = main([
        "simulate", "--config", str(config_path), "--out", str(out),
        "--json", str(mirror), "--workers", "2",
    ])
    assert code == 0
    assert out.exists() and mirror.exists()
    assert "wrote 4 rows" in capsys.readouterr().out
    header = out.read_text().splitlines()[0]
    assert header.startswith("eta,n_b,d,m,rule,r_or_n,p_tp,p_fp,")


def test_simulate_seed_override_changes_output(config_path, tmp_path):
    a, b, c = (tmp_path / name for name in ("a.csv", "b.csv", "c.csv"))
    assert main(["simulate", "--config", str(config_path), "--out", str(a), "--seed", "1"]) == 0
    assert main(["simulate", "--config", str(config_path), "--out", str(b), "--seed", "2"]) == 0
    assert main(["simulate", "--config", str(config_path), "--out", str(c), "--seed", "1"]) == 0
    assert a.read_bytes() == c.read_bytes()
    assert a.read_bytes() != b.read_bytes()


def test_bounds_leaves_mc_columns_empty(config_path, tmp_path):
    out = tmp_path / "bounds.csv"
    assert main(["bounds", "--config", str(config_path), "--out", str(out)]) == 0
    header, first, *_ = out.read_text().splitlines()
    record = dict(zip(header.split(","), first.split(",")))
    assert record["mc_error"] == ""
    assert record["analytic_error"] != ""


def test_invalid_config_exits_nonzero(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"eta": 0.5, "n_b": 0.0, "d": 2,
                               "rule_grid": [{"kind": "first_click"}], "trials": 0}))
    code = main(["simulate", "--config", str(bad)])
    assert code == 1
    assert "trials" in capsys.readouterr().err


def test_missing_config_file_exits_nonzero(tmp_path, capsys):
    code = main(["simulate", "--config", str(tmp_path / "nope.json")])
    assert code == 1
    assert "nope.json" in capsys.readouterr().err


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert "targetrace" in capsys.readouterr().out


def test_workers_env_override(config_path, tmp_path, monkeypatch):
    monkeypatch.setenv("TARGETRACE_WORKERS", "2")
    out = tmp_path / "env.csv"
    assert main(["simulate", "--config", str(config_path), "--out", str(out)]) == 0
    monkeypatch.setenv("TARGETRACE_WORKERS", "zero")
    assert main(["simulate", "--config", str(config_path), "--out", str(out)]) == 1
