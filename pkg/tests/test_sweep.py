import json
import math

import pytest

from targetrace.analytic import truncated_energy, truncated_error
from targetrace.model import INFINITE, ChannelParams, ClickModel, derive_click_model
from targetrace.sweep import (
    COLUMNS,
    ConfigError,
    parse_config,
    run_sweep,
    write_csv,
    write_json,
)

MINIMAL = {"eta": 0.5, "n_b": 0.5, "d": 2, "rule_grid": [{"kind": "first_click"}]}


def _cfg(**overrides):
    doc = dict(MINIMAL)
    doc.update(overrides)
    return parse_config(json.dumps(doc))


class TestParseConfig:
    def test_minimal_defaults(self):
        config = _cfg()
        assert config.base == ChannelParams(eta=0.5, n_b=0.5, d=2, m=INFINITE)
        assert config.m_grid == [INFINITE]
        assert config.trials == 10_000
        assert config.tol == 1e-12
        assert config.z == 1.96
        assert config.energy_axis == "photons"
        assert config.seed == 1
        assert config.output_path == "sweep.csv"

    def test_zero_trials_rejected_by_name(self):
        with pytest.raises(ConfigError, match="trials"):
            _cfg(trials=0)

    def test_unknown_key_rejected(self):
        with pytest.raises(ConfigError, match="froobz"):
            _cfg(froobz=1)

    def test_unknown_rule_key_rejected_with_path(self):
        with pytest.raises(ConfigError, match=r"rule_grid\[0\]"):
            _cfg(rule_grid=[{"kind": "first_click", "r": 2}])

    def test_missing_required_key(self):
        doc = dict(MINIMAL)
        del doc["eta"]
        with pytest.raises(ConfigError, match="eta"):
            parse_config(json.dumps(doc))

    def test_bad_json(self):
        with pytest.raises(ConfigError, match="invalid JSON"):
            parse_config("{nope")

    def test_m_grid_round_trip(self):
        config = _cfg(m_grid=[10, 100, "inf"])
        assert config.m_grid[:2] == [10, 100]
        assert math.isinf(config.m_grid[2])
        rows = run_sweep(config, with_mc=False)
        assert [row.m for row in rows[:2]] == [10, 100]
        assert math.isinf(rows[2].m)
        assert rows[2].p_fp == 0.0
        assert rows[0].p_fp == pytest.approx(0.1)

    def test_empty_rule_grid_rejected(self):
        with pytest.raises(ConfigError, match="rule_grid"):
            _cfg(rule_grid=[])

    def test_rule_without_count_needs_r_grid(self):
        with pytest.raises(ConfigError, match="r_grid"):
            _cfg(rule_grid=[{"kind": "r_clicks"}])

    def test_rule_expansion_and_explicit_count(self):
        config = _cfg(rule_grid=[{"kind": "r_clicks"}, {"kind": "r_clicks", "r": 7}],
                      r_grid=[1, 2, 3])
        rows = run_sweep(config, with_mc=False)
        assert [row.r_or_n for row in rows] == [1, 2, 3, 7]

    def test_invalid_values_rejected(self):
        with pytest.raises(ConfigError, match="eta"):
            _cfg(eta=0.0)
        with pytest.raises(ConfigError, match="tol"):
            _cfg(tol=0.0)
        with pytest.raises(ConfigError, match="energy_axis"):
            _cfg(energy_axis="joules")
        with pytest.raises(ConfigError, match="seed"):
            _cfg(seed=1 << 64)
        with pytest.raises(ConfigError, match="p_fp_override"):
            _cfg(p_fp_override=1.0)
        with pytest.raises(ConfigError, match=r"m_grid\[0\]"):
            _cfg(m_grid=["infinity"])


class TestRunSweep:
    def test_fig1_style_rows_cross_check(self):
        config = _cfg(
            eta=0.2, n_b=1.0, d=5,
            rule_grid=[{"kind": "truncated_first_click"}],
            r_grid=[1, 5, 20], trials=2000, seed=7,
        )
        rows = run_sweep(config, with_mc=True)
        params = ChannelParams(eta=0.2, n_b=1.0, d=5, m=INFINITE)
        model = derive_click_model(params)
        for row, n_max in zip(rows, [1, 5, 20]):
            assert row.error == ""
            assert row.analytic_error == pytest.approx(truncated_error(model, n_max), rel=1e-12)
            assert row.analytic_energy_photons == pytest.approx(
                truncated_energy(params, model, n_max), rel=1e-12
            )
            assert row.mc_ci_low <= row.mc_error <= row.mc_ci_high
            assert row.mc_mean_photons == pytest.approx(row.mc_mean_transmissions * 5)

    def test_fig2_style_bound_decreases_in_m(self):
        config = _cfg(
            eta=0.2, n_b=1.0, d=5, m_grid=[10, 100, 1000],
            rule_grid=[{"kind": "r_clicks"}], r_grid=[1, 2], trials=1000, seed=7,
        )
        rows = run_sweep(config, with_mc=False)
        by_r = {}
        for row in rows:
            by_r.setdefault(row.r_or_n, []).append(row.analytic_error)
        for r, bounds in by_r.items():
            assert bounds[0] > bounds[1] > bounds[2]

    def test_fixed_shots_with_finite_m_records_row_error(self):
        config = _cfg(m_grid=[10], rule_grid=[{"kind": "fixed_shots", "n_s": 3},
                                              {"kind": "first_click"}], trials=500)
        rows = run_sweep(config)
        assert "p_fp" in rows[0].error
        assert rows[0].mc_error is None
        assert rows[1].error == ""  # sweep continued past the failing row

    def test_infinite_m_leaves_series_empty(self):
        rows = run_sweep(_cfg(trials=500), with_mc=False)
        assert rows[0].analytic_series_error is None
        assert rows[0].analytic_error == 0.0  # uncapped race cannot miss at p_fp = 0

    def test_p_fp_override(self):
        config = _cfg(p_fp_override=0.02, trials=500)
        rows = run_sweep(config, with_mc=False)
        assert rows[0].p_fp == 0.02


class TestCsvOutput:
    def test_header_only_for_empty_table(self, tmp_path):
        path = tmp_path / "empty.csv"
        write_csv([], str(path))
        assert path.read_bytes() == (",".join(COLUMNS) + "\r\n").encode()

    def test_header_contains_documented_columns(self):
        required = [
            "eta", "n_b", "d", "m", "rule", "r_or_n", "p_tp", "p_fp",
            "mc_error", "mc_ci_low", "mc_ci_high",
            "mc_mean_transmissions", "mc_mean_photons", "seed",
        ]
        for name in required:
            assert name in COLUMNS
        assert any(name.startswith("analytic_") for name in COLUMNS)

    def test_byte_identical_reruns(self, tmp_path):
        config = _cfg(m_grid=[10, "inf"], trials=4000, seed=123)
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        write_csv(run_sweep(config, workers=1), str(a))
        write_csv(run_sweep(config, workers=2), str(b))
        assert a.read_bytes() == b.read_bytes()

    def test_floats_round_trip(self, tmp_path):
        config = _cfg(trials=300, seed=5)
        rows = run_sweep(config)
        path = tmp_path / "rt.csv"
        write_csv(rows, str(path))
        lines = path.read_text().splitlines()
        header = lines[0].split(",")
        cells = lines[1].split(",")
        record = dict(zip(header, cells))
        assert float(record["mc_error"]) == rows[0].mc_error
        assert float(record["analytic_energy_photons"]) == rows[0].analytic_energy_photons
        assert record["m"] == "inf"

    def test_json_mirror(self, tmp_path):
        config = _cfg(trials=300, seed=5)
        rows = run_sweep(config)
        path = tmp_path / "mirror.json"
        write_json(rows, str(path))
        payload = json.loads(path.read_text())
        assert payload["columns"] == COLUMNS
        assert len(payload["rows"]) == 1
        assert payload["rows"][0]["m"] == "inf"
        assert payload["rows"][0]["mc_error"] == rows[0].mc_error
