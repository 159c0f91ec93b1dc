"""Config-driven parameter sweeps with deterministic CSV/JSON emission.

The configuration is a JSON document (schema documented in the README).
Each grid point (m x rule x count) becomes one row carrying its inputs,
every applicable closed-form quantity, and the Monte Carlo summary; the
campaign seed of row i is derived from (seed, i), so output bytes are a
pure function of (config, seed) regardless of worker count.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field, replace
from typing import Optional, Union

from . import analytic
from .engine import run_campaign
from .model import (
    INFINITE,
    ChannelParams,
    ClickModel,
    DecisionRule,
    FirstClick,
    FixedShots,
    RClicks,
    TruncatedFirstClick,
    UnsupportedCombination,
    derive_click_model,
    rule_count,
)
from .rng import derive_seed

_RULE_KINDS = ("fixed_shots", "first_click", "r_clicks", "truncated_first_click")
_COUNT_KEY = {"fixed_shots": "n_s", "r_clicks": "r", "truncated_first_click": "n_max"}

COLUMNS = [
    "eta", "n_b", "d", "m", "rule", "r_or_n", "p_tp", "p_fp",
    "analytic_energy_transmissions", "analytic_energy_photons", "analytic_error",
    "analytic_series_error", "analytic_series_tail", "analytic_chernoff_constant",
    "analytic_classical_lb", "analytic_tmsv_ub",
    "mc_error", "mc_ci_low", "mc_ci_high", "mc_mean_transmissions", "mc_mean_photons",
    "seed", "error",
]


class ConfigError(ValueError):
    """Invalid sweep configuration; the message names the offending key."""


@dataclass(frozen=True)
class RuleSpec:
    """A decision-rule grid entry; count=None expands over r_grid."""

    kind: str
    count: Optional[int] = None

    def expand(self, r_grid: list[int]) -> list[DecisionRule]:
        if self.kind == "first_click":
            return [FirstClick()]
        counts = [self.count] if self.count is not None else r_grid
        ctor = {
            "fixed_shots": FixedShots,
            "r_clicks": RClicks,
            "truncated_first_click": TruncatedFirstClick,
        }[self.kind]
        return [ctor(c) for c in counts]


@dataclass(frozen=True)
class SweepConfig:
    base: ChannelParams
    rule_grid: list[RuleSpec]
    m_grid: list[Union[int, float]]
    r_grid: list[int] = field(default_factory=list)
    energy_axis: str = "photons"
    trials: int = 10_000
    seed: int = 1
    tol: float = 1e-12
    z: float = 1.96
    output_path: str = "sweep.csv"
    p_fp_override: Optional[float] = None


def _type_name(value) -> str:
    return type(value).__name__


def _require_number(value, path: str, *, integer: bool = False, minimum=None):
    ok = isinstance(value, int) and not isinstance(value, bool)
    if not integer:
        ok = ok or isinstance(value, float)
    if not ok:
        raise ConfigError(f"{path}: expected {'an integer' if integer else 'a number'}, "
                          f"got {_type_name(value)}")
    if minimum is not None and value < minimum:
        raise ConfigError(f"{path}: must be >= {minimum}, got {value}")
    return value


def _parse_rule(obj, path: str) -> RuleSpec:
    if not isinstance(obj, dict):
        raise ConfigError(f"{path}: expected an object, got {_type_name(obj)}")
    kind = obj.get("kind")
    if kind not in _RULE_KINDS:
        raise ConfigError(f"{path}.kind: expected one of {_RULE_KINDS}, got {kind!r}")
    count_key = _COUNT_KEY.get(kind)
    allowed = {"kind"} | ({count_key} if count_key else set())
    unknown = set(obj) - allowed
    if unknown:
        raise ConfigError(f"{path}: unknown key(s) {sorted(unknown)}")
    count = None
    if count_key and count_key in obj:
        count = int(_require_number(obj[count_key], f"{path}.{count_key}", integer=True, minimum=1))
    return RuleSpec(kind=kind, count=count)


def parse_config(text: Union[str, bytes]) -> SweepConfig:
    """Parse and fully validate a JSON sweep configuration."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"invalid JSON: {e}") from e
    if not isinstance(doc, dict):
        raise ConfigError(f"top level: expected an object, got {_type_name(doc)}")

    known = {
        "eta", "n_b", "d", "rule_grid", "m_grid", "r_grid", "energy_axis",
        "trials", "seed", "tol", "z", "output_path", "p_fp_override",
    }
    unknown = set(doc) - known
    if unknown:
        raise ConfigError(f"unknown key(s) {sorted(unknown)}")
    for key in ("eta", "n_b", "d", "rule_grid"):
        if key not in doc:
            raise ConfigError(f"{key}: required key is missing")

    eta = float(_require_number(doc["eta"], "eta"))
    n_b = float(_require_number(doc["n_b"], "n_b"))
    d = _require_number(doc["d"], "d", integer=True)
    try:
        base = ChannelParams(eta=eta, n_b=n_b, d=d, m=INFINITE)
    except ValueError as e:
        raise ConfigError(str(e)) from e

    rules_doc = doc["rule_grid"]
    if not isinstance(rules_doc, list) or not rules_doc:
        raise ConfigError("rule_grid: expected a non-empty list")
    rule_grid = [_parse_rule(r, f"rule_grid[{i}]") for i, r in enumerate(rules_doc)]

    m_doc = doc.get("m_grid", ["inf"])
    if not isinstance(m_doc, list) or not m_doc:
        raise ConfigError("m_grid: expected a non-empty list")
    m_grid: list[Union[int, float]] = []
    for i, entry in enumerate(m_doc):
        if entry == "inf":
            m_grid.append(INFINITE)
        else:
            m_grid.append(int(_require_number(entry, f"m_grid[{i}]", integer=True, minimum=1)))

    r_doc = doc.get("r_grid", [])
    if not isinstance(r_doc, list):
        raise ConfigError("r_grid: expected a list")
    r_grid = [
        int(_require_number(v, f"r_grid[{i}]", integer=True, minimum=1))
        for i, v in enumerate(r_doc)
    ]
    for i, spec in enumerate(rule_grid):
        if spec.kind != "first_click" and spec.count is None and not r_grid:
            raise ConfigError(
                f"rule_grid[{i}]: rule {spec.kind!r} has no "
                f"{_COUNT_KEY[spec.kind]!r} and r_grid is empty"
            )

    energy_axis = doc.get("energy_axis", "photons")
    if energy_axis not in ("transmissions", "photons"):
        raise ConfigError(
            f"energy_axis: expected 'transmissions' or 'photons', got {energy_axis!r}"
        )

    trials = int(_require_number(doc.get("trials", 10_000), "trials", integer=True, minimum=1))
    seed = int(_require_number(doc.get("seed", 1), "seed", integer=True, minimum=0))
    if seed >= 1 << 64:
        raise ConfigError(f"seed: must fit in 64 bits, got {seed}")
    tol = float(_require_number(doc.get("tol", 1e-12), "tol"))
    if tol <= 0:
        raise ConfigError(f"tol: must be > 0, got {tol}")
    z = float(_require_number(doc.get("z", 1.96), "z"))
    if z <= 0:
        raise ConfigError(f"z: must be > 0, got {z}")
    output_path = doc.get("output_path", "sweep.csv")
    if not isinstance(output_path, str):
        raise ConfigError(f"output_path: expected a string, got {_type_name(output_path)}")

    p_fp_override = doc.get("p_fp_override")
    if p_fp_override is not None:
        p_fp_override = float(_require_number(p_fp_override, "p_fp_override"))
        if not 0.0 <= p_fp_override < 1.0:
            raise ConfigError(f"p_fp_override: must be in [0, 1), got {p_fp_override}")

    return SweepConfig(
        base=base, rule_grid=rule_grid, m_grid=m_grid, r_grid=r_grid,
        energy_axis=energy_axis, trials=trials, seed=seed, tol=tol, z=z,
        output_path=output_path, p_fp_override=p_fp_override,
    )


def load_config(path: str) -> SweepConfig:
    with open(path, "rb") as fh:
        return parse_config(fh.read())


@dataclass
class SweepRow:
    eta: float
    n_b: float
    d: int
    m: Union[int, float]
    rule: str
    r_or_n: int
    p_tp: float
    p_fp: float
    analytic_energy_transmissions: Optional[float] = None
    analytic_energy_photons: Optional[float] = None
    analytic_error: Optional[float] = None
    analytic_series_error: Optional[float] = None
    analytic_series_tail: Optional[float] = None
    analytic_chernoff_constant: Optional[float] = None
    analytic_classical_lb: Optional[float] = None
    analytic_tmsv_ub: Optional[float] = None
    mc_error: Optional[float] = None
    mc_ci_low: Optional[float] = None
    mc_ci_high: Optional[float] = None
    mc_mean_transmissions: Optional[float] = None
    mc_mean_photons: Optional[float] = None
    seed: Optional[int] = None
    error: str = ""


def _race_r(rule: DecisionRule) -> Optional[int]:
    if isinstance(rule, FirstClick):
        return 1
    if isinstance(rule, RClicks):
        return rule.r
    return None


def _fill_analytics(row: SweepRow, params: ChannelParams, model: ClickModel,
                    rule: DecisionRule, tol: float) -> None:
    d = params.d
    if isinstance(rule, FixedShots):
        energy_t = float(rule.n_s)
    elif isinstance(rule, TruncatedFirstClick):
        energy_t = analytic.truncated_energy(params, model, rule.n_max) / d
    else:
        energy_t = analytic.expected_transmissions(model, _race_r(rule))
    row.analytic_energy_transmissions = energy_t
    row.analytic_energy_photons = energy_t * d
    row.analytic_classical_lb = analytic.classical_lower_bound(params, energy_t)
    row.analytic_tmsv_ub = analytic.tmsv_upper_bound(params, energy_t)

    r = _race_r(rule)
    if r is not None:
        row.analytic_chernoff_constant = analytic.chernoff_constant(model, r)

    if model.p_fp == 0.0:
        if isinstance(rule, FixedShots):
            row.analytic_error = analytic.dv_fixed_shot_error(model, rule.n_s)
        elif isinstance(rule, TruncatedFirstClick):
            row.analytic_error = analytic.truncated_error(model, rule.n_max)
        else:
            row.analytic_error = 0.0
        return

    if isinstance(rule, FirstClick):
        row.analytic_error = analytic.first_click_error_bound(params, model)
    elif isinstance(rule, RClicks):
        row.analytic_error = analytic.r_click_error_bound(params, model, rule.r)
    if r is not None:
        series = analytic.per_position_error_series(model, r, tol=tol)
        row.analytic_series_error = (d - 1) * series.value
        row.analytic_series_tail = (d - 1) * series.truncation_bound


def run_sweep(config: SweepConfig, *, workers: int = 1, with_mc: bool = True) -> list[SweepRow]:
    """Evaluate every grid point; per-row failures land in the row's error column."""
    rows: list[SweepRow] = []
    index = 0
    for m in config.m_grid:
        params = replace(config.base, m=m)
        derived = derive_click_model(params)
        model = (
            derived
            if config.p_fp_override is None
            else ClickModel(p_tp=derived.p_tp, p_fp=config.p_fp_override)
        )
        for spec in config.rule_grid:
            for rule in spec.expand(config.r_grid):
                row = SweepRow(
                    eta=params.eta, n_b=params.n_b, d=params.d, m=m,
                    rule=spec.kind, r_or_n=rule_count(rule),
                    p_tp=model.p_tp, p_fp=model.p_fp,
                )
                row_seed = derive_seed(config.seed, index)
                index += 1
                try:
                    _fill_analytics(row, params, model, rule, config.tol)
                    if with_mc:
                        summary = run_campaign(
                            model, params.d, rule, config.trials, row_seed,
                            workers=workers, z=config.z,
                        )
                        row.mc_error = summary.error_rate
                        row.mc_ci_low = summary.ci_low
                        row.mc_ci_high = summary.ci_high
                        row.mc_mean_transmissions = summary.mean_transmissions
                        row.mc_mean_photons = summary.mean_photons
                        row.seed = row_seed
                except (ValueError, UnsupportedCombination, analytic.FailedToConverge) as e:
                    row.error = str(e)
                rows.append(row)
    return rows


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        if math.isinf(value):
            return "inf"
        return format(value, ".17g")
    return str(value)


def write_csv(rows: list[SweepRow], path: str) -> None:
    """RFC-4180 CSV with the fixed COLUMNS header; 17-significant-digit floats."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(COLUMNS)
        for row in rows:
            writer.writerow([_format_cell(getattr(row, name)) for name in COLUMNS])


def write_json(rows: list[SweepRow], path: str) -> None:
    """JSON mirror of the CSV table."""
    payload = {
        "columns": COLUMNS,
        "rows": [
            {name: _json_cell(getattr(row, name)) for name in COLUMNS} for row in rows
        ],
    }
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=1)
        fh.write("\n")


def _json_cell(value):
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    return value
