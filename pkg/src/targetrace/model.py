"""Scenario parameters, derived click rates, and decision rules.

All types are immutable values and safe to share across workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

INFINITE = math.inf  # symbolic "infinitely many modes"; false positives exactly zero


class UnsupportedCombination(ValueError):
    """Decision rule not analyzable for the given click model."""


def _is_infinite(m) -> bool:
    return isinstance(m, float) and math.isinf(m)


@dataclass(frozen=True)
class ChannelParams:
    """Physical scenario: reflectivity, background noise, positions, modes."""

    eta: float
    n_b: float
    d: int
    m: Union[int, float] = INFINITE

    def __post_init__(self):
        if not 0.0 < self.eta <= 1.0:
            raise ValueError(f"eta must be in (0, 1], got {self.eta}")
        if self.n_b < 0.0:
            raise ValueError(f"n_b must be >= 0, got {self.n_b}")
        if not isinstance(self.d, int) or self.d < 2:
            raise ValueError(f"d must be an integer >= 2, got {self.d}")
        if not _is_infinite(self.m) and (not isinstance(self.m, int) or self.m < 1):
            raise ValueError(f"m must be an integer >= 1 or INFINITE, got {self.m}")

    @property
    def infinite_modes(self) -> bool:
        return _is_infinite(self.m)


@dataclass(frozen=True)
class ClickModel:
    """Per-trial Bernoulli rates: true-positive and per-position false-positive."""

    p_tp: float
    p_fp: float

    def __post_init__(self):
        if not 0.0 < self.p_tp <= 1.0:
            raise ValueError(f"p_tp must be in (0, 1], got {self.p_tp}")
        if not 0.0 <= self.p_fp < 1.0:
            raise ValueError(f"p_fp must be in [0, 1), got {self.p_fp}")


@dataclass(frozen=True)
class FixedShots:
    """Exactly n_s transmissions, then decide; only valid when p_fp = 0."""

    n_s: int

    def __post_init__(self):
        if not isinstance(self.n_s, int) or self.n_s < 1:
            raise ValueError(f"n_s must be an integer >= 1, got {self.n_s}")


@dataclass(frozen=True)
class FirstClick:
    """Transmit until any position registers a click."""


@dataclass(frozen=True)
class RClicks:
    """Transmit until any position accumulates r clicks."""

    r: int

    def __post_init__(self):
        if not isinstance(self.r, int) or self.r < 1:
            raise ValueError(f"r must be an integer >= 1, got {self.r}")


@dataclass(frozen=True)
class TruncatedFirstClick:
    """First-click rule with a transmission budget of n_max."""

    n_max: int

    def __post_init__(self):
        if not isinstance(self.n_max, int) or self.n_max < 1:
            raise ValueError(f"n_max must be an integer >= 1, got {self.n_max}")


DecisionRule = Union[FixedShots, FirstClick, RClicks, TruncatedFirstClick]


def derive_click_model(params: ChannelParams) -> ClickModel:
    """Click rates implied by the channel: p_tp = eta/(1+n_b), p_fp = 1/m.

    1/m is the worst-case per-position false-positive rate and is adopted
    as the operative model rate; m = INFINITE gives p_fp = 0 exactly.
    """
    p_tp = params.eta / (1.0 + params.n_b)
    p_fp = 0.0 if params.infinite_modes else 1.0 / params.m
    return ClickModel(p_tp=p_tp, p_fp=p_fp)


def validate_rule(rule: DecisionRule, model: ClickModel) -> None:
    """Reject rule/model combinations the analysis does not cover.

    The fixed-shot rule has no defined wrong-position verdict once false
    positives are possible, so it is only accepted with p_fp = 0.
    """
    if isinstance(rule, FixedShots) and model.p_fp > 0.0:
        raise UnsupportedCombination(
            "FixedShots requires p_fp = 0 (infinitely many modes); "
            f"got p_fp = {model.p_fp}"
        )


def rule_name(rule: DecisionRule) -> str:
    return {
        FixedShots: "fixed_shots",
        FirstClick: "first_click",
        RClicks: "r_clicks",
        TruncatedFirstClick: "truncated_first_click",
    }[type(rule)]


def rule_count(rule: DecisionRule) -> int:
    """The rule's count parameter (r, n_s or n_max); 1 for FirstClick."""
    if isinstance(rule, FixedShots):
        return rule.n_s
    if isinstance(rule, RClicks):
        return rule.r
    if isinstance(rule, TruncatedFirstClick):
        return rule.n_max
    return 1
