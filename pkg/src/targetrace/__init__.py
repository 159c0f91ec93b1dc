"""Sequential click-race target finding.

Analytic error/energy expressions for entangled-probe target finding over
D candidate positions, plus a deterministic, counter-based Monte Carlo
simulator of the sequential click race that validates them.
"""

from .analytic import (
    FailedToConverge,
    SeriesResult,
    binomial_cdf,
    chernoff_constant,
    classical_lower_bound,
    dv_fixed_shot_error,
    expected_transmissions,
    first_click_error_bound,
    per_position_error_series,
    r_click_error_bound,
    tmsv_upper_bound,
    truncated_energy,
    truncated_error,
)
from .engine import (
    BACKEND,
    CampaignSummary,
    IncompatibleCampaigns,
    TrialRecord,
    TrialStream,
    Verdict,
    merge_summaries,
    run_campaign,
    run_trial,
    wilson_interval,
)
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
    validate_rule,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CampaignSummary",
    "ChannelParams",
    "ClickModel",
    "DecisionRule",
    "FailedToConverge",
    "FirstClick",
    "FixedShots",
    "INFINITE",
    "IncompatibleCampaigns",
    "RClicks",
    "SeriesResult",
    "TrialRecord",
    "TrialStream",
    "TruncatedFirstClick",
    "UnsupportedCombination",
    "Verdict",
    "binomial_cdf",
    "chernoff_constant",
    "classical_lower_bound",
    "derive_click_model",
    "dv_fixed_shot_error",
    "expected_transmissions",
    "first_click_error_bound",
    "merge_summaries",
    "per_position_error_series",
    "r_click_error_bound",
    "run_campaign",
    "run_trial",
    "tmsv_upper_bound",
    "truncated_energy",
    "truncated_error",
    "validate_rule",
    "wilson_interval",
]
