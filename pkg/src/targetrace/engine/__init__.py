"""Deterministic Monte Carlo of the sequential click race.

The per-trial loop lives in a compiled Cython core (`_core`); a vectorized
numpy fallback (`_fallback`) with identical outputs is selected at import
when the extension is unavailable.  Set TARGETRACE_BACKEND=numpy|cython to
force a choice.  Campaign results are a pure function of (config, seed,
trials) for any worker count, because every random draw is counter-based.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from ..model import (
    ClickModel,
    DecisionRule,
    FirstClick,
    FixedShots,
    RClicks,
    TruncatedFirstClick,
    validate_rule,
)

_requested = os.environ.get("TARGETRACE_BACKEND")
if _requested not in (None, "", "cython", "numpy"):
    raise ImportError(f"TARGETRACE_BACKEND must be 'cython' or 'numpy', got {_requested!r}")
if _requested == "numpy":
    from . import _fallback as _kernel

    BACKEND = "numpy"
else:
    try:
        from . import _core as _kernel  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        if _requested == "cython":
            raise
        from . import _fallback as _kernel

        BACKEND = "numpy"

_BLOCK = 1 << 16


class IncompatibleCampaigns(ValueError):
    """Summaries with different configurations or non-adjacent trial ranges."""


class Verdict(IntEnum):
    CORRECT = 0
    WRONG_POSITION = 1
    TIE = 2
    EXHAUSTED = 3


@dataclass(frozen=True)
class TrialStream:
    """Deterministic random stream identity for a single trial."""

    seed: int
    trial_index: int = 0


@dataclass(frozen=True)
class TrialRecord:
    verdict: Verdict
    transmissions: int
    photons: int


def wilson_interval(successes: int, trials: int, z: float = 1.96) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion; (0, 1) when trials = 0."""
    if z <= 0:
        raise ValueError(f"z must be > 0, got {z}")
    if trials == 0:
        return (0.0, 1.0)
    phat = successes / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    center = (phat + z2 / (2.0 * trials)) / denom
    margin = z / denom * math.sqrt(phat * (1.0 - phat) / trials + z2 / (4.0 * trials * trials))
    return (max(0.0, center - margin), min(1.0, center + margin))


@dataclass(frozen=True)
class CampaignSummary:
    """Pooled trial statistics; integer sums are exact, so merging is associative."""

    model: ClickModel
    rule: DecisionRule
    d: int
    seed: int
    z: float
    trial_start: int
    trials: int
    n_correct: int
    n_wrong_position: int
    n_tie: int
    n_exhausted: int
    sum_transmissions: int
    sum_transmissions_sq: int
    errors: int
    error_rate: float
    ci_low: float
    ci_high: float
    mean_transmissions: float
    mean_photons: float

    @classmethod
    def from_counts(
        cls,
        *,
        model: ClickModel,
        rule: DecisionRule,
        d: int,
        seed: int,
        z: float,
        trial_start: int,
        counts: tuple[int, int, int, int],
        sum_transmissions: int,
        sum_transmissions_sq: int,
    ) -> "CampaignSummary":
        n_correct, n_wrong, n_tie, n_exhausted = counts
        trials = n_correct + n_wrong + n_tie + n_exhausted
        errors = n_wrong + n_tie + n_exhausted
        ci_low, ci_high = wilson_interval(errors, trials, z)
        mean_t = sum_transmissions / trials if trials else 0.0
        return cls(
            model=model,
            rule=rule,
            d=d,
            seed=seed,
            z=z,
            trial_start=trial_start,
            trials=trials,
            n_correct=n_correct,
            n_wrong_position=n_wrong,
            n_tie=n_tie,
            n_exhausted=n_exhausted,
            sum_transmissions=sum_transmissions,
            sum_transmissions_sq=sum_transmissions_sq,
            errors=errors,
            error_rate=errors / trials if trials else 0.0,
            ci_low=ci_low,
            ci_high=ci_high,
            mean_transmissions=mean_t,
            mean_photons=mean_t * d,
        )

    @classmethod
    def empty(
        cls, model: ClickModel, rule: DecisionRule, d: int, seed: int, z: float = 1.96
    ) -> "CampaignSummary":
        return cls.from_counts(
            model=model, rule=rule, d=d, seed=seed, z=z, trial_start=0,
            counts=(0, 0, 0, 0), sum_transmissions=0, sum_transmissions_sq=0,
        )

    def mean_transmissions_interval(self) -> tuple[float, float]:
        """Normal-approximation interval for the mean transmission count."""
        if self.trials < 2:
            return (self.mean_transmissions, self.mean_transmissions)
        var = (
            self.sum_transmissions_sq - self.sum_transmissions**2 / self.trials
        ) / (self.trials - 1)
        sem = math.sqrt(max(var, 0.0) / self.trials)
        return (self.mean_transmissions - self.z * sem, self.mean_transmissions + self.z * sem)

    def mean_photons_interval(self) -> tuple[float, float]:
        lo, hi = self.mean_transmissions_interval()
        return (lo * self.d, hi * self.d)


def _kernel_args(rule: DecisionRule) -> tuple[int, int, int]:
    # (kind, threshold, cap); kind 0 = race, 1 = fixed shots
    if isinstance(rule, FixedShots):
        return (1, 1, rule.n_s)
    if isinstance(rule, FirstClick):
        return (0, 1, 0)
    if isinstance(rule, RClicks):
        return (0, rule.r, 0)
    if isinstance(rule, TruncatedFirstClick):
        return (0, 1, rule.n_max)
    raise TypeError(f"unknown decision rule: {rule!r}")


def _block_stats(args) -> tuple[int, int, int, int, int, int]:
    p_tp, p_fp, d, kind, threshold, cap, seed, start, count = args
    verdicts, transmissions = _kernel.simulate_block(
        p_tp, p_fp, d, kind, threshold, cap, seed, start, count
    )
    c = np.bincount(verdicts, minlength=4)
    return (
        int(c[0]), int(c[1]), int(c[2]), int(c[3]),
        int(transmissions.sum()), int(np.dot(transmissions, transmissions)),
    )


def run_trial(model: ClickModel, d: int, rule: DecisionRule, stream: TrialStream) -> TrialRecord:
    """Simulate one trial of the race under `rule`; position 0 is the target."""
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    validate_rule(rule, model)
    kind, threshold, cap = _kernel_args(rule)
    verdicts, transmissions = _kernel.simulate_block(
        model.p_tp, model.p_fp, d, kind, threshold, cap, stream.seed, stream.trial_index, 1
    )
    n = int(transmissions[0])
    return TrialRecord(verdict=Verdict(int(verdicts[0])), transmissions=n, photons=n * d)


def run_campaign(
    model: ClickModel,
    d: int,
    rule: DecisionRule,
    trials: int,
    seed: int,
    *,
    workers: int = 1,
    z: float = 1.96,
    trial_start: int = 0,
) -> CampaignSummary:
    """Aggregate `trials` independent trials; bit-identical for any `workers`.

    Trial i draws only from the counter-based stream (seed, trial_start + i),
    and per-block integer statistics are pooled exactly, so scheduling cannot
    influence the result.
    """
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    validate_rule(rule, model)
    kind, threshold, cap = _kernel_args(rule)
    tasks = []
    offset = 0
    while offset < trials:
        count = min(_BLOCK, trials - offset)
        tasks.append(
            (model.p_tp, model.p_fp, d, kind, threshold, cap, seed, trial_start + offset, count)
        )
        offset += count
    if workers == 1 or len(tasks) == 1:
        results = [_block_stats(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=min(workers, len(tasks))) as pool:
            results = list(pool.map(_block_stats, tasks))
    counts = tuple(sum(r[i] for r in results) for i in range(4))
    return CampaignSummary.from_counts(
        model=model, rule=rule, d=d, seed=seed, z=z, trial_start=trial_start,
        counts=counts,
        sum_transmissions=sum(r[4] for r in results),
        sum_transmissions_sq=sum(r[5] for r in results),
    )


def merge_summaries(a: CampaignSummary, b: CampaignSummary) -> CampaignSummary:
    """Pool two summaries of the same campaign configuration.

    Requires identical (model, rule, d, seed, z) and adjacent trial ranges
    (in either order); an empty summary is a merge identity.
    """
    for field in ("model", "rule", "d", "seed", "z"):
        if getattr(a, field) != getattr(b, field):
            raise IncompatibleCampaigns(
                f"{field} differs: {getattr(a, field)!r} != {getattr(b, field)!r}"
            )
    if a.trials == 0:
        start = b.trial_start
    elif b.trials == 0:
        start = a.trial_start
    elif a.trial_start + a.trials == b.trial_start:
        start = a.trial_start
    elif b.trial_start + b.trials == a.trial_start:
        start = b.trial_start
    else:
        raise IncompatibleCampaigns(
            f"trial ranges not adjacent: [{a.trial_start}, {a.trial_start + a.trials}) "
            f"and [{b.trial_start}, {b.trial_start + b.trials})"
        )
    return CampaignSummary.from_counts(
        model=a.model, rule=a.rule, d=a.d, seed=a.seed, z=a.z, trial_start=start,
        counts=(
            a.n_correct + b.n_correct,
            a.n_wrong_position + b.n_wrong_position,
            a.n_tie + b.n_tie,
            a.n_exhausted + b.n_exhausted,
        ),
        sum_transmissions=a.sum_transmissions + b.sum_transmissions,
        sum_transmissions_sq=a.sum_transmissions_sq + b.sum_transmissions_sq,
    )
