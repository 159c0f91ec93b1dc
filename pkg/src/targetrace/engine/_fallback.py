"""Vectorized pure-Python trial loop, bit-identical to the compiled core.

Trials advance transmission by transmission in lockstep; finished trials
are compacted out.  Because every uniform is a pure function of
(seed, trial, transmission, position), batching order cannot change any
outcome relative to the per-trial loop in `_core`.

Verdict codes (shared ABI): 0 = correct, 1 = wrong position, 2 = tie,
3 = exhausted.
"""

from __future__ import annotations

import numpy as np

from ..rng import trial_keys_np, uniforms_np

_CORRECT, _WRONG, _TIE, _EXHAUSTED = 0, 1, 2, 3


def simulate_block(p_tp, p_fp, d, kind, threshold, cap, seed, start, count):
    """Same contract as targetrace.engine._core.simulate_block."""
    verdicts = np.empty(count, dtype=np.uint8)
    transmissions = np.empty(count, dtype=np.int64)
    trials = np.arange(start, start + count, dtype=np.uint64)
    keys = trial_keys_np(seed, trials)

    if kind == 1:
        clicked = np.zeros(count, dtype=bool)
        idx = np.arange(count)
        keys_a = keys
        for n in range(1, cap + 1):
            u = uniforms_np(keys_a, np.uint64((n - 1) * d))
            hit = u < p_tp
            clicked[idx[hit]] = True
            idx = idx[~hit]
            keys_a = keys_a[~hit]
            if idx.size == 0:
                break
        verdicts[:] = np.where(clicked, _CORRECT, _EXHAUSTED)
        transmissions[:] = cap
        return verdicts, transmissions

    # Race: when p_fp = 0 the false positions can never click, so only the
    # true position's column is drawn (identical outcomes, fewer draws).
    ncols = d if p_fp > 0.0 else 1
    p_row = np.full(ncols, p_fp)
    p_row[0] = p_tp
    idx = np.arange(count)
    keys_a = keys
    counters = np.zeros((count, ncols), dtype=np.int64)
    n = 0
    while idx.size:
        if cap > 0 and n >= cap:
            verdicts[idx] = _EXHAUSTED
            transmissions[idx] = cap
            break
        n += 1
        cols = np.uint64((n - 1) * d) + np.arange(ncols, dtype=np.uint64)
        u = uniforms_np(keys_a[:, None], cols[None, :])
        counters += u < p_row
        hit = counters >= threshold
        nhit = hit.sum(axis=1)
        done = nhit > 0
        if done.any():
            verdicts[idx[done]] = np.where(
                nhit[done] >= 2, _TIE, np.where(hit[done, 0], _CORRECT, _WRONG)
            )
            transmissions[idx[done]] = n
            keep = ~done
            idx = idx[keep]
            keys_a = keys_a[keep]
            counters = counters[keep]
    return verdicts, transmissions
