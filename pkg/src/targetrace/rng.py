"""Counter-based random numbers for reproducible parallel Monte Carlo.

Every uniform drawn anywhere in the simulator is a pure function of
(seed, trial, transmission, position).  There is no generator state to
advance, so trials can be evaluated in any order, on any number of
workers, in scalar or vectorized form, and the results are bit-identical.

Construction: two rounds of the splitmix64 finalizer over distinct Weyl
sequences.  A per-trial key is derived from (seed, trial); the j-th draw
of that trial (j = (transmission-1)*d + position) hashes the key again.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
TRIAL_STEP = 0x9E3779B97F4A7C15  # golden-ratio Weyl increment
DRAW_STEP = 0xD1B54A32D192ED03  # second odd increment, decorrelates draw lattice
_INV_2_53 = 1.0 / 9007199254740992.0  # 2**-53


def mix64(x: int) -> int:
    """splitmix64 finalizer: a strong 64-bit bijective mixer."""
    x &= MASK64
    x ^= x >> 30
    x = (x * 0xBF58476D1CE4E5B9) & MASK64
    x ^= x >> 27
    x = (x * 0x94D049BB133111EB) & MASK64
    x ^= x >> 31
    return x


def trial_key(seed: int, trial: int) -> int:
    return mix64((seed + TRIAL_STEP * trial) & MASK64)


def draw_u64(key: int, draw_index: int) -> int:
    return mix64((key + DRAW_STEP * draw_index) & MASK64)


def uniform(seed: int, trial: int, transmission: int, position: int, d: int) -> float:
    """Uniform in [0, 1) for one Bernoulli decision of the click race.

    `transmission` counts from 1, `position` from 0 (0 is the true position).
    """
    j = (transmission - 1) * d + position
    return (draw_u64(trial_key(seed, trial), j) >> 11) * _INV_2_53


def derive_seed(seed: int, index: int) -> int:
    """Independent sub-seed for the index-th campaign of a sweep."""
    return mix64((mix64((seed + DRAW_STEP * (index + 1)) & MASK64) ^ TRIAL_STEP) & MASK64)


# --- vectorized twins (uint64 arrays; wraparound is the point) ---

_NP_TRIAL_STEP = np.uint64(TRIAL_STEP)
_NP_DRAW_STEP = np.uint64(DRAW_STEP)


def mix64_np(x: np.ndarray) -> np.ndarray:
    x = x.astype(np.uint64, copy=True)
    x ^= x >> np.uint64(30)
    x *= np.uint64(0xBF58476D1CE4E5B9)
    x ^= x >> np.uint64(27)
    x *= np.uint64(0x94D049BB133111EB)
    x ^= x >> np.uint64(31)
    return x


def trial_keys_np(seed: int, trials: np.ndarray) -> np.ndarray:
    return mix64_np(np.uint64(seed) + _NP_TRIAL_STEP * trials.astype(np.uint64))


def uniforms_np(keys: np.ndarray, draw_indices) -> np.ndarray:
    """Uniforms for an outer key/draw-index broadcast; shapes must broadcast."""
    j = np.asarray(draw_indices, dtype=np.uint64)  # 0-d ok; scalars would warn on wrap
    v = mix64_np(np.asarray(keys, dtype=np.uint64) + _NP_DRAW_STEP * j)
    return (v >> np.uint64(11)).astype(np.float64) * _INV_2_53
