# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled trial loop for the sequential click race.

Verdict codes (shared ABI with the pure-Python fallback):
0 = correct, 1 = wrong position, 2 = tie, 3 = exhausted.
"""

import numpy as np

from libc.stdint cimport int64_t, uint8_t, uint64_t

cdef uint64_t TRIAL_STEP = <uint64_t>0x9E3779B97F4A7C15
cdef uint64_t DRAW_STEP = <uint64_t>0xD1B54A32D192ED03
cdef double INV_2_53 = 1.0 / 9007199254740992.0


cdef inline uint64_t mix64(uint64_t x) noexcept nogil:
    x ^= x >> 30
    x *= <uint64_t>0xBF58476D1CE4E5B9
    x ^= x >> 27
    x *= <uint64_t>0x94D049BB133111EB
    x ^= x >> 31
    return x


cdef inline double u01(uint64_t key, uint64_t j) noexcept nogil:
    return <double>(mix64(key + DRAW_STEP * j) >> 11) * INV_2_53


def simulate_block(double p_tp, double p_fp, Py_ssize_t d, int kind,
                   int64_t threshold, int64_t cap,
                   unsigned long long seed, unsigned long long start,
                   Py_ssize_t count):
    """Run `count` independent trials starting at absolute index `start`.

    kind 0: race to `threshold` clicks, optional transmission budget `cap`
            (0 = unlimited); kind 1: exactly `cap` transmissions, success is
            at least one true-position click (requires p_fp = 0 upstream).
    Returns (verdicts uint8, transmissions int64).
    """
    verdicts = np.empty(count, dtype=np.uint8)
    transmissions = np.empty(count, dtype=np.int64)
    counters = np.zeros(d, dtype=np.int64)
    cdef uint8_t[::1] vout = verdicts
    cdef int64_t[::1] tout = transmissions
    cdef int64_t[::1] c = counters
    cdef Py_ssize_t t, i
    cdef int64_t n
    cdef uint64_t key, j0
    cdef int reached, correct_reached, clicked

    with nogil:
        for t in range(count):
            key = mix64(seed + TRIAL_STEP * (start + <uint64_t>t))
            if kind == 1:
                clicked = 0
                for n in range(1, cap + 1):
                    if u01(key, <uint64_t>(n - 1) * <uint64_t>d) < p_tp:
                        clicked = 1
                        break
                vout[t] = 0 if clicked else 3
                tout[t] = cap
                continue
            for i in range(d):
                c[i] = 0
            n = 0
            while True:
                if cap > 0 and n >= cap:
                    vout[t] = 3
                    tout[t] = cap
                    break
                n += 1
                j0 = <uint64_t>(n - 1) * <uint64_t>d
                reached = 0
                correct_reached = 0
                if u01(key, j0) < p_tp:
                    c[0] += 1
                    if c[0] >= threshold:
                        reached += 1
                        correct_reached = 1
                if p_fp > 0.0:
                    for i in range(1, d):
                        if u01(key, j0 + <uint64_t>i) < p_fp:
                            c[i] += 1
                            if c[i] >= threshold:
                                reached += 1
                if reached > 0:
                    vout[t] = 2 if reached >= 2 else (0 if correct_reached else 1)
                    tout[t] = n
                    break
    return verdicts, transmissions
