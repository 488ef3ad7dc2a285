"""Seed-indexed random streams.

Stream ``(seed, tag, index)`` is a pure function of its key, so replicate
``index`` draws the same numbers no matter how replicates are scheduled.
``tag`` keeps different consumers of one user seed apart.
"""
import numpy as np

ORACLE = 1
PATTERN = 2
MORAN = 3
NULL_REPLICATE = 4
EXP_PAIR = 5
LEMMA1 = 6
GENERATOR = 7
OUTER_PATTERN = 8
OUTER_NULL = 9


def check_seed(seed):
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)) or seed < 0:
        raise ValueError(f"seed must be a non-negative integer, got {seed!r}")
    return int(seed)


def stream(seed, tag, *index):
    ss = np.random.SeedSequence(check_seed(seed), spawn_key=(tag, *(int(i) for i in index)))
    return np.random.default_rng(ss)


def derive_seed(seed, tag, *index):
    """A 63-bit integer seed for nested seeded calls."""
    ss = np.random.SeedSequence(check_seed(seed), spawn_key=(tag, *(int(i) for i in index)))
    return int(ss.generate_state(1, np.uint64)[0] >> np.uint64(1))
