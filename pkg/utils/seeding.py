"""Deterministic per-trial random streams."""

import zlib

import numpy as np


def suite_key(suite_id: str) -> int:
    return zlib.crc32(suite_id.encode("utf-8"))


def trial_rng(seed: int, suite_id: str, trial: int) -> np.random.Generator:
    """Independent generator for one trial; depends only on (seed, suite, trial)."""
    return np.random.default_rng([seed, suite_key(suite_id), trial])


def trial_seed(seed: int, suite_id: str, trial: int) -> int:
    """A plain integer seed for APIs that take one."""
    return int(trial_rng(seed, suite_id, trial).integers(0, 2**31 - 1))
