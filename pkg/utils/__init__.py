"""Utilities package."""

from .seeding import trial_rng, trial_seed
from .validators import parse_tol_overrides, validate_dimension, validate_suite_ids

__all__ = ['parse_tol_overrides', 'trial_rng', 'trial_seed', 'validate_dimension', 'validate_suite_ids']
