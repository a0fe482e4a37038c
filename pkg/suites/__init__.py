"""Verification suites driven by `verify`."""

from .base_suite import BaseSuite, Trial
from .records import CaseResult, SuiteSummary, VerifyReport, verdict_digest
from .runner import SUITE_CLASSES, SuiteRunner

__all__ = [
    'BaseSuite', 'CaseResult', 'SUITE_CLASSES', 'SuiteRunner', 'SuiteSummary', 'Trial',
    'VerifyReport', 'verdict_digest',
]
