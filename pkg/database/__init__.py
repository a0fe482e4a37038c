"""Run ledger package."""

from .models import Base, SuiteResult, VerificationRun
from .connection import close_ledger, get_session, init_ledger, latest_run, record_run

__all__ = [
    'Base', 'SuiteResult', 'VerificationRun',
    'close_ledger', 'get_session', 'init_ledger', 'latest_run', 'record_run',
]
