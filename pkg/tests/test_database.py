"""Tests for the run ledger models and connection."""

from datetime import datetime

import pytest
from sqlalchemy import select

import database.connection as connection
from config.settings import SuiteConfig
from database.connection import (
    check_ledger_health,
    close_ledger,
    fingerprint_hash,
    get_session,
    init_ledger,
    latest_run,
    record_run,
)
from database.models import SuiteResult, VerificationRun
from suites.records import CaseResult, SuiteSummary, VerifyReport, verdict_digest


def make_report(verdicts, seed=0):
    cases = [
        CaseResult(suite="gamma", case_id=f"t{i:04d}.identity", verdict=v)
        for i, v in enumerate(verdicts)
    ]
    summaries = [SuiteSummary(suite="gamma", trials=len(cases), cases=cases, duration_ms=3)]
    return VerifyReport(
        config=SuiteConfig(seed=seed, trials=len(cases), suites=["gamma"]).fingerprint(),
        suites=summaries,
        verdict_digest=verdict_digest(summaries),
    )


@pytest.fixture
def ledger(tmp_path):
    """A fresh sqlite ledger per test."""
    init_ledger(f"sqlite:///{tmp_path / 'ledger.db'}")
    yield
    close_ledger()


class TestLedgerModels:
    """Test ledger model classes."""

    def test_verification_run_creation(self):
        """Test creating a VerificationRun instance."""
        run = VerificationRun(
            seed=1,
            trials=10,
            max_dim=4,
            fingerprint="f" * 64,
            verdict_digest="d" * 64,
            status="passed",
        )

        assert run.seed == 1
        assert run.status == "passed"
        assert run.suite_results == []

    def test_suite_result_relationship(self):
        """Test suite results attach to their run."""
        run = VerificationRun(seed=0, trials=1, max_dim=2, fingerprint="f", verdict_digest="d")
        result = SuiteResult(suite="gamma", case_count=3)
        run.suite_results.append(result)

        assert result.run is run


class TestLedgerConnection:
    """Test ledger lifecycle helpers."""

    def test_get_session_uninitialized(self):
        """Test sessions require init_ledger()."""
        close_ledger()

        with pytest.raises(RuntimeError, match="Ledger not initialized"):
            get_session()

    def test_health(self, ledger):
        """Test the health check on a live ledger."""
        assert check_ledger_health() is True

    def test_health_uninitialized(self):
        """Test the health check reports a missing ledger."""
        close_ledger()

        assert check_ledger_health() is False

    def test_close_resets_state(self, tmp_path):
        """Test closing disposes the engine."""
        init_ledger(f"sqlite:///{tmp_path / 'x.db'}")
        close_ledger()

        assert connection._engine is None
        assert connection._session_maker is None

    def test_fingerprint_hash_is_order_independent(self):
        """Test dict key order does not change the hash."""
        assert fingerprint_hash({"a": 1, "b": 2}) == fingerprint_hash({"b": 2, "a": 1})
        assert len(fingerprint_hash({})) == 64


class TestRecordRun:
    """Test run recording and drift detection."""

    def test_passed(self, ledger):
        """Test a clean report is recorded as passed."""
        run, drifted = record_run(make_report(["holds", "skipped"]), started_at=datetime(2024, 1, 1))

        assert not drifted
        assert run.status == "passed"
        assert run.case_count == 2
        assert run.skip_count == 1

        with get_session() as session:
            results = session.scalars(select(SuiteResult)).all()
        assert [r.suite for r in results] == ["gamma"]
        assert results[0].duration_ms == 3

    def test_violated(self, ledger):
        """Test a failing report is recorded as violated."""
        run, _ = record_run(make_report(["holds", "violated"]))

        assert run.status == "violated"
        assert run.violation_count == 1

    def test_repeat_is_not_drift(self, ledger):
        """Test an identical rerun keeps its status."""
        record_run(make_report(["holds", "holds"]))
        run, drifted = record_run(make_report(["holds", "holds"]))

        assert not drifted
        assert run.status == "passed"

    def test_drift(self, ledger):
        """Test a different digest under the same fingerprint is drift."""
        first, _ = record_run(make_report(["holds", "holds"]))
        run, drifted = record_run(make_report(["holds", "skipped"]))

        assert drifted
        assert run.status == "drifted"
        assert latest_run(first.fingerprint).id == run.id

    def test_other_fingerprint_is_independent(self, ledger):
        """Test runs with a different seed never drift against each other."""
        record_run(make_report(["holds", "holds"], seed=1))
        _, drifted = record_run(make_report(["holds", "skipped"], seed=2))

        assert not drifted

    def test_drift_fails_the_report(self, ledger):
        """Test a drifted ledger status turns the exit code to 1."""
        record_run(make_report(["holds"]))
        report = make_report(["skipped"])
        run, _ = record_run(report)
        report.ledger_status = run.status

        assert not report.passed
        assert report.exit_code == 1
