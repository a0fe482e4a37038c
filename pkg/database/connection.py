"""Run ledger: engine/session helpers and run recording."""

import hashlib
import json
import logging
from datetime import datetime
from typing import Any, Dict, Optional, Tuple

from sqlalchemy import create_engine, select, text
from sqlalchemy.orm import Session, sessionmaker

from .models import Base, SuiteResult, VerificationRun

logger = logging.getLogger("ledger")

# Global ledger engine and session factory
_engine = None
_session_maker: Optional[sessionmaker] = None


def init_ledger(url: str = "sqlite:///crlab_ledger.db") -> None:
    """Initialize the ledger engine and create all tables."""
    global _engine, _session_maker

    if _engine is not None:
        close_ledger()

    _engine = create_engine(url, echo=False, pool_pre_ping=True)
    _session_maker = sessionmaker(_engine, expire_on_commit=False)
    Base.metadata.create_all(_engine)
    logger.info("Ledger initialized at %s", url)


def get_session() -> Session:
    """Get a ledger session."""
    if _session_maker is None:
        raise RuntimeError("Ledger not initialized. Call init_ledger() first.")

    return _session_maker()


def close_ledger() -> None:
    """Dispose of the ledger engine."""
    global _engine, _session_maker
    if _engine is not None:
        _engine.dispose()
        _engine = None
        _session_maker = None
        logger.info("Ledger connection closed")


def check_ledger_health() -> bool:
    try:
        with get_session() as session:
            session.execute(text("SELECT 1"))
        return True
    except Exception as e:
        logger.error(f"Ledger health check failed: {e}")
        return False


def fingerprint_hash(fingerprint: Dict[str, Any]) -> str:
    blob = json.dumps(fingerprint, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def latest_run(fingerprint: str) -> Optional[VerificationRun]:
    """Most recent run recorded for a config fingerprint hash."""
    with get_session() as session:
        stmt = (
            select(VerificationRun)
            .where(VerificationRun.fingerprint == fingerprint)
            .order_by(VerificationRun.id.desc())
            .limit(1)
        )
        return session.scalars(stmt).first()


def record_run(report: Any, started_at: Optional[datetime] = None) -> Tuple[VerificationRun, bool]:
    """Store a verify report; returns the row and whether it drifted.

    A run drifts when the latest run with the same fingerprint produced a
    different verdict digest.
    """
    fp = report.config
    fp_hash = fingerprint_hash(fp)
    previous = latest_run(fp_hash)
    drifted = previous is not None and previous.verdict_digest != report.verdict_digest

    if drifted:
        status = "drifted"
    elif report.violation_count:
        status = "violated"
    else:
        status = "passed"

    run = VerificationRun(
        seed=fp["seed"],
        trials=fp["trials"],
        max_dim=fp["max_dim"],
        fingerprint=fp_hash,
        config_json=json.dumps(fp, sort_keys=True),
        verdict_digest=report.verdict_digest,
        case_count=report.case_count,
        violation_count=report.violation_count,
        skip_count=report.skip_count,
        status=status,
        started_at=started_at or datetime.utcnow(),
        completed_at=datetime.utcnow(),
    )
    for summary in report.suites:
        run.suite_results.append(
            SuiteResult(
                suite=summary.suite,
                case_count=summary.case_count,
                violation_count=summary.violation_count,
                skip_count=summary.skip_count,
                error_count=summary.error_count,
                duration_ms=summary.duration_ms,
            )
        )

    with get_session() as session:
        session.add(run)
        session.commit()
        session.refresh(run)

    if drifted:
        logger.error(
            "verdict digest drifted for fingerprint %s: %s -> %s (run %d)",
            fp_hash[:12], previous.verdict_digest[:12], report.verdict_digest[:12], run.id,
        )
    else:
        logger.info("recorded run %d with status %s", run.id, status)
    return run, drifted
