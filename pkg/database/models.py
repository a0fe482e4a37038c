"""SQLAlchemy models for the verification run ledger."""

from sqlalchemy import Column, Integer, String, Text, DateTime, ForeignKey
from sqlalchemy.orm import declarative_base, relationship
from datetime import datetime

Base = declarative_base()


class VerificationRun(Base):
    """One `verify` invocation"""
    __tablename__ = 'verification_runs'

    id = Column(Integer, primary_key=True, autoincrement=True)
    seed = Column(Integer, nullable=False)
    trials = Column(Integer, nullable=False)
    max_dim = Column(Integer, nullable=False)
    fingerprint = Column(String(64), nullable=False, index=True)  # sha256 of the config fingerprint
    config_json = Column(Text)  # JSON string of the fingerprint itself
    verdict_digest = Column(String(64), nullable=False)
    case_count = Column(Integer, default=0)
    violation_count = Column(Integer, default=0)
    skip_count = Column(Integer, default=0)
    status = Column(String(50), default='passed')  # passed, violated, drifted
    started_at = Column(DateTime, default=datetime.utcnow)
    completed_at = Column(DateTime)

    # Relationships
    suite_results = relationship("SuiteResult", back_populates="run", cascade="all, delete-orphan")


class SuiteResult(Base):
    """Per-suite counts of one run"""
    __tablename__ = 'suite_summaries'

    id = Column(Integer, primary_key=True, autoincrement=True)
    run_id = Column(Integer, ForeignKey('verification_runs.id'), nullable=False)
    suite = Column(String(50), nullable=False)
    case_count = Column(Integer, default=0)
    violation_count = Column(Integer, default=0)
    skip_count = Column(Integer, default=0)
    error_count = Column(Integer, default=0)
    duration_ms = Column(Integer)

    # Relationships
    run = relationship("VerificationRun", back_populates="suite_results")
