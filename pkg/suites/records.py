"""Pydantic records produced by the verification suites."""

import hashlib
import json
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field, computed_field

from operators.certificates import InequalityCertificate

Verdict = Literal["holds", "violated", "skipped", "reported", "error"]
FAILING_VERDICTS = ("violated", "error")


class CaseResult(BaseModel):
    """One checked statement on one random instance."""

    suite: str
    case_id: str
    lhs: Optional[float] = None
    rhs: Optional[float] = None
    slack: Optional[float] = None
    verdict: Verdict
    evidence: Dict[str, Any] = Field(default_factory=dict)

    @classmethod
    def from_certificate(
        cls, suite: str, case_id: str, cert: InequalityCertificate, **evidence: Any
    ) -> "CaseResult":
        if cert.skipped:
            verdict = "skipped"
        else:
            verdict = "holds" if cert.holds else "violated"
        payload: Dict[str, Any] = {"certificate": cert.name}
        if cert.note:
            payload["note"] = cert.note
        if cert.inputs_digest:
            payload["inputs_digest"] = cert.inputs_digest
        payload.update(evidence)
        return cls(
            suite=suite,
            case_id=case_id,
            lhs=cert.lhs,
            rhs=cert.rhs,
            slack=cert.slack,
            verdict=verdict,
            evidence=payload,
        )

    @classmethod
    def check(cls, suite: str, case_id: str, ok: bool, **evidence: Any) -> "CaseResult":
        """A yes/no statement (an equivalence, an agreement) without an inequality."""
        return cls(suite=suite, case_id=case_id, verdict="holds" if ok else "violated", evidence=evidence)

    @classmethod
    def reported(cls, suite: str, case_id: str, **evidence: Any) -> "CaseResult":
        return cls(suite=suite, case_id=case_id, verdict="reported", evidence=evidence)

    @classmethod
    def skipped(cls, suite: str, case_id: str, reason: str) -> "CaseResult":
        return cls(suite=suite, case_id=case_id, verdict="skipped", evidence={"reason": reason})

    @classmethod
    def error(cls, suite: str, case_id: str, exc: BaseException) -> "CaseResult":
        return cls(
            suite=suite,
            case_id=case_id,
            verdict="error",
            evidence={"error_type": type(exc).__name__, "error": str(exc)},
        )

    @property
    def failed(self) -> bool:
        return self.verdict in FAILING_VERDICTS


class SuiteSummary(BaseModel):
    suite: str
    trials: int
    cases: List[CaseResult] = Field(default_factory=list)
    duration_ms: Optional[int] = None

    @computed_field  # type: ignore[misc]
    @property
    def case_count(self) -> int:
        return len(self.cases)

    @computed_field  # type: ignore[misc]
    @property
    def violation_count(self) -> int:
        return sum(1 for c in self.cases if c.verdict == "violated")

    @computed_field  # type: ignore[misc]
    @property
    def error_count(self) -> int:
        return sum(1 for c in self.cases if c.verdict == "error")

    @computed_field  # type: ignore[misc]
    @property
    def skip_count(self) -> int:
        return sum(1 for c in self.cases if c.verdict == "skipped")


def verdict_digest(suites: List[SuiteSummary]) -> str:
    """sha256 over the ordered (suite, case_id, verdict) triples."""
    triples = [[c.suite, c.case_id, c.verdict] for s in suites for c in s.cases]
    blob = json.dumps(triples, separators=(",", ":"), ensure_ascii=True)
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


class VerifyReport(BaseModel):
    """Everything one `verify` run produced."""

    config: Dict[str, Any]
    suites: List[SuiteSummary] = Field(default_factory=list)
    verdict_digest: str = ""
    ledger_status: Optional[str] = None

    @computed_field  # type: ignore[misc]
    @property
    def case_count(self) -> int:
        return sum(s.case_count for s in self.suites)

    @computed_field  # type: ignore[misc]
    @property
    def violation_count(self) -> int:
        return sum(s.violation_count + s.error_count for s in self.suites)

    @computed_field  # type: ignore[misc]
    @property
    def skip_count(self) -> int:
        return sum(s.skip_count for s in self.suites)

    @property
    def passed(self) -> bool:
        return self.violation_count == 0 and self.ledger_status != "drifted"

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1
