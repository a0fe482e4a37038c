"""Uniform verdict record for inequality checks."""

from typing import Optional

from pydantic import BaseModel, ConfigDict

from config.settings import ToleranceConfig, resolve_tolerances


class InequalityCertificate(BaseModel):
    """lhs <= rhs checked with an eq_tol margin; slack = rhs - lhs."""

    model_config = ConfigDict(frozen=True)

    name: str
    lhs: float
    rhs: float
    holds: bool
    slack: float
    skipped: bool = False
    note: Optional[str] = None
    inputs_digest: Optional[str] = None

    @classmethod
    def compare(
        cls,
        name: str,
        lhs: float,
        rhs: float,
        tol: Optional[ToleranceConfig] = None,
        inputs_digest: Optional[str] = None,
        note: Optional[str] = None,
    ) -> "InequalityCertificate":
        tol = resolve_tolerances(tol)
        lhs, rhs = float(lhs), float(rhs)
        return cls(
            name=name,
            lhs=lhs,
            rhs=rhs,
            holds=bool(lhs <= rhs + tol.eq_tol),
            slack=rhs - lhs,
            inputs_digest=inputs_digest,
            note=note,
        )

    @classmethod
    def skip(
        cls, name: str, reason: str, inputs_digest: Optional[str] = None
    ) -> "InequalityCertificate":
        """A certificate whose hypotheses are not met; never a violation."""
        return cls(
            name=name,
            lhs=0.0,
            rhs=0.0,
            holds=True,
            slack=0.0,
            skipped=True,
            note=reason,
            inputs_digest=inputs_digest,
        )

    @property
    def violated(self) -> bool:
        return not self.skipped and not self.holds
