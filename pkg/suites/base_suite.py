"""Base suite class with common functionality."""

import time
from abc import ABC, abstractmethod
from contextlib import contextmanager
from typing import Any, Iterable, Iterator, List, Optional

import numpy as np

from config.settings import ConvergenceThresholds, SuiteConfig, ToleranceConfig, config
from operators.certificates import InequalityCertificate
from operators.errors import OutsideNeighborhoodError, PreconditionError
from services.logger import SuiteLoggerAdapter, get_suite_logger
from utils.seeding import trial_rng
from .records import CaseResult, SuiteSummary


class Trial:
    """One random instance of a suite and the cases it produced."""

    def __init__(
        self,
        suite: str,
        index: int,
        seed: int,
        tol: ToleranceConfig,
        thresholds: ConvergenceThresholds,
        max_dim: int,
        logger: Optional[SuiteLoggerAdapter] = None,
    ):
        self.suite = suite
        self.index = index
        self.seed = seed
        self.rng: np.random.Generator = trial_rng(seed, suite, index)
        self.tol = tol
        self.thresholds = thresholds
        self.max_dim = max_dim
        self.cases: List[CaseResult] = []
        self._logger = logger or SuiteLoggerAdapter(get_suite_logger(suite), seed)

    def case_id(self, label: str) -> str:
        return f"t{self.index:04d}.{label}"

    def certificate(self, label: str, cert: InequalityCertificate, **evidence: Any) -> CaseResult:
        case = CaseResult.from_certificate(self.suite, self.case_id(label), cert, **evidence)
        if case.verdict == "violated":
            self._logger.log_violation(case.case_id, cert.lhs, cert.rhs)
        self.cases.append(case)
        return case

    def certificates(self, label: str, certs: Iterable[InequalityCertificate]) -> None:
        for cert in certs:
            self.certificate(f"{label}.{cert.name}", cert)

    def bound(self, label: str, lhs: float, rhs: float, **evidence: Any) -> CaseResult:
        """lhs ≤ rhs with the run's eq_tol margin."""
        return self.certificate(label, InequalityCertificate.compare(label, lhs, rhs, self.tol), **evidence)

    def check(self, label: str, ok: bool, **evidence: Any) -> CaseResult:
        case = CaseResult.check(self.suite, self.case_id(label), bool(ok), **evidence)
        if case.verdict == "violated":
            self._logger.warning(f"VIOLATION {case.case_id}: {evidence}")
        self.cases.append(case)
        return case

    def report(self, label: str, **evidence: Any) -> CaseResult:
        case = CaseResult.reported(self.suite, self.case_id(label), **evidence)
        self.cases.append(case)
        return case

    @contextmanager
    def guard(self, label: str) -> Iterator[None]:
        """Unmet preconditions and out-of-neighborhood samples become a skipped case, anything else an error case."""
        try:
            yield
        except (PreconditionError, OutsideNeighborhoodError) as e:
            self._logger.debug(f"skipped {self.case_id(label)}: {e}")
            self.cases.append(CaseResult.skipped(self.suite, self.case_id(label), str(e)))
        except Exception as e:
            self._logger.error(f"ERROR in {self.case_id(label)}: {type(e).__name__}: {e}")
            self.cases.append(CaseResult.error(self.suite, self.case_id(label), e))


class BaseSuite(ABC):
    """Base class for all verification suites."""

    name: str = ""

    def __init__(self, name: Optional[str] = None):
        self.name = name or self.name
        self.option = config.get_suite_option(self.name)
        self.logger = get_suite_logger(self.name)

    def trial_count(self, suite_config: SuiteConfig) -> int:
        return self.option.trials_for(suite_config.trials)

    def execute_with_logging(self, suite_config: SuiteConfig) -> SuiteSummary:
        """Run every trial of the suite with timing and logging."""
        adapter = SuiteLoggerAdapter(self.logger, suite_config.seed)
        start = time.perf_counter()
        adapter.log_execution_start(self.name)

        summary = self.execute(suite_config, adapter)

        summary.duration_ms = int((time.perf_counter() - start) * 1000)
        adapter.log_execution_complete(self.name, summary.duration_ms)
        if summary.violation_count or summary.error_count:
            adapter.warning(
                f"{self.name}: {summary.violation_count} violations, {summary.error_count} errors "
                f"in {summary.case_count} cases"
            )
        return summary

    def execute(self, suite_config: SuiteConfig, adapter: SuiteLoggerAdapter) -> SuiteSummary:
        trials = self.trial_count(suite_config)
        cases: List[CaseResult] = []
        for index in range(trials):
            trial = Trial(
                self.name,
                index,
                suite_config.seed,
                suite_config.tolerances,
                suite_config.thresholds,
                suite_config.max_dim,
                adapter,
            )
            with trial.guard("trial"):
                self.run_trial(trial)
            cases.extend(trial.cases)
        return SuiteSummary(suite=self.name, trials=trials, cases=cases)

    @abstractmethod
    def run_trial(self, trial: Trial) -> None:
        """Draw one random instance and record its cases on the trial.

        Args:
            trial: per-trial generator, tolerances and case sink
        """
        pass


def conditioning(norm: float, pinv_norm: float) -> float:
    """(1 + ‖A‖)(1 + ‖A†‖), the scale that floating-point residuals of A and A† grow with."""
    return (1.0 + norm) * (1.0 + pinv_norm)
