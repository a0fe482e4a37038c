"""Suite runner that orchestrates every verification suite of a `verify` run."""

import logging
from datetime import datetime
from typing import Dict, List, Optional, Type

from config.settings import SuiteConfig
from services.logger import create_run_logger
from .angles import AnglesSuite
from .base_suite import BaseSuite
from .fixed_range import FixedRangeSuite
from .gamma import GammaSuite
from .metrics import MetricsSuite
from .orbits import OrbitsSuite
from .penrose import PenroseSuite
from .prop35 import Prop35Suite
from .prop57 import Prop57Suite
from .records import CaseResult, SuiteSummary, VerifyReport, verdict_digest
from .remark21 import Remark21Suite
from .rk import RkSuite
from .thm36 import Thm36Suite
from .thm48 import Thm48Suite
from .thm312 import Thm312Suite
from .thm511 import Thm511Suite

logger = logging.getLogger(__name__)

SUITE_CLASSES: Dict[str, Type[BaseSuite]] = {
    cls.name: cls
    for cls in (
        PenroseSuite,
        GammaSuite,
        Remark21Suite,
        Prop35Suite,
        AnglesSuite,
        MetricsSuite,
        RkSuite,
        Thm36Suite,
        Thm312Suite,
        Thm48Suite,
        OrbitsSuite,
        Prop57Suite,
        Thm511Suite,
        FixedRangeSuite,
    )
}


class SuiteRunner:
    """Runs the selected suites in registry order and assembles the report."""

    def __init__(self, suite_config: SuiteConfig):
        suite_config.validate()
        if not suite_config.suites:
            suite_config.suites = list(SUITE_CLASSES)
        unknown = [s for s in suite_config.suites if s not in SUITE_CLASSES]
        if unknown:
            raise ValueError(f"Unknown suite: {', '.join(unknown)}")
        self.suite_config = suite_config
        self.suites: List[BaseSuite] = [
            SUITE_CLASSES[name]() for name in SUITE_CLASSES if name in suite_config.suites
        ]
        self.started_at: Optional[datetime] = None

    def run(self) -> VerifyReport:
        run_logger = create_run_logger(self.suite_config.seed)
        self.started_at = datetime.utcnow()
        run_logger.log_execution_start(f"verify ({len(self.suites)} suites)")

        summaries: List[SuiteSummary] = []
        for suite in self.suites:
            try:
                summaries.append(suite.execute_with_logging(self.suite_config))
            except Exception as e:
                # a suite that cannot even start still reports, as a failure
                run_logger.log_error(suite.name, str(e))
                summaries.append(
                    SuiteSummary(suite=suite.name, trials=0, cases=[CaseResult.error(suite.name, "setup", e)])
                )

        report = VerifyReport(
            config=self.suite_config.fingerprint(),
            suites=summaries,
            verdict_digest=verdict_digest(summaries),
        )
        duration_ms = int((datetime.utcnow() - self.started_at).total_seconds() * 1000)
        run_logger.log_execution_complete("verify", duration_ms)
        logger.info(
            "verify finished: %d cases, %d violations, %d skipped",
            report.case_count,
            report.violation_count,
            report.skip_count,
        )
        return report
