"""Tests for the verification suites, their records and the runner."""

import pytest

from config.settings import ToleranceConfig, config
from operators.certificates import InequalityCertificate
from operators.errors import OutsideNeighborhoodError, PreconditionError
from suites.base_suite import BaseSuite, Trial, conditioning
from suites.gamma import GammaSuite
from suites.records import CaseResult, SuiteSummary, VerifyReport, verdict_digest
from suites.runner import SUITE_CLASSES, SuiteRunner
from suites.thm48 import trial_kind


def make_trial(index=3):
    return Trial("gamma", index, 0, ToleranceConfig(), config.suite_config().thresholds, 3)


class TestCaseResult:
    """Test case records."""

    def test_from_certificate(self):
        """Test verdicts follow the certificate."""
        holds = CaseResult.from_certificate("s", "c", InequalityCertificate.compare("x", 1.0, 2.0))
        violated = CaseResult.from_certificate("s", "c", InequalityCertificate.compare("x", 3.0, 2.0))
        skipped = CaseResult.from_certificate("s", "c", InequalityCertificate.skip("x", "why"))

        assert holds.verdict == "holds"
        assert violated.verdict == "violated" and violated.failed
        assert skipped.verdict == "skipped" and not skipped.failed
        assert skipped.evidence["note"] == "why"

    def test_error_evidence(self):
        """Test error cases keep the exception type and message."""
        case = CaseResult.error("s", "c", ValueError("bad"))

        assert case.failed
        assert case.evidence == {"error_type": "ValueError", "error": "bad"}

    def test_check_and_report(self):
        """Test yes/no checks and reported values."""
        assert CaseResult.check("s", "c", True).verdict == "holds"
        assert CaseResult.check("s", "c", False).verdict == "violated"
        assert CaseResult.reported("s", "c", gap=0.5).evidence == {"gap": 0.5}


class TestReport:
    """Test summaries, reports and the verdict digest."""

    def _summary(self, verdicts):
        cases = [CaseResult(suite="gamma", case_id=f"t{i:04d}.x", verdict=v) for i, v in enumerate(verdicts)]
        return SuiteSummary(suite="gamma", trials=len(cases), cases=cases)

    def test_counts(self):
        """Test per-suite counters."""
        summary = self._summary(["holds", "violated", "error", "skipped", "reported"])

        assert summary.case_count == 5
        assert summary.violation_count == 1
        assert summary.error_count == 1
        assert summary.skip_count == 1

    def test_errors_fail_the_run(self):
        """Test error cases count as violations."""
        report = VerifyReport(config={}, suites=[self._summary(["holds", "error"])])

        assert report.violation_count == 1
        assert report.exit_code == 1

    def test_skips_pass(self):
        """Test skipped and reported cases do not fail the run."""
        report = VerifyReport(config={}, suites=[self._summary(["holds", "skipped", "reported"])])

        assert report.passed
        assert report.exit_code == 0

    def test_digest(self):
        """Test the digest depends on verdicts and nothing else."""
        first = verdict_digest([self._summary(["holds", "skipped"])])
        second = verdict_digest([self._summary(["holds", "skipped"])])
        third = verdict_digest([self._summary(["skipped", "holds"])])

        assert first == second
        assert first != third
        assert len(first) == 64


class TestTrial:
    """Test the per-trial case sink."""

    def test_case_id(self):
        """Test case ids carry the zero-padded trial index."""
        assert make_trial(3).case_id("gamma_abs") == "t0003.gamma_abs"

    def test_bound(self):
        """Test bounds use the eq_tol margin."""
        trial = make_trial()
        trial.bound("ok", 1.0 + 1e-12, 1.0)
        trial.bound("bad", 2.0, 1.0)

        assert [c.verdict for c in trial.cases] == ["holds", "violated"]

    @pytest.mark.parametrize("exc", [PreconditionError("p"), OutsideNeighborhoodError("o")])
    def test_guard_skips(self, exc):
        """Test unmet hypotheses become skipped cases."""
        trial = make_trial()
        with trial.guard("step"):
            raise exc

        assert trial.cases[-1].verdict == "skipped"
        assert trial.cases[-1].case_id == "t0003.step"

    def test_guard_errors(self):
        """Test other exceptions become error cases."""
        trial = make_trial()
        with trial.guard("step"):
            raise ZeroDivisionError("boom")

        assert trial.cases[-1].verdict == "error"
        assert trial.cases[-1].evidence["error_type"] == "ZeroDivisionError"

    def test_violation_is_logged(self, mocker):
        """Test violations reach the logger adapter."""
        trial = make_trial()
        log_violation = mocker.patch.object(trial._logger, "log_violation")
        trial.bound("bad", 2.0, 1.0)

        log_violation.assert_called_once_with("t0003.bad", 2.0, 1.0)

    def test_rng_is_deterministic(self):
        """Test each trial has its own reproducible stream."""
        assert make_trial(1).rng.integers(0, 10**9) == make_trial(1).rng.integers(0, 10**9)

    def test_conditioning(self):
        """Test the residual scale (1 + ‖A‖)(1 + ‖A†‖)."""
        assert conditioning(1.0, 3.0) == 8.0


class TestBaseSuite:
    """Test suite execution."""

    def test_trial_errors_are_cases(self, small_suite_config):
        """Test an exception inside a trial becomes an error case, not a crash."""

        class Broken(BaseSuite):
            name = "gamma"

            def run_trial(self, trial):
                raise RuntimeError("broken")

        summary = Broken().execute_with_logging(small_suite_config)

        assert summary.trials == 4
        assert summary.error_count == 4
        assert summary.duration_ms is not None

    def test_trial_count_uses_share(self, small_suite_config):
        """Test suites spend their share of the budget."""
        suite = SUITE_CLASSES["thm48"]()

        assert suite.trial_count(small_suite_config) == 1

    def test_unregistered_name(self):
        """Test suites must be registered in the configuration."""

        class Unknown(BaseSuite):
            name = "nope"

            def run_trial(self, trial):
                pass

        with pytest.raises(ValueError):
            Unknown()

    def test_thm48_kinds_cycle(self):
        """Test even trials converge and odd trials cycle the divergent kinds."""
        kinds = [trial_kind(i).value for i in range(6)]

        assert kinds == [
            "rank_preserving", "rank_dropping", "rank_preserving",
            "isometry_flip", "rank_preserving", "pinv_blowup",
        ]


class TestSuiteRunner:
    """Test orchestration."""

    def test_registry_order(self):
        """Test the registry matches the configured suites."""
        assert list(SUITE_CLASSES) == list(config.suites)

    def test_unknown_suite(self, small_suite_config):
        """Test unknown suites are rejected up front."""
        small_suite_config.suites = ["nope"]

        with pytest.raises(ValueError, match="Unknown suite"):
            SuiteRunner(small_suite_config)

    def test_runs_selected_suites_in_registry_order(self, small_suite_config):
        """Test selection order does not change run order."""
        small_suite_config.suites = ["gamma", "penrose"]
        report = SuiteRunner(small_suite_config).run()

        assert [s.suite for s in report.suites] == ["penrose", "gamma"]
        assert report.config["suites"] == ["gamma", "penrose"]

    def test_deterministic_digest(self):
        """Test the same seed reproduces the verdict digest."""
        digests = []
        for _ in range(2):
            suite_config = config.suite_config(seed=11, trials=5, max_dim=3, suites=["penrose", "gamma", "angles"])
            digests.append(SuiteRunner(suite_config).run().verdict_digest)

        assert digests[0] == digests[1]

    def test_setup_failure_is_reported(self, small_suite_config, mocker):
        """Test a suite that fails outside its trials reports a setup error."""
        mocker.patch.object(GammaSuite, "execute_with_logging", side_effect=RuntimeError("no start"))
        small_suite_config.suites = ["gamma"]
        report = SuiteRunner(small_suite_config).run()

        assert report.suites[0].cases[0].case_id == "setup"
        assert report.exit_code == 1

    @pytest.mark.slow
    @pytest.mark.parametrize("suite_id", list(SUITE_CLASSES))
    def test_suite_has_no_violations(self, suite_id):
        """Test every suite passes on a small seeded budget."""
        suite_config = config.suite_config(seed=3, trials=10, max_dim=4, suites=[suite_id])
        report = SuiteRunner(suite_config).run()
        failures = [c for s in report.suites for c in s.cases if c.failed]

        assert failures == []
        assert report.case_count > 0

    def test_corner_cases_use_plain_tolerance(self):
        """Test the corner identities are held to eq_tol and sit at rounding level."""
        suite_config = config.suite_config(seed=5, trials=12, max_dim=5, suites=["orbits"])
        report = SuiteRunner(suite_config).run()
        corner = [c for c in report.suites[0].cases if ".corner." in c.case_id and c.verdict != "skipped"]

        assert corner
        for case in corner:
            assert case.verdict == "holds"
            assert case.rhs == suite_config.tolerances.eq_tol
            assert case.lhs < 1e-12

    @pytest.mark.parametrize("suite_id, label", [("prop57", ".projection"), ("fixed_range", ".round_trip")])
    def test_identity_residuals_at_rounding_level(self, suite_id, label):
        """Test well-conditioned identities are checked against a bound near eq_tol."""
        suite_config = config.suite_config(seed=5, trials=12, max_dim=5, suites=[suite_id])
        report = SuiteRunner(suite_config).run()
        cases = [c for c in report.suites[0].cases if c.case_id.endswith(label) and c.verdict != "skipped"]
        eq = suite_config.tolerances.eq_tol

        assert cases
        for case in cases:
            assert case.verdict == "holds"
            assert case.rhs <= 20.0 * eq
            assert case.lhs < 1e-12
