"""Tests for service modules."""

import json
import logging
import math

import numpy as np
import pytest

from operators.errors import MatrixFormatError
from services.logger import (
    SuiteLoggerAdapter,
    create_run_logger,
    get_component_logger,
    get_suite_logger,
    setup_logging,
)
from services.matrix_io import decode_matrix, encode_matrix, load_matrix, save_matrix
from services.report_writer import (
    CSV_COLUMNS,
    atomic_write_text,
    cases_to_csv,
    sanitize,
    to_json,
    write_report,
)
from suites.records import CaseResult, SuiteSummary, VerifyReport, verdict_digest


@pytest.fixture
def report():
    """A two-case report with one violation."""
    cases = [
        CaseResult(suite="gamma", case_id="t0000.identity", lhs=1.0, rhs=1.0, slack=0.0, verdict="holds"),
        CaseResult(suite="gamma", case_id="t0001.identity", lhs=2.0, rhs=1.0, slack=-1.0, verdict="violated"),
    ]
    summaries = [SuiteSummary(suite="gamma", trials=2, cases=cases)]
    return VerifyReport(config={"seed": 0}, suites=summaries, verdict_digest=verdict_digest(summaries))


class TestMatrixIO:
    """Test the JSON matrix format."""

    def test_decode(self):
        """Test a 1×2 complex matrix."""
        a = decode_matrix({"rows": 1, "cols": 2, "entries": [[1.0, 0.0], [0.0, -2.5]]})

        np.testing.assert_array_equal(a, np.array([[1.0, -2.5j]]))

    @pytest.mark.parametrize("rows, cols", [(0, 0), (0, 3), (2, 0)])
    def test_decode_rejects_empty(self, rows, cols):
        """Test zero-dimensional documents are rejected, whatever the entries."""
        with pytest.raises(MatrixFormatError, match="Invalid matrix document"):
            decode_matrix({"rows": rows, "cols": cols, "entries": []})

    def test_missing_key(self):
        """Test schema violations are reported."""
        with pytest.raises(MatrixFormatError, match="Invalid matrix document"):
            decode_matrix({"rows": 1, "entries": []})

    def test_wrong_entry_count(self):
        """Test rows × cols must match the entry count."""
        with pytest.raises(MatrixFormatError, match="Expected 4 entries"):
            decode_matrix({"rows": 2, "cols": 2, "entries": [[1.0, 0.0]]})

    def test_bad_pair(self):
        """Test each entry is a (re, im) pair."""
        with pytest.raises(MatrixFormatError):
            decode_matrix({"rows": 1, "cols": 1, "entries": [[1.0]]})

    def test_encode_shape(self):
        """Test encoding records shape and row-major entries."""
        doc = encode_matrix(np.array([[1.0, 2.0], [3.0, 4.0j]]))

        assert doc["rows"] == 2 and doc["cols"] == 2
        assert doc["entries"][1] == [2.0, 0.0]
        assert doc["entries"][3] == [0.0, 4.0]

    def test_encode_rejects_vectors(self):
        """Test 1-D arrays are not matrices."""
        with pytest.raises(MatrixFormatError):
            encode_matrix(np.zeros(3))

    def test_save_and_load(self, tmp_path, rng):
        """Test a saved matrix loads back bit for bit."""
        a = rng.standard_normal((3, 2)) + 1j * rng.standard_normal((3, 2))
        path = tmp_path / "m" / "a.json"
        save_matrix(path, a)

        np.testing.assert_array_equal(load_matrix(path), a)

    def test_load_not_json(self, tmp_path):
        """Test unparsable files raise MatrixFormatError."""
        path = tmp_path / "bad.json"
        path.write_text("{not json", encoding="utf-8")

        with pytest.raises(MatrixFormatError, match="not valid JSON"):
            load_matrix(path)

    def test_load_missing_file(self, tmp_path):
        """Test missing files raise MatrixFormatError."""
        with pytest.raises(MatrixFormatError):
            load_matrix(tmp_path / "missing.json")


class TestReportWriter:
    """Test report emission."""

    def test_sanitize_non_finite(self):
        """Test non-finite floats become strings."""
        assert sanitize({"a": math.inf, "b": -math.inf, "c": math.nan, "d": 1.5}) == {
            "a": "inf", "b": "-inf", "c": "nan", "d": 1.5,
        }

    def test_sanitize_numpy(self):
        """Test numpy scalars and arrays become plain Python."""
        assert sanitize({"x": np.float64(2.0), "y": np.array([1, 2])}) == {"x": 2.0, "y": [1, 2]}

    def test_to_json_is_strict(self):
        """Test the output parses as strict JSON with sorted keys."""
        text = to_json({"b": math.inf, "a": 1})

        assert json.loads(text) == {"a": 1, "b": "inf"}
        assert text.index('"a"') < text.index('"b"')

    def test_atomic_write(self, tmp_path):
        """Test the target is written and no temporary file remains."""
        path = tmp_path / "out" / "r.txt"
        atomic_write_text(path, "hello\n")

        assert path.read_text(encoding="utf-8") == "hello\n"
        assert not (tmp_path / "out" / "r.txt.tmp").exists()

    def test_cases_to_csv(self, report):
        """Test one header row and one row per case."""
        lines = cases_to_csv(report.suites[0].cases).splitlines()

        assert lines[0] == ",".join(CSV_COLUMNS)
        assert len(lines) == 3
        assert lines[2].endswith(",violated")

    def test_write_json_report(self, tmp_path, report):
        """Test the JSON report carries counts and the digest."""
        path = tmp_path / "report.json"
        write_report(report, path, "json")
        doc = json.loads(path.read_text(encoding="utf-8"))

        assert doc["violation_count"] == 1
        assert doc["case_count"] == 2
        assert doc["verdict_digest"] == report.verdict_digest

    def test_write_csv_report(self, tmp_path, report):
        """Test the CSV report has a row per case."""
        path = tmp_path / "report.csv"
        write_report(report, path, "csv")

        assert len(path.read_text(encoding="utf-8").splitlines()) == 3

    def test_unknown_format(self, tmp_path, report):
        """Test unknown formats are rejected."""
        with pytest.raises(ValueError, match="Unknown report format"):
            write_report(report, tmp_path / "r.xml", "xml")


class TestLogging:
    """Test logging setup."""

    def test_setup_logging(self):
        """Test the root and component levels follow the requested level."""
        setup_logging(level="DEBUG")

        assert logging.getLogger().level == logging.DEBUG
        assert logging.getLogger("suite").level == logging.DEBUG
        setup_logging(level="WARNING")

    def test_setup_logging_file(self, tmp_path):
        """Test a log file receives records."""
        log_file = tmp_path / "logs" / "run.log"
        setup_logging(level="INFO", log_file=str(log_file))
        logging.getLogger("cli").info("hello file")
        for handler in logging.getLogger().handlers:
            handler.flush()

        assert "hello file" in log_file.read_text(encoding="utf-8")
        setup_logging(level="WARNING")

    def test_suite_logger_name(self):
        """Test suite loggers live under the suite component."""
        assert get_suite_logger("gamma").name == "suite.gamma"

    def test_component_logger(self):
        """Test unknown components are rejected."""
        assert get_component_logger("ledger").name == "ledger"
        with pytest.raises(ValueError):
            get_component_logger("network")

    def test_adapter_prefixes_seed(self, caplog):
        """Test the adapter prefixes the run seed."""
        adapter = SuiteLoggerAdapter(logging.getLogger("suite.test"), seed=17)

        with caplog.at_level(logging.WARNING, logger="suite.test"):
            adapter.log_violation("t0001.x", 2.0, 1.0)

        assert "[run 17] VIOLATION t0001.x" in caplog.text

    def test_run_logger(self, caplog):
        """Test the run logger reports execution start."""
        run_logger = create_run_logger(5)

        with caplog.at_level(logging.INFO, logger="suite"):
            run_logger.log_execution_start("verify")

        assert "[run 5] EXECUTION START: verify" in caplog.text
