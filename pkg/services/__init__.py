"""Services package."""

from .logger import setup_logging, get_suite_logger, SuiteLoggerAdapter
from .matrix_io import load_matrix, save_matrix, decode_matrix, encode_matrix
from .report_writer import write_report, to_json

__all__ = ['setup_logging', 'get_suite_logger', 'SuiteLoggerAdapter', 'load_matrix', 'save_matrix',
           'decode_matrix', 'encode_matrix', 'write_report', 'to_json']
