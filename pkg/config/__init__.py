"""Configuration package."""

from .settings import (
    ConvergenceThresholds,
    SuiteConfig,
    SuiteOption,
    SystemConfig as Config,
    ToleranceConfig,
)

__all__ = ['Config', 'ConvergenceThresholds', 'SuiteConfig', 'SuiteOption', 'ToleranceConfig']
