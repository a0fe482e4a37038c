"""Configuration management system."""

import logging
import math
import os
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Optional

logger = logging.getLogger(__name__)

SVD_METHODS = ("jacobi", "lapack")
REPORT_FORMATS = ("json", "csv")


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical cutoffs shared by every operation."""
    rank_tol_rel: float = 1e-13
    eq_tol: float = 1e-9
    angle_one_tol: float = 1e-8
    svd_method: str = "jacobi"
    svd_max_sweeps: int = 60
    svd_tol: float = 1e-15

    def __post_init__(self):
        if not 0.0 < self.rank_tol_rel < 1.0:
            raise ValueError(f"rank_tol_rel must lie in (0, 1), got {self.rank_tol_rel}")
        if self.angle_one_tol <= 0.0:
            raise ValueError(f"angle_one_tol must be positive, got {self.angle_one_tol}")
        if self.eq_tol < 0.0:
            raise ValueError(f"eq_tol must be non-negative, got {self.eq_tol}")
        if self.eq_tol == 0.0:
            logger.warning("eq_tol = 0: every identity check is exact floating-point equality")
        if self.svd_method not in SVD_METHODS:
            raise ValueError(f"Unknown SVD method: {self.svd_method}")
        if self.svd_max_sweeps < 1:
            raise ValueError("svd_max_sweeps must be at least 1")
        if self.svd_tol <= 0.0:
            raise ValueError("svd_tol must be positive")

    def with_overrides(self, **overrides: Any) -> "ToleranceConfig":
        """Return a copy with the given fields replaced."""
        unknown = set(overrides) - set(self.__dataclass_fields__)
        if unknown:
            raise ValueError(f"Unknown tolerance fields: {sorted(unknown)}")
        return replace(self, **overrides)

    def as_dict(self) -> Dict[str, Any]:
        return {name: getattr(self, name) for name in self.__dataclass_fields__}


@dataclass(frozen=True)
class ConvergenceThresholds:
    """How limit statements are decided on a finite sequence."""
    vanish_abs: float = 1e-6
    decay_ratio: float = 0.2
    tail_fraction: float = 0.25
    bound_factor: float = 2.0

    def __post_init__(self):
        if not 0.0 < self.tail_fraction <= 1.0:
            raise ValueError("tail_fraction must lie in (0, 1]")
        if self.vanish_abs <= 0.0 or self.decay_ratio <= 0.0:
            raise ValueError("vanishing thresholds must be positive")
        if self.bound_factor < 1.0:
            raise ValueError("bound_factor must be at least 1")

    def as_dict(self) -> Dict[str, float]:
        return {name: getattr(self, name) for name in self.__dataclass_fields__}


@dataclass
class SuiteConfig:
    """Configuration for one `verify` run."""
    seed: int = 0
    trials: int = 1000
    max_dim: int = 6
    tolerances: ToleranceConfig = field(default_factory=ToleranceConfig)
    thresholds: ConvergenceThresholds = field(default_factory=ConvergenceThresholds)
    suites: List[str] = field(default_factory=list)
    output_path: Optional[str] = None
    format: str = "json"

    def validate(self) -> bool:
        """Validate the run parameters."""
        if self.seed < 0:
            raise ValueError("seed must be an unsigned integer")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.max_dim < 2:
            raise ValueError("max_dim must be at least 2")
        if self.format not in REPORT_FORMATS:
            raise ValueError(f"Unknown report format: {self.format}")
        return True

    def fingerprint(self) -> Dict[str, Any]:
        """Everything that determines the verdict set of a run."""
        return {
            "seed": self.seed,
            "trials": self.trials,
            "max_dim": self.max_dim,
            "tolerances": self.tolerances.as_dict(),
            "thresholds": self.thresholds.as_dict(),
            "suites": sorted(self.suites),
        }


@dataclass
class SuiteOption:
    """Per-suite knobs: how much of the trial budget a suite spends"""
    name: str
    description: str
    trial_share: float = 1.0
    max_trials: Optional[int] = None

    def trials_for(self, total: int) -> int:
        trials = max(1, int(math.ceil(total * self.trial_share)))
        return min(trials, self.max_trials) if self.max_trials else trials


class SystemConfig:
    """Main system configuration"""

    def __init__(self):
        self.load_from_env()
        self.setup_suites()

    def load_from_env(self):
        """Load configuration from environment variables"""
        self.log_level = os.getenv("CRLAB_LOG_LEVEL", "WARNING")
        self.log_file = os.getenv("CRLAB_LOG_FILE")
        self.ledger_url = os.getenv("CRLAB_LEDGER_URL")

        self.rank_tol_rel = float(os.getenv("CRLAB_RANK_TOL_REL", "1e-13"))
        self.eq_tol = float(os.getenv("CRLAB_EQ_TOL", "1e-9"))
        self.angle_one_tol = float(os.getenv("CRLAB_ANGLE_ONE_TOL", "1e-8"))
        self.svd_method = os.getenv("CRLAB_SVD_METHOD", "jacobi")
        self.svd_max_sweeps = int(os.getenv("CRLAB_SVD_MAX_SWEEPS", "60"))

        self.seed = int(os.getenv("CRLAB_SEED", "0"))
        self.trials = int(os.getenv("CRLAB_TRIALS", "1000"))
        self.max_dim = int(os.getenv("CRLAB_MAX_DIM", "6"))
        self.report_format = os.getenv("CRLAB_REPORT_FORMAT", "json")
        self._default_tolerances: Optional[ToleranceConfig] = None

    def setup_suites(self):
        """Register the verification suites run by `verify`"""
        self.suites = {
            option.name: option
            for option in (
                SuiteOption("penrose", "Penrose equations, SVD and polar parts"),
                SuiteOption("gamma", "reduced minimum modulus against the pseudoinverse norm"),
                SuiteOption("remark21", "three-term expansion of A† − B†"),
                SuiteOption("prop35", "inner inverses bound γ and the projectors"),
                SuiteOption("angles", "minimal angles, sums and nullspace criteria"),
                SuiteOption("metrics", "d_R / d_N bounds and metric axioms"),
                SuiteOption("rk", "Lipschitz estimates on R_k"),
                SuiteOption("thm36", "rank-one gadget outside M", trial_share=0.2),
                SuiteOption("thm312", "polar isometry flip", trial_share=0.2),
                SuiteOption("thm48", "convergence condition battery", trial_share=0.1, max_trials=100),
                SuiteOption("orbits", "orbit signatures and intertwiners", trial_share=0.5),
                SuiteOption("prop57", "projection formula and local cross section", trial_share=0.4),
                SuiteOption("thm511", "distance between orbits", trial_share=0.1, max_trials=100),
                SuiteOption("fixed_range", "fixed-range slice and its factorization", trial_share=0.4),
            )
        }

    def validate_config(self) -> bool:
        """Validate the loaded configuration"""
        self.tolerances()
        self.suite_config().validate()
        return True

    def tolerances(self) -> ToleranceConfig:
        """Build the tolerance set described by the environment."""
        return ToleranceConfig(
            rank_tol_rel=self.rank_tol_rel,
            eq_tol=self.eq_tol,
            angle_one_tol=self.angle_one_tol,
            svd_method=self.svd_method,
            svd_max_sweeps=self.svd_max_sweeps,
        )

    @property
    def default_tolerances(self) -> ToleranceConfig:
        """Tolerances used by every operation called without an explicit `tol`."""
        if self._default_tolerances is None:
            self._default_tolerances = self.tolerances()
        return self._default_tolerances

    def get_suite_option(self, suite_id: str) -> SuiteOption:
        """Get the registered options for one suite"""
        if suite_id not in self.suites:
            raise ValueError(f"Unknown suite: {suite_id}")

        return self.suites[suite_id]

    def suite_config(self, **overrides: Any) -> SuiteConfig:
        """Build a SuiteConfig from the environment, then apply overrides."""
        suite_config = SuiteConfig(
            seed=self.seed,
            trials=self.trials,
            max_dim=self.max_dim,
            tolerances=self.tolerances(),
            format=self.report_format,
        )
        for key, value in overrides.items():
            if value is None:
                continue
            if not hasattr(suite_config, key):
                raise ValueError(f"Unknown suite option: {key}")
            setattr(suite_config, key, value)
        return suite_config


# Global configuration instance
config = SystemConfig()


def resolve_tolerances(tol: Optional[ToleranceConfig]) -> ToleranceConfig:
    """Fall back to the process-wide tolerances when none are passed."""
    return tol if tol is not None else config.default_tolerances
