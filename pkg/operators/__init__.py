"""Closed-range operator toolkit."""

from .certificates import InequalityCertificate
from .errors import (
    ConstructionInapplicableError,
    MatrixFormatError,
    OperatorError,
    OutsideNeighborhoodError,
    PreconditionError,
    ShapeMismatchError,
    SingularOperatorError,
    SvdConvergenceError,
)
from .numeric_core import OrbitSignature, Subspace, SvdFactorization, numerical_rank, svd
from .operator_calculus import OperatorAnalysis, analyze, pinv, polar_decompose, reduced_min_modulus
from .metrics_perturbation import MetricKind, metric_dx
from .orbit_geometry import Intertwiner, ProjectorPair, apply_action, build_intertwiner, same_orbit
from .convergence_lab import ConvergenceReport, PerturbationSequence, SequenceKind, generate_sequence

__all__ = [
    'ConstructionInapplicableError', 'ConvergenceReport', 'InequalityCertificate', 'Intertwiner',
    'MatrixFormatError', 'MetricKind', 'OperatorAnalysis', 'OperatorError', 'OrbitSignature',
    'OutsideNeighborhoodError', 'PerturbationSequence', 'PreconditionError', 'ProjectorPair',
    'SequenceKind', 'ShapeMismatchError', 'SingularOperatorError', 'Subspace', 'SvdConvergenceError',
    'SvdFactorization', 'analyze', 'apply_action', 'build_intertwiner', 'generate_sequence',
    'metric_dx', 'numerical_rank', 'pinv', 'polar_decompose', 'reduced_min_modulus', 'same_orbit', 'svd',
]
