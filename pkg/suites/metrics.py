"""d_R / d_N certificates on random pairs, including pairs at the edge of the invertibility ball."""

from typing import Tuple

import numpy as np

from operators.metrics_perturbation import (
    MetricKind,
    cor33_bound,
    cor33_certificate,
    cor34_certificate,
    lemma32_certificate,
    metric_axioms,
    metric_dx,
    openness_certificate,
    remark31_checks,
)
from operators.operator_calculus import analyze
from operators.random_ops import ensemble_operator, near_identity, random_operator
from .base_suite import BaseSuite, Trial

PAIRINGS = ("independent", "nearby", "edge")


def edge_pair(b: np.ndarray, kind: MetricKind, trial: Trial) -> Tuple[np.ndarray, float]:
    """A rank-preserving perturbation A of B with d_X(A, B) just below the ball radius."""
    radius = cor33_bound(analyze(b, trial.tol).pinv_norm)
    m, n = b.shape
    e1 = near_identity(m, trial.rng, 1.0) - np.eye(m)
    e2 = near_identity(n, trial.rng, 1.0) - np.eye(n)
    t = radius
    a = b
    for _ in range(60):
        a = (np.eye(m) + t * e1) @ b @ (np.eye(n) + t * e2)
        d = metric_dx(a, b, kind, trial.tol)
        if d < radius:
            return a, d / radius
        t *= 0.8
    return a, float("nan")


def ensemble_operator_like(b: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Another ensemble draw with the shape of b."""
    m, n = b.shape
    rank = int(rng.integers(0, min(m, n) + 1))
    return random_operator(m, n, rank, rng, sigma_min=float(10.0 ** rng.uniform(-3.0, -0.5)))


class MetricsSuite(BaseSuite):
    name = "metrics"

    def run_trial(self, trial: Trial) -> None:
        rng = trial.rng
        tol = trial.tol
        b = ensemble_operator(rng, trial.max_dim)
        m, n = b.shape
        pairing = PAIRINGS[trial.index % len(PAIRINGS)]
        kind = MetricKind.R if (trial.index // len(PAIRINGS)) % 2 == 0 else MetricKind.N

        fill = None
        if pairing == "independent":
            a = ensemble_operator_like(b, rng)
        elif pairing == "nearby":
            radius = float(10.0 ** rng.uniform(-6.0, -1.0))
            a = near_identity(m, rng, radius) @ b @ near_identity(n, rng, radius)
        else:
            a, fill = edge_pair(b, kind, trial)

        for metric in (MetricKind.R, MetricKind.N):
            tag = metric.value
            trial.certificate(f"lemma32_{tag}", lemma32_certificate(a, b, metric, tol), pairing=pairing)
            trial.certificate(f"cor34_{tag}", cor34_certificate(a, b, metric, tol), pairing=pairing)
            trial.certificate(f"openness_{tag}", openness_certificate(a, b, metric, tol), pairing=pairing)
        with trial.guard(f"cor33_{kind.value}"):
            trial.certificate(
                f"cor33_{kind.value}",
                cor33_certificate(a, b, kind, tol),
                pairing=pairing,
                radius_fill=fill,
            )

        trial.certificates("remark31", remark31_checks(a, b, tol))
        c = ensemble_operator_like(b, rng)
        trial.certificates("axioms", metric_axioms(a, b, c, kind, tol))
