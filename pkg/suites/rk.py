"""Projector, γ and pseudoinverse Lipschitz estimates on R_k = {γ ≥ 1/k}."""

import numpy as np

from operators.metrics_perturbation import (
    MetricKind,
    cor39_certificate,
    lemma310_certificate,
    lemma38_certificates,
    rk_membership,
)
from operators.random_ops import near_identity, random_operator, random_shape
from .base_suite import BaseSuite, Trial

K_VALUES = (1, 2, 5)


def rk_operator(m: int, n: int, k: int, rng: np.random.Generator) -> np.ndarray:
    """A random operator of random rank with γ at least 1.2/k."""
    rank = int(rng.integers(0, min(m, n) + 1))
    floor = (1.2 + float(rng.uniform(0.0, 1.0))) / k
    return random_operator(m, n, rank, rng, sigma_min=floor, sigma_max=floor * float(rng.uniform(1.0, 4.0)))


class RkSuite(BaseSuite):
    name = "rk"

    def run_trial(self, trial: Trial) -> None:
        rng = trial.rng
        tol = trial.tol
        k = K_VALUES[trial.index % len(K_VALUES)]
        m, n = random_shape(rng, trial.max_dim)
        a = rk_operator(m, n, k, rng)
        if rng.random() < 0.5:
            # ‖E‖, ‖F‖ ≤ 0.05 keeps γ(B) ≥ 0.95²·1.2/k > 1/k
            radius = float(10.0 ** rng.uniform(-4.0, np.log10(0.05)))
            b = near_identity(m, rng, radius) @ a @ near_identity(n, rng, radius)
            pairing = "nearby"
        else:
            b = rk_operator(m, n, k, rng)
            pairing = "independent"

        trial.check("membership", rk_membership(a, k, tol) and rk_membership(b, k, tol), k=k)
        with trial.guard(f"lemma38_k{k}"):
            trial.certificates(f"lemma38_k{k}", lemma38_certificates(a, b, k, tol))
        for kind in (MetricKind.R, MetricKind.N):
            with trial.guard(f"cor39_k{k}_{kind.value}"):
                trial.certificates(f"cor39_k{k}", cor39_certificate(a, b, k, kind, tol))
        with trial.guard(f"lemma310_k{k}"):
            trial.certificate(f"lemma310_k{k}", lemma310_certificate(a, b, k, tol), pairing=pairing)
