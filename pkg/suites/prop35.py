"""Inner inverses bound γ, ‖B†‖ and the movement of range projectors."""

from operators.operator_calculus import prop35_certificates, prop35_projector_certificates
from operators.random_ops import random_inner_inverse, random_operator, random_shape
from .base_suite import BaseSuite, Trial


class Prop35Suite(BaseSuite):
    name = "prop35"

    def run_trial(self, trial: Trial) -> None:
        rng = trial.rng
        m, n = random_shape(rng, trial.max_dim)
        k = min(m, n)
        b = random_operator(m, n, int(rng.integers(0, k + 1)), rng, sigma_min=0.1)
        a = random_operator(m, n, int(rng.integers(0, k + 1)), rng, sigma_min=0.1)
        spread = float(10.0 ** rng.uniform(-2.0, 0.0))
        bp = random_inner_inverse(b, rng, spread, trial.tol)
        ap = random_inner_inverse(a, rng, spread, trial.tol)

        with trial.guard("inner_inverse"):
            trial.certificates("inner_inverse", prop35_certificates(b, bp, trial.tol))
        with trial.guard("projectors"):
            trial.certificates("projectors", prop35_projector_certificates(a, ap, b, bp, trial.tol))
