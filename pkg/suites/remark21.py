"""The three-term expansion of A† − B† and the bound read off from it."""

from operators.operator_calculus import analyze, pinv_difference_identity, remark21_bound_certificate
from operators.random_ops import near_identity, random_operator, random_shape
from .base_suite import BaseSuite, Trial, conditioning


class Remark21Suite(BaseSuite):
    name = "remark21"

    def run_trial(self, trial: Trial) -> None:
        rng = trial.rng
        m, n = random_shape(rng, trial.max_dim)
        k = min(m, n)
        a = random_operator(m, n, int(rng.integers(0, k + 1)), rng, sigma_min=0.05)
        if rng.random() < 0.5:
            # nearby operator of the same rank
            radius = float(10.0 ** rng.uniform(-4.0, -1.0))
            b = near_identity(m, rng, radius) @ a @ near_identity(n, rng, radius)
            pairing = "nearby"
        else:
            b = random_operator(m, n, int(rng.integers(0, k + 1)), rng, sigma_min=0.05)
            pairing = "independent"

        aa, ba = analyze(a, trial.tol), analyze(b, trial.tol)
        scale = conditioning(aa.norm, aa.pinv_norm) * conditioning(ba.norm, ba.pinv_norm)
        trial.bound(
            "expansion_residual",
            pinv_difference_identity(a, b, trial.tol),
            trial.tol.eq_tol * scale * scale,
            pairing=pairing,
        )
        trial.certificate("bound", remark21_bound_certificate(a, b, trial.tol), pairing=pairing)
