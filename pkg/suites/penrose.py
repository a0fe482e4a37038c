"""Penrose equations, projector identities, SVD and polar parts on the random ensemble."""

import numpy as np

from operators.numeric_core import adjoint, op_norm
from operators.operator_calculus import analyze, is_partial_isometry, pinv, polar_decompose, polar_via_pinv
from operators.random_ops import ensemble_operator
from .base_suite import BaseSuite, Trial, conditioning

PENROSE_LABELS = ("aba", "bab", "ab_hermitian", "ba_hermitian")


class PenroseSuite(BaseSuite):
    name = "penrose"

    def run_trial(self, trial: Trial) -> None:
        a = ensemble_operator(trial.rng, trial.max_dim)
        eq = trial.tol.eq_tol
        aa = analyze(a, trial.tol)
        kappa = conditioning(aa.norm, aa.pinv_norm)
        shape = list(a.shape)

        # first-order error of each product: ‖A‖²‖A†‖, ‖A‖‖A†‖², ‖A‖‖A†‖, ‖A‖‖A†‖
        scales = ((1.0 + aa.norm) * kappa, (1.0 + aa.pinv_norm) * kappa, kappa, kappa)
        for label, residual, scale in zip(PENROSE_LABELS, aa.penrose_residuals(), scales):
            trial.bound(f"penrose_{label}", residual, eq * scale, shape=shape, rank=aa.rank)

        trial.bound("range_projector", op_norm(aa.a @ aa.pinv - aa.p_range), eq * kappa)
        trial.bound("corange_projector", op_norm(aa.pinv @ aa.a - aa.p_corange), eq * kappa)
        with trial.guard("double_pinv"):
            trial.bound("double_pinv", op_norm(pinv(aa.pinv, trial.tol) - aa.a), eq * kappa * kappa)

        f = aa.factorization
        trial.bound("svd_unitary", f.unitarity_error(), eq)
        trial.bound("svd_reconstruction", f.reconstruction_error(aa.a), eq * (1.0 + aa.norm))
        trial.check(
            "svd_sorted",
            bool(np.all(np.diff(f.singular_values) <= 0.0) and np.all(f.singular_values >= 0.0)),
        )

        with trial.guard("polar"):
            polar = polar_decompose(aa.a, trial.tol)
            trial.bound("polar_right", op_norm(polar.v @ polar.abs_a - aa.a), eq * (1.0 + aa.norm))
            trial.bound("polar_left", op_norm(polar.abs_a_star @ polar.v - aa.a), eq * (1.0 + aa.norm))
            trial.check("polar_partial_isometry", is_partial_isometry(polar.v, trial.tol))
            trial.bound(
                "polar_abs_square",
                op_norm(polar.abs_a @ polar.abs_a - adjoint(aa.a) @ aa.a),
                eq * (1.0 + aa.norm) ** 2,
            )
            trial.bound(
                "polar_via_pinv",
                op_norm(polar_via_pinv(aa.a, trial.tol) - polar.v),
                eq * kappa * kappa,
            )
