"""The reduced minimum modulus against ‖A†‖, adjoints, |A| and A*A."""

import math

import numpy as np

from operators.numeric_core import adjoint, op_norm
from operators.operator_calculus import analyze, polar_decompose, reduced_min_modulus
from operators.random_ops import complex_gaussian, ensemble_operator
from .base_suite import BaseSuite, Trial


class GammaSuite(BaseSuite):
    name = "gamma"

    def run_trial(self, trial: Trial) -> None:
        a = ensemble_operator(trial.rng, trial.max_dim)
        tol = trial.tol
        aa = analyze(a, tol)

        if aa.rank == 0:
            trial.check("zero_operator_gamma", math.isinf(aa.gamma), rank=0)
            trial.check("zero_operator_pinv", aa.pinv_norm == 0.0)
            return

        eq = tol.eq_tol
        scale = eq * (1.0 + aa.norm)
        trial.bound("gamma_pinv_norm", abs(aa.gamma * aa.pinv_norm - 1.0), eq, rank=aa.rank)
        trial.bound("gamma_adjoint", abs(reduced_min_modulus(adjoint(aa.a), tol) - aa.gamma), scale)
        trial.bound(
            "gamma_abs",
            abs(reduced_min_modulus(polar_decompose(aa.a, tol).abs_a, tol) - aa.gamma),
            scale,
        )
        trial.bound(
            "gamma_gram",
            abs(reduced_min_modulus(adjoint(aa.a) @ aa.a, tol) - aa.gamma**2),
            eq * (1.0 + aa.norm) ** 2,
        )

        # γ(A) is the infimum of ‖Ax‖ over unit x ⊥ N(A)
        x = aa.p_corange @ complex_gaussian(trial.rng, (aa.a.shape[1],))
        norm_x = float(np.linalg.norm(x))
        if norm_x > 0.0:
            trial.bound("gamma_infimum", aa.gamma, float(np.linalg.norm(aa.a @ x)) / norm_x + scale)
        trial.bound("gamma_le_norm", aa.gamma, op_norm(aa.a))
