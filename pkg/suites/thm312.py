"""Flipping the polar isometry along one direction of N(B)⊥."""

import numpy as np

from operators.metrics_perturbation import thm312_flip
from operators.numeric_core import op_norm
from operators.operator_calculus import analyze, is_partial_isometry, polar_decompose
from operators.random_ops import complex_gaussian, random_operator, random_shape
from .base_suite import BaseSuite, Trial, conditioning


class Thm312Suite(BaseSuite):
    name = "thm312"

    def run_trial(self, trial: Trial) -> None:
        rng = trial.rng
        tol = trial.tol
        eq = tol.eq_tol
        m, n = random_shape(rng, trial.max_dim)
        rank = int(rng.integers(1, min(m, n) + 1))
        sigma_min = float(10.0 ** rng.uniform(-4.0, -0.5))
        b = random_operator(m, n, rank, rng, sigma_min=sigma_min)
        ba = analyze(b, tol)

        if rng.random() < 0.5:
            # the weakest direction makes B̃ as close to B as the flip allows
            x0 = ba.factorization.v[:, ba.rank - 1]
            direction = "weakest"
        else:
            x = ba.p_corange @ complex_gaussian(rng, (n,))
            x0 = x / np.linalg.norm(x)
            direction = "random"

        flip = thm312_flip(b, x0, tol)
        bp_norm = op_norm(ba.a @ flip.p)
        trial.bound("isometry_gap", abs(op_norm(flip.v_b - flip.w) - 2.0), 0.0, direction=direction)
        trial.bound(
            "operator_gap",
            abs(op_norm(ba.a - flip.b_tilde) - 2.0 * bp_norm),
            eq * ba.norm,
            direction=direction,
            bp_norm=bp_norm,
        )
        trial.check("flip_partial_isometry", is_partial_isometry(flip.w, tol))
        trial.bound(
            "flip_is_polar_isometry",
            op_norm(polar_decompose(flip.b_tilde, tol).v - flip.w),
            eq * conditioning(ba.norm, ba.pinv_norm),
        )
