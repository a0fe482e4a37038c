"""The projection onto G(S) and the local cross section of the orbit map."""

import numpy as np

from operators.numeric_core import Subspace, op_norm
from operators.operator_calculus import analyze
from operators.orbit_geometry import (
    apply_action,
    local_section_sigma,
    projection_formula_unsquared,
    projection_under_g,
)
from operators.random_ops import near_identity, random_invertible, random_operator, random_shape, random_subspace
from .base_suite import BaseSuite, Trial, conditioning


class Prop57Suite(BaseSuite):
    name = "prop57"

    def run_trial(self, trial: Trial) -> None:
        self._projection(trial)
        self._section(trial)

    def _projection(self, trial: Trial) -> None:
        rng = trial.rng
        tol = trial.tol
        n = int(rng.integers(2, trial.max_dim + 1))
        s = random_subspace(n, int(rng.integers(0, n + 1)), rng)
        g = random_invertible(n, rng)
        oracle = Subspace.span(g @ s.basis, tol).projector() if s.dim else np.zeros((n, n))
        cond = float(np.linalg.cond(g))

        p = projection_under_g(g, s, tol)
        trial.bound("projection", op_norm(p - oracle), tol.eq_tol * cond, dim=s.dim)
        with trial.guard("projection_unsquared"):
            trial.report(
                "projection_unsquared",
                gap=op_norm(projection_formula_unsquared(g, s, tol) - oracle),
                dim=s.dim,
            )

    def _section(self, trial: Trial) -> None:
        rng = trial.rng
        tol = trial.tol
        m, n = random_shape(rng, trial.max_dim)
        rank = int(rng.integers(0, min(m, n) + 1))
        a = random_operator(m, n, rank, rng, sigma_min=0.2)
        aa = analyze(a, tol)
        kappa = conditioning(aa.norm, aa.pinv_norm)

        with trial.guard("section_at_base"):
            at_base = local_section_sigma(a, a, tol)
            trial.bound(
                "section_at_base",
                max(op_norm(at_base.g - np.eye(m)), op_norm(at_base.h - np.eye(n))),
                tol.eq_tol * kappa,
            )

        radius = float(10.0 ** rng.uniform(-4.0, -1.5))
        b = apply_action(near_identity(m, rng, radius), near_identity(n, rng, radius), a, tol)
        ba = analyze(b, tol)
        with trial.guard("section"):
            section = local_section_sigma(a, b, tol)
            trial.bound(
                "section",
                section.residual,
                tol.eq_tol * (1.0 + ba.norm) * kappa,
                radius=radius,
            )
