"""The fixed-range slice CR_S: factorization, Thompson components, sections and actions."""

import numpy as np

from operators.fixed_range import (
    FixedRangeContext,
    crs_membership,
    factorize_f,
    factorize_f_inverse,
    fixed_range_intertwiner,
    is_cp_member,
    is_gs_member,
    is_pis_member,
    l_prime_orbit_member,
    ls_action,
    section_pi,
    thompson_scalars,
)
from operators.metrics_perturbation import MetricKind, metric_dx
from operators.numeric_core import adjoint, op_norm
from operators.operator_calculus import analyze, polar_decompose
from operators.random_ops import (
    near_identity,
    random_crs_member,
    random_invertible,
    random_subspace,
)
from utils.seeding import trial_rng
from .base_suite import BaseSuite, Trial, conditioning

SUBSPACE_CHOICES = 5


def psd_floor(x: np.ndarray) -> float:
    """Smallest eigenvalue of the Hermitian part."""
    return float(np.linalg.eigvalsh(0.5 * (x + adjoint(x)))[0])


class FixedRangeSuite(BaseSuite):
    name = "fixed_range"

    def context_for(self, trial: Trial) -> FixedRangeContext:
        """One of a handful of subspaces S, shared by every trial that picks it."""
        rng = trial_rng(trial.seed, f"{self.name}.subspace", trial.index % SUBSPACE_CHOICES)
        m = int(rng.integers(2, trial.max_dim + 1))
        return FixedRangeContext.from_subspace(random_subspace(m, int(rng.integers(1, m + 1)), rng))

    def run_trial(self, trial: Trial) -> None:
        rng = trial.rng
        tol = trial.tol
        eq = tol.eq_tol
        ctx = self.context_for(trial)
        m, d = ctx.ambient_dim, ctx.s.dim
        n = int(rng.integers(max(2, d), max(trial.max_dim, d) + 1))

        b = random_crs_member(ctx.s, n, rng)
        c = random_crs_member(ctx.s, n, rng)
        ba = analyze(b, tol)
        kappa = conditioning(ba.norm, ba.pinv_norm)
        trial.check("member", crs_membership(b, ctx, tol) and crs_membership(c, ctx, tol), dims=[m, n, d])

        factors = factorize_f(b, ctx, tol)
        trial.check("factor_positive", is_cp_member(factors.abs_b_star, ctx, tol))
        trial.check("factor_isometry", is_pis_member(factors.v, ctx, tol))
        with trial.guard("round_trip"):
            rebuilt = factorize_f_inverse(factors.abs_b_star, factors.v, ctx, tol)
            trial.bound("round_trip", op_norm(rebuilt - b), eq * (1.0 + ba.norm))

        trial.bound("d_r_is_norm", abs(metric_dx(b, c, MetricKind.R, tol) - op_norm(b - c)), 0.0)

        self._thompson(trial, ctx, factors.abs_b_star, polar_decompose(c, tol).abs_a_star)

        with trial.guard("intertwiner"):
            tw = fixed_range_intertwiner(b, c, ctx, tol)
            ca = analyze(c, tol)
            trial.check("intertwiner_in_gs", is_gs_member(tw.g, ctx, tol))
            trial.bound("intertwiner", tw.residual, eq * (1.0 + ca.norm) * kappa)

        with trial.guard("ls_action"):
            g = self._gs_element(ctx, rng, float(rng.uniform(0.1, 0.9)))
            moved = ls_action(g, random_invertible(n, rng), b, ctx, tol)
            trial.check("ls_action_keeps_range", crs_membership(moved, ctx, tol))

        self._section(trial, ctx, b, factors.v)

    def _gs_element(self, ctx: FixedRangeContext, rng: np.random.Generator, radius: float) -> np.ndarray:
        q = ctx.s.basis
        block = near_identity(ctx.s.dim, rng, radius)
        return q @ block @ adjoint(q) + ctx.complement

    def _thompson(self, trial: Trial, ctx: FixedRangeContext, a: np.ndarray, b: np.ndarray) -> None:
        tol = trial.tol
        eq = tol.eq_tol
        with trial.guard("thompson"):
            cert = thompson_scalars(a, b, tol)
            trial.check("thompson_same_component", cert.same_component)
            if cert.same_component:
                trial.bound("thompson_beta", -psd_floor(cert.beta * b - a), eq * (1.0 + cert.beta * op_norm(b)))
                trial.bound("thompson_alpha", -psd_floor(cert.alpha * a - b), eq * (1.0 + cert.alpha * op_norm(a)))

        rng = trial.rng
        m = ctx.ambient_dim
        other = random_subspace(m, int(rng.integers(1, m + 1)), rng)
        positive = polar_decompose(random_crs_member(other, m, rng), tol).abs_a_star
        expect_split = not (other.dim == m and ctx.s.dim == m)
        with trial.guard("thompson_other_range"):
            trial.check(
                "thompson_other_range",
                thompson_scalars(a, positive, tol).same_component != expect_split,
                dims=[ctx.s.dim, other.dim],
            )

    def _section(self, trial: Trial, ctx: FixedRangeContext, b: np.ndarray, w: np.ndarray) -> None:
        rng = trial.rng
        tol = trial.tol
        n = b.shape[1]
        radius = float(10.0 ** rng.uniform(-3.0, -1.0))
        g = self._gs_element(ctx, rng, radius)
        u = polar_decompose(near_identity(n, rng, radius), tol).v

        with trial.guard("orbit_member"):
            moved = l_prime_orbit_member(b, g, u, ctx, tol)
            trial.check(
                "orbit_member",
                crs_membership(moved, ctx, tol)
                and analyze(moved, tol).signature.nullity == analyze(b, tol).signature.nullity,
            )
            ma = analyze(moved, tol)
            factors = factorize_f(moved, ctx, tol)
            section = section_pi(factors.abs_b_star, factors.v, ctx, w, tol)
            kappa = conditioning(ma.norm, ma.pinv_norm)
            trial.bound("section", section.residual, tol.eq_tol * kappa, radius=radius)
