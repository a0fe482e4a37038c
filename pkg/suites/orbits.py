"""Orbit signatures, explicit intertwiners and the unitary-orbit criteria."""

import numpy as np

from operators.numeric_core import adjoint, min_singular_value, op_norm
from operators.operator_calculus import analyze, polar_decompose
from operators.orbit_geometry import (
    apply_action,
    big_pi,
    build_intertwiner,
    cor54_construction,
    orbit_report,
    partial_isometry_unitary_intertwiner,
    phi,
    prop53_intertwiner,
    prop53_verdicts,
    same_orbit,
    signature,
)
from operators.random_ops import random_invertible, random_operator, random_shape
from .base_suite import BaseSuite, Trial, conditioning


class OrbitsSuite(BaseSuite):
    name = "orbits"

    def run_trial(self, trial: Trial) -> None:
        rng = trial.rng
        tol = trial.tol
        eq = tol.eq_tol
        m, n = random_shape(rng, trial.max_dim)
        rank = int(rng.integers(0, min(m, n) + 1))
        a = random_operator(m, n, rank, rng, sigma_min=0.05)
        aa = analyze(a, tol)

        report = orbit_report(a, tol)
        trial.check("index", report.index == n - m, orbit_id=report.orbit_id)

        g, h = random_invertible(m, rng), random_invertible(n, rng)
        moved = apply_action(g, h, a, tol)
        trial.check("signature_invariant", signature(moved, tol) == aa.signature, orbit_id=report.orbit_id)

        # (G, H)·A against the projector pair computed from (G, H) alone
        with trial.guard("big_pi"):
            pair = big_pi(g, h, a, tol)
            target = phi(moved, tol)
            cond = np.linalg.cond(g) * np.linalg.cond(h)
            trial.bound("big_pi.range", op_norm(pair.p - target.p), eq * cond * conditioning(aa.norm, aa.pinv_norm))
            trial.bound("big_pi.corange", op_norm(pair.q - target.q), eq * cond * conditioning(aa.norm, aa.pinv_norm))

        b = random_operator(m, n, rank, rng, sigma_min=0.05)
        ba = analyze(b, tol)
        trial.check("same_orbit", same_orbit(a, b, tol))
        with trial.guard("intertwiner"):
            tw = build_intertwiner(a, b, tol)
            trial.bound(
                "intertwiner",
                tw.residual,
                eq * (1.0 + ba.norm),
                cond_g=float(np.linalg.cond(tw.g)),
                cond_h=float(np.linalg.cond(tw.h)),
            )
            trial.check("intertwiner_invertible", min_singular_value(tw.g) > eq and min_singular_value(tw.h) > eq)

        other_rank = int(rng.integers(0, min(m, n) + 1))
        c = random_operator(m, n, other_rank, rng, sigma_min=0.05)
        trial.check("orbit_separates_rank", same_orbit(a, c, tol) == (other_rank == rank))

        self._unitary_orbits(trial, a, b if rng.random() < 0.5 else c)

        with trial.guard("corner"):
            corner = cor54_construction(a, tol)
            trial.bound("corner.polar", corner.residual, eq)
            trial.bound("corner.inverse", corner.inverse_residual, eq)

    def _unitary_orbits(self, trial: Trial, a: np.ndarray, b: np.ndarray) -> None:
        tol = trial.tol
        eq = tol.eq_tol
        verdicts = prop53_verdicts(a, b, tol)
        trial.check(
            "unitary_criteria",
            verdicts.agree,
            same_orbit=verdicts.same_orbit,
            projector_ranks_match=verdicts.projector_ranks_match,
            partial_isometries_match=verdicts.partial_isometries_match,
        )
        if not verdicts.same_orbit:
            return

        aa, ba = analyze(a, tol), analyze(b, tol)
        kappa = conditioning(aa.norm, aa.pinv_norm) * conditioning(ba.norm, ba.pinv_norm)
        with trial.guard("unitary_intertwiner"):
            tw = prop53_intertwiner(a, b, tol)
            m = aa.a.shape[0]
            trial.bound("unitary_intertwiner.residual", tw.residual, eq * kappa)
            trial.bound("unitary_intertwiner.unitary", op_norm(adjoint(tw.g) @ tw.g - np.eye(m)), eq)

        with trial.guard("partial_isometries"):
            v_a = polar_decompose(a, tol).v
            v_b = polar_decompose(b, tol).v
            pw = partial_isometry_unitary_intertwiner(v_a, v_b, tol)
            trial.bound("partial_isometries", pw.residual, eq * 10.0)
