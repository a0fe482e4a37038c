"""The convergence battery on generated sequences, with its side statements."""

from operators.convergence_lab import (
    SequenceKind,
    build_generalized_inverse,
    discontinuity_demo,
    evaluate_shadows,
    full_report,
    generate_sequence,
)
from operators.operator_calculus import analyze
from operators.random_ops import random_operator, random_shape
from utils.seeding import trial_seed
from .base_suite import BaseSuite, Trial

DIVERGENT_KINDS = (SequenceKind.RANK_DROPPING, SequenceKind.ISOMETRY_FLIP, SequenceKind.PINV_BLOWUP)
DEMO_LENGTH = 20


def trial_kind(index: int) -> SequenceKind:
    """Half the trials converge; the rest cycle through the divergent constructions."""
    if index % 2 == 0:
        return SequenceKind.RANK_PRESERVING
    return DIVERGENT_KINDS[(index // 2) % len(DIVERGENT_KINDS)]


class Thm48Suite(BaseSuite):
    name = "thm48"

    def run_trial(self, trial: Trial) -> None:
        rng = trial.rng
        tol = trial.tol
        kind = trial_kind(trial.index)
        m, n = random_shape(rng, trial.max_dim)
        if kind is SequenceKind.RANK_PRESERVING:
            rank = int(rng.integers(0, min(m, n) + 1))
        else:
            rank = int(rng.integers(0, min(m, n)))
        scale = float(10.0 ** rng.uniform(-0.5, 0.5))
        # condition number at most 5 keeps the tail of a length-50 sequence inside the 1/(2‖B†‖) ball
        b = random_operator(m, n, rank, rng, sigma_min=0.2 * scale, sigma_max=scale)

        seq = generate_sequence(kind, b, seed=trial_seed(trial.seed, self.name, trial.index), tol=tol)
        report = full_report(seq, tol, trial.thresholds)
        expected = kind is SequenceKind.RANK_PRESERVING
        evidence = {"kind": kind.value, "verdicts": report.verdicts}
        trial.check("unanimous", report.consistent, **evidence)
        trial.check("expected_verdict", all(v == expected for v in report.verdicts.values()), **evidence)
        trial.report("evidence", kind=kind.value, **report.evidence)

        if expected:
            self._convergent_extras(trial, seq)
        else:
            self._divergent_extras(trial, seq)

    def _convergent_extras(self, trial: Trial, seq) -> None:
        tol = trial.tol
        shadows = evaluate_shadows(seq, tol, trial.thresholds)
        trial.bound("uniform_angle", shadows.uniform_angle, 1.0 - tol.angle_one_tol)
        trial.bound("lipschitz", shadows.lipschitz_ratio, shadows.lipschitz_constant)
        trial.check("polar_converges", shadows.polar_vanishes, polar_gap=shadows.polar_gap)
        trial.check("metrics_agree", shadows.metrics_agree)
        trial.report("gamma_relative_gap", value=shadows.gamma_relative_gap)

        ba = analyze(seq.base, tol)
        for label, term in (("mid", seq.terms[seq.length // 2]), ("last", seq.terms[-1])):
            with trial.guard(f"inner_inverse_{label}"):
                built = build_generalized_inverse(ba.a, term, tol)
                bn_norm = analyze(term, tol).norm
                scale = (1.0 + bn_norm * built.norm) ** 2
                trial.bound(f"inner_inverse_{label}.inner", built.inner_residual, tol.eq_tol * scale)
                trial.bound(f"inner_inverse_{label}.outer", built.outer_residual, tol.eq_tol * scale)
                trial.bound(f"inner_inverse_{label}.norm", built.norm, built.norm_bound)

    def _divergent_extras(self, trial: Trial, seq) -> None:
        if seq.kind is SequenceKind.ISOMETRY_FLIP:
            gaps = seq.evidence["partner_isometry_gap"]
            trial.bound(
                "partner_isometry_gap",
                max(abs(g - 2.0) for g in gaps),
                0.0,
                final_partner_distance=seq.evidence["partner_distance"][-1],
            )
        if seq.kind is SequenceKind.PINV_BLOWUP:
            demo = discontinuity_demo(seq.base, DEMO_LENGTH, trial.tol)
            for cert in demo.certificates:
                trial.certificate(f"discontinuity.{cert.name}", cert)
