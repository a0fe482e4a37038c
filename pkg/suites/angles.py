"""Minimal angles, the sum criterion and the four nullspace criteria."""

import numpy as np

from operators.numeric_core import Subspace, adjoint
from operators.operator_calculus import analyze
from operators.random_ops import complex_gaussian, random_operator, random_shape, random_subspace
from operators.subspace_geometry import (
    cos_c,
    cos_c0,
    orth_complement,
    projector_gap_identity,
    prop22_verdict,
    prop23_verdicts,
)
from .base_suite import BaseSuite, Trial


def operator_with_nullspace(m: int, null: Subspace, rng: np.random.Generator) -> np.ndarray:
    """A random m×n operator whose nullspace is exactly `null` (requires m ≥ n − dim)."""
    comp = orth_complement(null)
    r = comp.dim
    if r == 0:
        return np.zeros((m, null.ambient_dim), dtype=np.complex128)
    return random_operator(m, r, r, rng, sigma_min=0.2) @ adjoint(comp.basis)


class AnglesSuite(BaseSuite):
    name = "angles"

    def run_trial(self, trial: Trial) -> None:
        rng = trial.rng
        tol = trial.tol
        n = int(rng.integers(2, trial.max_dim + 1))
        m_sub = random_subspace(n, int(rng.integers(0, n + 1)), rng)
        n_sub = random_subspace(n, int(rng.integers(0, n + 1)), rng)

        c0 = cos_c0(m_sub, n_sub, tol)
        c = cos_c(m_sub, n_sub, tol)
        trial.check("c0_range", 0.0 <= c0 <= 1.0, c0=c0)
        trial.bound("c_le_c0", c, c0, dims=[m_sub.dim, n_sub.dim])
        trial.check("sum_criterion", prop22_verdict(m_sub, n_sub, tol).agree, dims=[m_sub.dim, n_sub.dim])
        c_value, gap = projector_gap_identity(m_sub, n_sub, tol)
        trial.report("projector_gap_identity", c=c_value, projector_gap=gap)

        self._nullspace_criteria(trial)

    def _nullspace_criteria(self, trial: Trial) -> None:
        rng = trial.rng
        tol = trial.tol
        m, n = random_shape(rng, trial.max_dim)
        r = int(rng.integers(0, min(m, n) + 1))
        b = random_operator(m, n, r, rng, sigma_min=0.2)
        ba = analyze(b, tol)
        k = ba.signature.nullity

        if rng.random() < 0.5 and 0 < k < n:
            # a nullspace for C that contains a direction of N(B)⊥, so all four criteria fail
            x = ba.p_corange @ complex_gaussian(rng, (n,))
            rest = complex_gaussian(rng, (n, k - 1))
            null_c = Subspace.span(np.column_stack([x, rest]), tol)
            construction = "tilted"
        else:
            null_c = random_subspace(n, int(rng.integers(0, n + 1)) if rng.random() < 0.3 else k, rng)
            construction = "generic"
        if n - null_c.dim > m:
            return
        c = operator_with_nullspace(m, null_c, rng)

        with trial.guard("nullspace_criteria"):
            verdicts = prop23_verdicts(b, c, tol)
            evidence = {
                "construction": construction,
                "verdicts": list(verdicts.as_tuple()),
                "iv_as_printed": verdicts.iv_as_printed,
            }
            if verdicts.equal_nullity:
                trial.check("nullspace_criteria", len(set(verdicts.as_tuple())) == 1, **evidence)
                if construction == "tilted":
                    trial.check("tilted_fails", not any(verdicts.as_tuple()), **evidence)
            else:
                trial.report("nullspace_criteria_unequal_nullity", **evidence)
