"""Rank-one gadget: Aₙ → A in norm while γ(Aₙ) → 0, for A outside M."""

from operators.metrics_perturbation import MetricKind, metric_dx_from, thm36_gadget
from operators.numeric_core import op_norm
from operators.operator_calculus import analyze
from operators.random_ops import random_operator, random_shape
from .base_suite import BaseSuite, Trial

GADGET_STEPS = range(2, 51)


class Thm36Suite(BaseSuite):
    name = "thm36"

    def run_trial(self, trial: Trial) -> None:
        rng = trial.rng
        tol = trial.tol
        m, n = random_shape(rng, trial.max_dim)
        # rank below min(m, n): neither injective nor surjective
        rank = int(rng.integers(0, min(m, n)))
        a = random_operator(m, n, rank, rng, sigma_min=0.1, sigma_max=float(rng.uniform(1.0, 3.0)))
        aa = analyze(a, tol)

        for step in GADGET_STEPS:
            a_n = thm36_gadget(a, step, tol)
            ana = analyze(a_n, tol)
            trial.bound(f"n{step:02d}.gamma", ana.gamma, 1.0 / step, rank=rank)
            trial.bound(f"n{step:02d}.distance", abs(op_norm(a_n - aa.a) - 1.0 / step), 0.0)
            trial.check(f"n{step:02d}.rank_up", ana.rank == aa.rank + 1)
            trial.bound(f"n{step:02d}.d_r_jump", 1.0, metric_dx_from(ana, aa, MetricKind.R))
