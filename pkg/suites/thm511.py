"""Orbits of different rank sit at d_R / d_N distance one."""

from operators.metrics_perturbation import MetricKind
from operators.orbit_geometry import orbit_distance_witness
from operators.random_ops import random_operator, random_shape
from utils.seeding import trial_seed
from .base_suite import BaseSuite, Trial

EPSILONS = (0.1, 0.01)


class Thm511Suite(BaseSuite):
    name = "thm511"

    def run_trial(self, trial: Trial) -> None:
        rng = trial.rng
        tol = trial.tol
        m, n = random_shape(rng, trial.max_dim)
        k = min(m, n)
        rank_a = int(rng.integers(0, k + 1))
        rank_b = int((rank_a + rng.integers(1, k + 1)) % (k + 1))
        a = random_operator(m, n, rank_a, rng, sigma_min=0.05)
        b = random_operator(m, n, rank_b, rng, sigma_min=0.05)
        seed = trial_seed(trial.seed, self.name, trial.index)

        for kind in (MetricKind.R, MetricKind.N):
            for epsilon in EPSILONS:
                label = f"{kind.value}_eps{epsilon:g}"
                with trial.guard(label):
                    witness = orbit_distance_witness(a, b, kind, epsilon, tol, seed=seed)
                    trial.check(
                        f"{label}.representatives_at_one",
                        witness.lower_bound_is_one,
                        gaps=witness.projector_gaps,
                        ranks=[rank_a, rank_b],
                    )
                    trial.bound(f"{label}.scaled_witness", abs(witness.witness_dx - 1.0), epsilon)
