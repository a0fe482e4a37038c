"""Tests for orbits of the two-sided action and their sections."""

import numpy as np
import pytest

from operators.errors import OutsideNeighborhoodError, PreconditionError, ShapeMismatchError, SingularOperatorError
from operators.metrics_perturbation import MetricKind
from operators.numeric_core import Subspace, adjoint, op_norm
from operators.operator_calculus import is_orthogonal_projector, polar_decompose
from operators.orbit_geometry import (
    apply_action,
    big_pi,
    build_intertwiner,
    cor54_construction,
    local_section_sigma,
    orbit_distance_witness,
    orbit_report,
    partial_isometry_unitary_intertwiner,
    phi,
    projection_formula_unsquared,
    projection_under_g,
    projector_unitary_witness,
    prop53_intertwiner,
    prop53_verdicts,
    same_orbit,
    sf_index,
)
from operators.random_ops import near_identity, random_invertible, random_operator, random_subspace


class TestAction:
    """Test (G, H)·A = G·A·H⁻¹."""

    def test_identity_action(self, rng):
        """Test (I, I) fixes A."""
        a = random_operator(3, 4, 2, rng)

        assert op_norm(apply_action(np.eye(3), np.eye(4), a) - a) < 1e-14

    def test_matches_explicit_inverse(self, rng):
        """Test the solve-based action against G·A·inv(H)."""
        a = random_operator(3, 3, 2, rng)
        g, h = random_invertible(3, rng), random_invertible(3, rng)

        assert op_norm(apply_action(g, h, a) - g @ a @ np.linalg.inv(h)) < 1e-10

    def test_singular_factor(self):
        """Test a singular G is refused."""
        with pytest.raises(SingularOperatorError):
            apply_action(np.diag([1.0, 0.0]), np.eye(2), np.eye(2))

    def test_shape_mismatch(self):
        """Test factors of the wrong size are refused."""
        with pytest.raises(ShapeMismatchError):
            apply_action(np.eye(3), np.eye(2), np.eye(2))


class TestOrbits:
    """Test signature, index and orbit membership."""

    def test_report(self):
        """Test the zero 2×3 operator has signature (3, 0, 2) and index 1."""
        report = orbit_report(np.zeros((2, 3)))

        assert report.signature == [3, 0, 2]
        assert report.index == 1
        assert report.orbit_id == "k3-l0-m2"

    def test_index_of_invertible(self):
        """Test invertible operators have index 0."""
        assert sf_index(np.eye(3)) == 0

    def test_same_orbit(self):
        """Test orbit membership is decided by rank within a shape."""
        assert same_orbit(np.diag([1.0, 0.0]), np.diag([0.0, 5.0]))
        assert not same_orbit(np.diag([1.0, 0.0]), np.eye(2))

    def test_same_orbit_shape_mismatch(self):
        """Test operators of different shapes are not compared."""
        with pytest.raises(ShapeMismatchError):
            same_orbit(np.eye(2), np.eye(3))

    def test_action_preserves_signature(self, rng):
        """Test G·A·H⁻¹ stays in the orbit of A."""
        a = random_operator(4, 3, 2, rng)
        moved = apply_action(random_invertible(4, rng), random_invertible(3, rng), a)

        assert same_orbit(a, moved)


class TestIntertwiner:
    """Test explicit intertwiners."""

    def test_random_pair(self, rng):
        """Test G·A·H⁻¹ = B for two random operators of equal rank."""
        for _ in range(10):
            a = random_operator(4, 3, 2, rng, sigma_min=0.1)
            b = random_operator(4, 3, 2, rng, sigma_min=0.1)
            tw = build_intertwiner(a, b)

            assert tw.residual < 1e-9
            assert op_norm(apply_action(tw.g, tw.h, a) - b) < 1e-9

    def test_zero_operators(self):
        """Test 0 is intertwined with 0."""
        tw = build_intertwiner(np.zeros((2, 3)), np.zeros((2, 3)))

        assert tw.residual == pytest.approx(0.0, abs=1e-15)

    def test_different_orbits(self):
        """Test operators of different rank cannot be intertwined."""
        with pytest.raises(PreconditionError):
            build_intertwiner(np.eye(2), np.diag([1.0, 0.0]))


class TestUnitaryOrbit:
    """Test the projector-pair description of orbits."""

    def test_phi(self):
        """Test φ(diag(2, 0)) = (diag(1, 0), diag(1, 0))."""
        pair = phi(np.diag([2.0, 0.0]))

        np.testing.assert_allclose(pair.p, np.diag([1.0, 0.0]), atol=1e-15)
        np.testing.assert_allclose(pair.q, np.diag([1.0, 0.0]), atol=1e-15)

    def test_projector_witness(self, rng):
        """Test U·P·U* = Q for two projections of rank 2 in C⁴."""
        p = random_subspace(4, 2, rng).projector()
        q = random_subspace(4, 2, rng).projector()
        u = projector_unitary_witness(p, q)

        assert op_norm(adjoint(u) @ u - np.eye(4)) < 1e-12
        assert op_norm(u @ p @ adjoint(u) - q) < 1e-10

    def test_projector_witness_rank_mismatch(self):
        """Test projections of different rank are not unitarily equivalent."""
        with pytest.raises(PreconditionError):
            projector_unitary_witness(np.diag([1.0, 0.0]), np.eye(2))

    def test_criteria_agree(self, rng):
        """Test the three orbit criteria agree on random pairs."""
        for _ in range(20):
            a = random_operator(3, 4, int(rng.integers(0, 4)), rng)
            b = random_operator(3, 4, int(rng.integers(0, 4)), rng)

            assert prop53_verdicts(a, b).agree

    def test_unitary_left_factor(self, rng):
        """Test B = U·A·H⁻¹ with U unitary."""
        a = random_operator(3, 3, 2, rng, sigma_min=0.2)
        b = random_operator(3, 3, 2, rng, sigma_min=0.2)
        tw = prop53_intertwiner(a, b)

        assert op_norm(adjoint(tw.g) @ tw.g - np.eye(3)) < 1e-12
        assert tw.residual < 1e-9

    def test_partial_isometries(self, rng):
        """Test U₁·V·U₂* = W for polar isometries of equal rank."""
        v = polar_decompose(random_operator(4, 3, 2, rng)).v
        w = polar_decompose(random_operator(4, 3, 2, rng)).v
        tw = partial_isometry_unitary_intertwiner(v, w)

        assert tw.residual < 1e-10


class TestCornerConstruction:
    """Test G = |A†*| + I − P_{R(A)}."""

    def test_diagonal(self):
        """Test diag(2, 0) gives G = diag(½, 1) with inverse diag(2, 1)."""
        corner = cor54_construction(np.diag([2.0, 0.0]))

        np.testing.assert_allclose(corner.g, np.diag([0.5, 1.0]), atol=1e-14)
        np.testing.assert_allclose(corner.g_inv, np.diag([2.0, 1.0]), atol=1e-14)
        assert corner.residual < 1e-14
        assert corner.inverse_residual < 1e-14

    def test_random(self, rng):
        """Test G·A = V_A and G·G⁻¹ = I on a random rectangular operator."""
        corner = cor54_construction(random_operator(4, 3, 2, rng, sigma_min=0.1))

        assert corner.residual < 1e-12
        assert corner.inverse_residual < 1e-12

    @pytest.mark.parametrize("shape, rank", [((4, 3), 2), ((3, 5), 2), ((5, 5), 3), ((4, 4), 0)])
    def test_inverse_on_many_draws(self, rng, shape, rank):
        """Test G·G⁻¹ = I to rounding across many draws, including rank-deficient ones."""
        worst = max(
            cor54_construction(random_operator(*shape, rank, rng, sigma_min=0.1)).inverse_residual
            for _ in range(200)
        )

        assert worst < 1e-12


class TestProjectionUnderG:
    """Test the projection onto G(S)."""

    def test_identity(self, rng):
        """Test G = I returns P_S."""
        s = random_subspace(4, 2, rng)

        assert op_norm(projection_under_g(np.eye(4), s) - s.projector()) < 1e-12

    def test_random_g(self, rng):
        """Test the result is the orthogonal projection onto span(G·Q_S)."""
        s = random_subspace(4, 2, rng)
        g = random_invertible(4, rng)
        p = projection_under_g(g, s)

        assert is_orthogonal_projector(p)
        assert op_norm(p - Subspace.span(g @ s.basis).projector()) < 1e-9

    def test_unsquared_formula_is_reported_only(self, rng):
        """Test the unsquared variant agrees for unitary G."""
        s = random_subspace(3, 1, rng)

        assert op_norm(projection_formula_unsquared(np.eye(3), s) - s.projector()) < 1e-12

    def test_ambient_mismatch(self):
        """Test S must live where G acts."""
        with pytest.raises(ShapeMismatchError):
            projection_under_g(np.eye(3), Subspace.full(2))

    def test_big_pi(self, rng):
        """Test Π(G, H) equals φ(G·A·H⁻¹)."""
        a = random_operator(3, 4, 2, rng, sigma_min=0.2)
        g, h = random_invertible(3, rng), random_invertible(4, rng)
        pair = big_pi(g, h, a)
        expected = phi(apply_action(g, h, a))

        assert op_norm(pair.p - expected.p) < 1e-8
        assert op_norm(pair.q - expected.q) < 1e-8


class TestLocalSection:
    """Test σ near A."""

    def test_nearby_operator(self, rng):
        """Test σ(B)·A = B for B close to A in the same orbit."""
        a = random_operator(3, 4, 2, rng, sigma_min=0.3)
        b = near_identity(3, rng, 1e-2) @ a @ near_identity(4, rng, 1e-2)

        assert local_section_sigma(a, b).residual < 1e-9

    def test_section_at_a(self, rng):
        """Test σ(A) = (P + I − P, P + I − P) = (I, I)."""
        a = random_operator(3, 3, 2, rng, sigma_min=0.3)
        tw = local_section_sigma(a, a)

        assert op_norm(tw.g - np.eye(3)) < 1e-10
        assert op_norm(tw.h - np.eye(3)) < 1e-10

    def test_outside_neighborhood(self):
        """Test a rank drop makes H singular."""
        with pytest.raises(OutsideNeighborhoodError):
            local_section_sigma(np.eye(2), np.diag([1.0, 0.0]))


class TestDistanceWitness:
    """Test the distance-one witness between different orbits."""

    @pytest.mark.parametrize("kind", [MetricKind.R, MetricKind.N])
    def test_identity_against_projector(self, kind):
        """Test I₂ and diag(1, 0) have projector gap 1 and a witness within 1 + ε."""
        witness = orbit_distance_witness(np.eye(2), np.diag([1.0, 0.0]), kind, epsilon=0.05)

        assert witness.lower_bound_is_one
        assert all(gap == pytest.approx(1.0) for gap in witness.projector_gaps)
        assert 1.0 - 1e-12 <= witness.witness_dx <= 1.05

    def test_deterministic(self):
        """Test equal seeds give equal witnesses."""
        first = orbit_distance_witness(np.eye(2), np.zeros((2, 2)), seed=3)
        second = orbit_distance_witness(np.eye(2), np.zeros((2, 2)), seed=3)

        assert first.witness_dx == second.witness_dx

    def test_same_orbit_refused(self):
        """Test a same-orbit pair has no distance-one witness."""
        with pytest.raises(PreconditionError):
            orbit_distance_witness(np.diag([1.0, 0.0]), np.diag([0.0, 1.0]))

    def test_epsilon_must_be_positive(self):
        """Test ε ≤ 0 is rejected."""
        with pytest.raises(ValueError):
            orbit_distance_witness(np.eye(2), np.zeros((2, 2)), epsilon=0.0)
