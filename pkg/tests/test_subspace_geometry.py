"""Tests for minimal angles and the sum/intersection criteria."""

import math

import numpy as np
import pytest

from operators.errors import ShapeMismatchError
from operators.numeric_core import Subspace, op_norm
from operators.random_ops import random_operator, random_subspace
from operators.subspace_geometry import (
    angle,
    contains,
    cos_c,
    cos_c0,
    intersect,
    orth_complement,
    projector_gap_identity,
    prop22_verdict,
    prop23_verdicts,
    same_subspace,
    subspace_sum_dim,
)

E1 = Subspace(2, np.array([[1.0], [0.0]]))
E2 = Subspace(2, np.array([[0.0], [1.0]]))
DIAGONAL = Subspace(2, np.array([[1.0], [1.0]]) / math.sqrt(2.0))


def line(*coords):
    v = np.array(coords, dtype=float)
    return Subspace(len(coords), (v / np.linalg.norm(v)).reshape(-1, 1))


class TestCosines:
    """Test c₀ and c."""

    def test_orthogonal_lines(self):
        """Test orthogonal lines have c₀ = c = 0."""
        assert cos_c0(E1, E2) == pytest.approx(0.0)
        assert cos_c(E1, E2) == pytest.approx(0.0)

    def test_identical_lines(self):
        """Test a line against itself: c₀ = 1 but c = 0."""
        assert cos_c0(E1, E1) == pytest.approx(1.0)
        assert cos_c(E1, E1) == pytest.approx(0.0)

    def test_diagonal(self):
        """Test span(e₁) against span((e₁+e₂)/√2) gives √2/2 for both cosines."""
        assert cos_c0(E1, DIAGONAL) == pytest.approx(math.sqrt(2.0) / 2.0)
        assert cos_c(E1, DIAGONAL) == pytest.approx(math.sqrt(2.0) / 2.0)

    def test_zero_subspace(self):
        """Test the zero subspace makes c₀ vanish."""
        assert cos_c0(Subspace.zero(2), E1) == 0.0

    def test_angles(self):
        """Test α = arccos c on the three reference pairs."""
        assert angle(E1, E1) == pytest.approx(math.pi / 2.0)
        assert angle(E1, E2) == pytest.approx(math.pi / 2.0)
        assert angle(E1, DIAGONAL) == pytest.approx(math.pi / 4.0)

    def test_ambient_mismatch(self):
        """Test subspaces of different ambient spaces are rejected."""
        with pytest.raises(ShapeMismatchError):
            cos_c0(E1, Subspace.full(3))


class TestIntersection:
    """Test intersect() and friends."""

    def test_same_subspace(self, rng):
        """Test M ∩ M = M."""
        m = random_subspace(4, 2, rng)

        assert same_subspace(intersect(m, m), m)

    def test_orthogonal_lines(self):
        """Test orthogonal lines meet only at zero."""
        assert intersect(E1, E2).dim == 0

    def test_planes_sharing_a_line(self):
        """Test two planes in C³ through a common line intersect in it."""
        m = Subspace.span(np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]]))
        n = Subspace.span(np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 1.0]]))
        common = intersect(m, n)

        assert common.dim == 1
        assert op_norm(common.projector() - np.diag([1.0, 0.0, 0.0])) < 1e-10

    def test_sum_dimension(self):
        """Test dim(M + N) counts shared directions once."""
        m = Subspace.span(np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]]))
        n = Subspace.span(np.array([[1.0, 0.0], [0.0, 0.0], [0.0, 1.0]]))

        assert subspace_sum_dim(m, n) == 3
        assert subspace_sum_dim(m, m) == 2
        assert subspace_sum_dim(Subspace.zero(3), Subspace.zero(3)) == 0

    def test_contains(self):
        """Test inclusion."""
        plane = Subspace.span(np.eye(3)[:, :2])

        assert contains(plane, line(1.0, 1.0, 0.0))
        assert not contains(plane, line(0.0, 1.0, 1.0))
        assert contains(plane, Subspace.zero(3))

    def test_orth_complement(self, rng):
        """Test M ⊕ M⊥ is the whole space."""
        m = random_subspace(5, 2, rng)
        perp = orth_complement(m)

        assert perp.dim == 3
        assert op_norm(m.projector() + perp.projector() - np.eye(5)) < 1e-12
        assert orth_complement(Subspace.zero(3)).dim == 3
        assert orth_complement(Subspace.full(3)).dim == 0


class TestSumCriterion:
    """Test H = M + N ⟺ c₀(M⊥, N⊥) < 1."""

    def test_complementary_lines(self):
        """Test two distinct lines fill C²."""
        verdict = prop22_verdict(E1, DIAGONAL)

        assert verdict.sum_is_everything
        assert verdict.c0_perp_lt_1
        assert verdict.agree

    def test_same_line(self):
        """Test a line twice does not fill C²."""
        verdict = prop22_verdict(E1, E1)

        assert not verdict.sum_is_everything
        assert not verdict.c0_perp_lt_1

    def test_random_pairs_agree(self, rng):
        """Test both readings agree on random subspaces of C⁵."""
        for _ in range(50):
            m = random_subspace(5, int(rng.integers(0, 6)), rng)
            n = random_subspace(5, int(rng.integers(0, 6)), rng)

            assert prop22_verdict(m, n).agree


class TestNullspaceCriteria:
    """Test the four nullspace perturbation criteria."""

    def test_equal_operators(self, rng):
        """Test B = C satisfies all four."""
        b = random_operator(3, 4, 2, rng)

        assert prop23_verdicts(b, b).as_tuple() == (True, True, True, True)

    def test_orthogonal_nullspaces(self):
        """Test N(diag(1,0)) ⟂ N(diag(0,1)) fails (i) with gap 1."""
        criteria = prop23_verdicts(np.diag([1.0, 0.0]), np.diag([0.0, 1.0]))

        assert criteria.as_tuple() == (False, False, False, False)
        assert criteria.equal_nullity

    def test_small_perturbation(self, rng):
        """Test a nearby operator of the same rank satisfies all four."""
        b = random_operator(4, 4, 2, rng, sigma_min=0.5)
        c = b @ (np.eye(4) + 1e-4 * random_operator(4, 4, 4, rng))

        assert prop23_verdicts(b, c).as_tuple() == (True, True, True, True)

    def test_shape_mismatch(self):
        """Test operators of different shapes are rejected."""
        with pytest.raises(ShapeMismatchError):
            prop23_verdicts(np.eye(2), np.eye(3))


class TestProjectorGap:
    """Test the reported projector gap pair."""

    def test_returns_pair(self):
        """Test c(M, N) and ‖P_M − P_{N⊥}‖ for two lines."""
        c, gap = projector_gap_identity(E1, DIAGONAL)

        assert c == pytest.approx(math.sqrt(2.0) / 2.0)
        assert 0.0 <= gap <= 1.0 + 1e-12
