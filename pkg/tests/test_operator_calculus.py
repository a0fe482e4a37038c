"""Tests for the Moore-Penrose calculus."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from operators.errors import PreconditionError, ShapeMismatchError
from operators.numeric_core import adjoint, op_norm
from operators.operator_calculus import (
    analyze,
    check_generalized_inverse,
    is_orthogonal_projector,
    is_partial_isometry,
    is_psd,
    pinv,
    pinv_difference_identity,
    polar_decompose,
    polar_via_pinv,
    prop35_certificates,
    prop35_projector_certificates,
    psd_sqrt,
    reduced_min_modulus,
    remark21_bound_certificate,
)
from operators.random_ops import haar_unitary, near_identity, random_inner_inverse, random_operator


class TestAnalyze:
    """Test analyze() and the pseudoinverse."""

    def test_identity(self):
        """Test I₂ is its own pseudoinverse with γ = 1."""
        aa = analyze(np.eye(2))

        np.testing.assert_allclose(aa.pinv, np.eye(2), atol=1e-15)
        assert aa.gamma == pytest.approx(1.0)
        assert aa.signature.as_list() == [0, 2, 0]

    def test_rank_one(self):
        """Test [[1,1],[1,1]]† = ¼·[[1,1],[1,1]] and γ = 2."""
        aa = analyze(np.ones((2, 2)))

        np.testing.assert_allclose(aa.pinv, 0.25 * np.ones((2, 2)), atol=1e-14)
        assert aa.gamma == pytest.approx(2.0)
        assert aa.rank == 1

    def test_zero_operator(self):
        """Test the zero 2×3 operator has a zero 3×2 pseudoinverse and γ = +∞."""
        aa = analyze(np.zeros((2, 3)))

        assert aa.pinv.shape == (3, 2)
        assert op_norm(aa.pinv) == 0.0
        assert math.isinf(aa.gamma)
        assert aa.signature.as_list() == [3, 0, 2]

    def test_penrose_equations(self, rng):
        """Test the four Penrose equations on a rank-deficient operator."""
        a = random_operator(5, 4, 2, rng)
        aa = analyze(a)

        assert max(aa.penrose_residuals()) <= 1e-10 * (1.0 + aa.norm)

    def test_projectors(self, rng):
        """Test AA† = P_{R(A)} and A†A = P_{R(A*)}."""
        aa = analyze(random_operator(4, 6, 3, rng))

        assert op_norm(aa.a @ aa.pinv - aa.range_space().projector()) < 1e-10
        assert op_norm(aa.pinv @ aa.a - aa.corange_space().projector()) < 1e-10
        assert op_norm(aa.p_defect + aa.p_range - np.eye(4)) < 1e-12

    def test_double_pinv(self, rng):
        """Test (A†)† = A."""
        a = random_operator(3, 5, 2, rng, sigma_min=0.1)

        assert op_norm(pinv(pinv(a)) - a) <= 1e-10 * (1.0 + op_norm(a))

    @settings(max_examples=30, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), m=st.integers(1, 6), n=st.integers(1, 6), data=st.data())
    def test_gamma_is_inverse_pinv_norm(self, seed, m, n, data):
        """Test γ(A) = ‖A†‖⁻¹ and γ(A) = γ(A*) = γ(|A|) for nonzero A."""
        rank = data.draw(st.integers(1, min(m, n)))
        a = random_operator(m, n, rank, np.random.default_rng(seed), sigma_min=1e-2)
        aa = analyze(a)

        assert aa.gamma == pytest.approx(1.0 / aa.pinv_norm, rel=1e-10)
        assert reduced_min_modulus(adjoint(a)) == pytest.approx(aa.gamma, rel=1e-8)
        assert reduced_min_modulus(polar_decompose(a).abs_a) == pytest.approx(aa.gamma, rel=1e-8)
        assert reduced_min_modulus(adjoint(a) @ a) == pytest.approx(aa.gamma**2, rel=1e-8)


class TestReducedMinModulus:
    """Test γ on hand-computed examples."""

    def test_diagonal(self):
        """Test γ(diag(3, 2)) = 2."""
        assert reduced_min_modulus(np.diag([3.0, 2.0])) == pytest.approx(2.0)

    def test_diagonal_with_kernel(self):
        """Test γ(diag(5, 0)) = 5: the kernel is excluded."""
        assert reduced_min_modulus(np.diag([5.0, 0.0])) == pytest.approx(5.0)

    def test_zero(self):
        """Test γ(0) = +∞."""
        assert math.isinf(reduced_min_modulus(np.zeros((2, 2))))


class TestPolarDecomposition:
    """Test polar parts."""

    def test_unitary(self, rng):
        """Test a unitary is its own polar isometry with |A| = I."""
        u = haar_unitary(3, rng)
        polar = polar_decompose(u)

        assert op_norm(polar.v - u) < 1e-12
        assert op_norm(polar.abs_a - np.eye(3)) < 1e-12

    def test_diagonal_with_kernel(self):
        """Test diag(2, 0) = diag(1, 0)·diag(2, 0)."""
        polar = polar_decompose(np.diag([2.0, 0.0]))

        np.testing.assert_allclose(polar.v, np.diag([1.0, 0.0]), atol=1e-15)
        np.testing.assert_allclose(polar.abs_a, np.diag([2.0, 0.0]), atol=1e-15)

    def test_zero(self):
        """Test the zero operator has zero polar parts."""
        polar = polar_decompose(np.zeros((2, 3)))

        assert op_norm(polar.v) == 0.0
        assert op_norm(polar.abs_a) == 0.0
        assert polar.abs_a.shape == (3, 3)
        assert polar.abs_a_star.shape == (2, 2)

    def test_factorizations(self, rng):
        """Test A = V|A| = |A*|V with V a partial isometry."""
        a = random_operator(4, 3, 2, rng)
        polar = polar_decompose(a)

        assert op_norm(polar.v @ polar.abs_a - a) < 1e-12
        assert op_norm(polar.abs_a_star @ polar.v - a) < 1e-12
        assert is_partial_isometry(polar.v)

    def test_polar_via_pinv(self, rng):
        """Test (A*)†|A| recovers the polar isometry."""
        a = random_operator(3, 4, 2, rng, sigma_min=0.1)

        assert op_norm(polar_via_pinv(a) - polar_decompose(a).v) < 1e-10


class TestPredicates:
    """Test structural predicates."""

    def test_partial_isometries(self):
        """Test I₃ and diag(1, 0) are partial isometries and diag(2, 0) is not."""
        assert is_partial_isometry(np.eye(3))
        assert is_partial_isometry(np.diag([1.0, 0.0]))
        assert not is_partial_isometry(np.diag([2.0, 0.0]))

    def test_orthogonal_projector(self):
        """Test projector recognition."""
        assert is_orthogonal_projector(np.diag([1.0, 0.0]))
        assert not is_orthogonal_projector(np.array([[1.0, 1.0], [0.0, 0.0]]))
        assert not is_orthogonal_projector(np.ones((2, 3)))

    def test_psd(self):
        """Test positive semidefinite recognition."""
        assert is_psd(np.diag([1.0, 0.0]))
        assert not is_psd(np.diag([1.0, -1.0]))

    def test_psd_sqrt(self):
        """Test the square root of diag(4, 0) is diag(2, 0)."""
        np.testing.assert_allclose(psd_sqrt(np.diag([4.0, 0.0])), np.diag([2.0, 0.0]), atol=1e-15)

    def test_psd_sqrt_rejects_indefinite(self):
        """Test an indefinite matrix has no principal square root here."""
        with pytest.raises(PreconditionError):
            psd_sqrt(np.diag([1.0, -1.0]))


class TestDifferenceIdentity:
    """Test the three-term expansion of A† − B†."""

    def test_equal_operators(self):
        """Test A = B = I leaves no residual."""
        assert pinv_difference_identity(np.eye(2), np.eye(2)) == pytest.approx(0.0, abs=1e-15)

    def test_scalar_multiple(self):
        """Test A = I₂, B = 2I₂."""
        assert pinv_difference_identity(np.eye(2), 2.0 * np.eye(2)) <= 1e-12

    def test_random_pairs(self, rng):
        """Test random 4×3 pairs of different rank."""
        for _ in range(20):
            a = random_operator(4, 3, int(rng.integers(0, 4)), rng, sigma_min=0.1)
            b = random_operator(4, 3, int(rng.integers(0, 4)), rng, sigma_min=0.1)

            assert pinv_difference_identity(a, b) <= 1e-10

    def test_shape_mismatch(self):
        """Test operands of different shape are rejected."""
        with pytest.raises(ShapeMismatchError):
            pinv_difference_identity(np.eye(2), np.eye(3))

    def test_bound_certificate(self, rng):
        """Test the norm bound read off the expansion."""
        a = random_operator(3, 3, 2, rng, sigma_min=0.2)
        b = random_operator(3, 3, 3, rng, sigma_min=0.2)
        cert = remark21_bound_certificate(a, b)

        assert cert.holds
        assert cert.slack >= 0.0
        assert cert.inputs_digest


class TestGeneralizedInverses:
    """Test inner inverses and their certificates."""

    def test_pinv_is_inner_inverse(self, rng):
        """Test (B, B†) satisfies BB′B = B."""
        b = random_operator(3, 4, 2, rng)

        assert check_generalized_inverse(b, pinv(b))

    def test_scaled_identity_is_not(self):
        """Test (I, 2I) fails BB′B = B."""
        assert not check_generalized_inverse(np.eye(2), 2.0 * np.eye(2))

    def test_free_corner(self):
        """Test (diag(1,0), [[1,0],[0,c]]) is an inner inverse for any c."""
        for c in (0.0, 1.0, -7.5, 3j):
            assert check_generalized_inverse(np.diag([1.0, 0.0]), np.array([[1.0, 0.0], [0.0, c]]))

    def test_wrong_shape(self):
        """Test B′ must have the transposed shape."""
        with pytest.raises(ShapeMismatchError):
            check_generalized_inverse(np.ones((2, 3)), np.ones((2, 3)))

    def test_prop35_on_random_inner_inverse(self, rng):
        """Test γ(B) ≥ 1/‖B′‖ and ‖B†‖ ≤ ‖B′‖."""
        b = random_operator(4, 3, 2, rng, sigma_min=0.1)
        bp = random_inner_inverse(b, rng)
        certs = prop35_certificates(b, bp)

        assert [c.name for c in certs] == ["prop35_gamma", "prop35_pinv_norm"]
        assert all(c.holds for c in certs)

    def test_prop35_zero_operator_skips_gamma(self, rng):
        """Test γ(0) = +∞ turns the γ bound into a skip."""
        b = np.zeros((2, 2))
        certs = prop35_certificates(b, rng.standard_normal((2, 2)))

        assert certs[0].skipped
        assert certs[1].holds

    def test_prop35_requires_inner_inverse(self):
        """Test a non-inverse is a precondition failure."""
        with pytest.raises(PreconditionError):
            prop35_certificates(np.eye(2), 2.0 * np.eye(2))

    def test_prop35_projectors(self, rng):
        """Test orthogonal projectors move no more than oblique ones."""
        a = random_operator(3, 3, 2, rng, sigma_min=0.2)
        b = near_identity(3, rng, 1e-3) @ a
        certs = prop35_projector_certificates(
            a, random_inner_inverse(a, rng, 0.1), b, random_inner_inverse(b, rng, 0.1)
        )

        assert all(c.holds for c in certs)
