"""Moore-Penrose calculus: pseudoinverse, reduced minimum modulus, polar parts."""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np
import numpy.typing as npt

from config.settings import ToleranceConfig, resolve_tolerances
from .certificates import InequalityCertificate
from .errors import PreconditionError, ShapeMismatchError
from .numeric_core import (
    ComplexMatrix,
    OrbitSignature,
    Subspace,
    SvdFactorization,
    adjoint,
    as_matrix,
    digest_inputs,
    numerical_rank,
    op_norm,
    require_same_shape,
    svd,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class OperatorAnalysis:
    """An operator bundled with A†, its four subspace projectors and γ(A)."""
    a: ComplexMatrix
    pinv: ComplexMatrix
    p_range: ComplexMatrix
    p_corange: ComplexMatrix
    p_null: ComplexMatrix
    gamma: float
    signature: OrbitSignature
    factorization: SvdFactorization

    @property
    def rank(self) -> int:
        return self.signature.rank

    @property
    def p_defect(self) -> ComplexMatrix:
        """P_{N(A*)} = I - AA†."""
        return np.eye(self.a.shape[0]) - self.p_range

    @property
    def norm(self) -> float:
        return op_norm(self.a)

    @property
    def pinv_norm(self) -> float:
        return op_norm(self.pinv)

    def range_space(self) -> Subspace:
        return Subspace(self.a.shape[0], self.factorization.u[:, : self.rank])

    def defect_space(self) -> Subspace:
        """N(A*), the orthogonal complement of the range."""
        return Subspace(self.a.shape[0], self.factorization.u[:, self.rank:])

    def corange_space(self) -> Subspace:
        """R(A*) = N(A)⊥."""
        return Subspace(self.a.shape[1], self.factorization.v[:, : self.rank])

    def null_space(self) -> Subspace:
        return Subspace(self.a.shape[1], self.factorization.v[:, self.rank:])

    def penrose_residuals(self) -> List[float]:
        a, p = self.a, self.pinv
        ap, pa = a @ p, p @ a
        return [
            op_norm(ap @ a - a),
            op_norm(pa @ p - p),
            op_norm(adjoint(ap) - ap),
            op_norm(adjoint(pa) - pa),
        ]


@dataclass(frozen=True, eq=False)
class PolarParts:
    """A = V|A| = |A*|V with V the canonical partial isometry."""
    v: ComplexMatrix
    abs_a: ComplexMatrix
    abs_a_star: ComplexMatrix


def analyze(a: npt.ArrayLike, tol: Optional[ToleranceConfig] = None) -> OperatorAnalysis:
    tol = resolve_tolerances(tol)
    arr = as_matrix(a)
    m, n = arr.shape
    f = svd(arr, tol)
    r = numerical_rank(f, tol)
    u_r, v_r = f.u[:, :r], f.v[:, :r]
    sigma_r = f.singular_values[:r]

    # same cutoff as numerical_rank, so AA† is an exact-rank projector
    pinv = (v_r / sigma_r) @ adjoint(u_r)
    p_range = u_r @ adjoint(u_r)
    p_corange = v_r @ adjoint(v_r)
    gamma = float(sigma_r[-1]) if r > 0 else math.inf
    logger.debug("analyze %dx%d: rank=%d gamma=%.3e", m, n, r, gamma)
    return OperatorAnalysis(
        a=arr,
        pinv=pinv,
        p_range=p_range,
        p_corange=p_corange,
        p_null=np.eye(n) - p_corange,
        gamma=gamma,
        signature=OrbitSignature(nullity=n - r, rank=r, defect=m - r),
        factorization=f,
    )


def pinv(a: npt.ArrayLike, tol: Optional[ToleranceConfig] = None) -> ComplexMatrix:
    return analyze(a, tol).pinv


def reduced_min_modulus(a: npt.ArrayLike, tol: Optional[ToleranceConfig] = None) -> float:
    """Smallest retained singular value; +inf for the zero operator."""
    return analyze(a, tol).gamma


def polar_decompose(a: npt.ArrayLike, tol: Optional[ToleranceConfig] = None) -> PolarParts:
    tol = resolve_tolerances(tol)
    arr = as_matrix(a)
    m, n = arr.shape
    f = svd(arr, tol)
    r = numerical_rank(f, tol)
    sigma = f.singular_values
    k = len(sigma)

    d_dom = np.zeros(n)
    d_dom[:k] = sigma
    d_cod = np.zeros(m)
    d_cod[:k] = sigma
    return PolarParts(
        v=f.u[:, :r] @ adjoint(f.v[:, :r]),
        abs_a=(f.v * d_dom) @ adjoint(f.v),
        abs_a_star=(f.u * d_cod) @ adjoint(f.u),
    )


def polar_via_pinv(a: npt.ArrayLike, tol: Optional[ToleranceConfig] = None) -> ComplexMatrix:
    """ν(A) = (A*)†|A|, which must coincide with the polar partial isometry."""
    arr = as_matrix(a)
    return pinv(adjoint(arr), tol) @ polar_decompose(arr, tol).abs_a


def is_hermitian(x: np.ndarray, tol: Optional[ToleranceConfig] = None) -> bool:
    tol = resolve_tolerances(tol)
    return op_norm(x - adjoint(x)) <= tol.eq_tol * (1.0 + op_norm(x))


def is_orthogonal_projector(p: np.ndarray, tol: Optional[ToleranceConfig] = None) -> bool:
    tol = resolve_tolerances(tol)
    if p.shape[0] != p.shape[1]:
        return False
    return is_hermitian(p, tol) and op_norm(p @ p - p) <= tol.eq_tol


def is_partial_isometry(v: npt.ArrayLike, tol: Optional[ToleranceConfig] = None) -> bool:
    """True iff V*V is idempotent."""
    tol = resolve_tolerances(tol)
    arr = as_matrix(v)
    vv = adjoint(arr) @ arr
    return op_norm(vv @ vv - vv) <= tol.eq_tol


def psd_sqrt(a: np.ndarray, tol: Optional[ToleranceConfig] = None) -> ComplexMatrix:
    """Principal square root of a positive semidefinite matrix."""
    tol = resolve_tolerances(tol)
    herm = 0.5 * (a + adjoint(a))
    w, q = np.linalg.eigh(herm)
    if w.size and w[0] < -tol.eq_tol * max(1.0, abs(w[-1])):
        raise PreconditionError(f"Matrix is not positive semidefinite (min eigenvalue {w[0]:.3e})")
    return (q * np.sqrt(np.clip(w, 0.0, None))) @ adjoint(q)


def is_psd(a: np.ndarray, tol: Optional[ToleranceConfig] = None) -> bool:
    tol = resolve_tolerances(tol)
    if a.shape[0] != a.shape[1] or not is_hermitian(a, tol):
        return False
    w = np.linalg.eigvalsh(0.5 * (a + adjoint(a)))
    return bool(w[0] >= -tol.eq_tol * max(1.0, abs(w[-1])))


def pinv_difference_identity(
    a: npt.ArrayLike, b: npt.ArrayLike, tol: Optional[ToleranceConfig] = None
) -> float:
    """Residual of the three-term expansion of A† - B†.

    A† - B† = -A†(A-B)B† + A†A*†(A*-B*)(I-BB†) + (I-A†A)(A*-B*)B*†B†
    """
    aa, ba = analyze(a, tol), analyze(b, tol)
    require_same_shape(aa.a, ba.a)
    a_dag, b_dag = aa.pinv, ba.pinv
    diff = aa.a - ba.a
    diff_star = adjoint(diff)
    m, n = aa.a.shape
    expansion = (
        -a_dag @ diff @ b_dag
        + a_dag @ adjoint(a_dag) @ diff_star @ (np.eye(m) - ba.p_range)
        + (np.eye(n) - aa.p_corange) @ diff_star @ adjoint(b_dag) @ b_dag
    )
    return op_norm((a_dag - b_dag) - expansion)


def remark21_bound_certificate(
    a: npt.ArrayLike, b: npt.ArrayLike, tol: Optional[ToleranceConfig] = None
) -> InequalityCertificate:
    """‖A†−B†‖ ≤ (‖A†‖‖B†‖ + ‖A†‖² + ‖B†‖²)·‖A−B‖, read off the expansion above."""
    aa, ba = analyze(a, tol), analyze(b, tol)
    require_same_shape(aa.a, ba.a)
    na, nb = aa.pinv_norm, ba.pinv_norm
    return InequalityCertificate.compare(
        "remark21_bound",
        op_norm(aa.pinv - ba.pinv),
        (na * nb + na * na + nb * nb) * op_norm(aa.a - ba.a),
        tol,
        inputs_digest=digest_inputs(aa.a, ba.a),
    )


def check_generalized_inverse(
    b: npt.ArrayLike, bp: npt.ArrayLike, tol: Optional[ToleranceConfig] = None
) -> bool:
    """True iff B·B′·B = B within eq_tol·(1+‖B‖)."""
    tol = resolve_tolerances(tol)
    b_arr, bp_arr = as_matrix(b), as_matrix(bp)
    if bp_arr.shape != (b_arr.shape[1], b_arr.shape[0]):
        raise ShapeMismatchError(f"B′ must be {b_arr.shape[::-1]}, got {bp_arr.shape}")
    return op_norm(b_arr @ bp_arr @ b_arr - b_arr) <= tol.eq_tol * (1.0 + op_norm(b_arr))


def prop35_certificates(
    b: npt.ArrayLike, bp: npt.ArrayLike, tol: Optional[ToleranceConfig] = None
) -> List[InequalityCertificate]:
    """γ(B) ≥ 1/‖B′‖ and ‖B†‖ ≤ ‖B′‖ for an inner inverse B′."""
    tol = resolve_tolerances(tol)
    if not check_generalized_inverse(b, bp, tol):
        raise PreconditionError("B′ is not a generalized inverse of B")
    ba = analyze(b, tol)
    bp_arr = as_matrix(bp)
    bp_norm = op_norm(bp_arr)
    digest = digest_inputs(ba.a, bp_arr)

    if math.isinf(ba.gamma):
        gamma_cert = InequalityCertificate.skip("prop35_gamma", "zero operator", digest)
    else:
        gamma_cert = InequalityCertificate.compare(
            "prop35_gamma", 1.0 / bp_norm, ba.gamma, tol, digest
        )
    return [
        gamma_cert,
        InequalityCertificate.compare("prop35_pinv_norm", ba.pinv_norm, bp_norm, tol, digest),
    ]


def prop35_projector_certificates(
    a: npt.ArrayLike,
    ap: npt.ArrayLike,
    b: npt.ArrayLike,
    bp: npt.ArrayLike,
    tol: Optional[ToleranceConfig] = None,
) -> List[InequalityCertificate]:
    """Orthogonal projectors move no more than the oblique ones built from inner inverses."""
    tol = resolve_tolerances(tol)
    if not (check_generalized_inverse(a, ap, tol) and check_generalized_inverse(b, bp, tol)):
        raise PreconditionError("inner-inverse hypothesis fails")
    aa, ba = analyze(a, tol), analyze(b, tol)
    require_same_shape(aa.a, ba.a)
    ap_arr, bp_arr = as_matrix(ap), as_matrix(bp)
    digest = digest_inputs(aa.a, ap_arr, ba.a, bp_arr)
    return [
        InequalityCertificate.compare(
            "prop35_corange_projectors",
            op_norm(ba.p_corange - aa.p_corange),
            op_norm(bp_arr @ ba.a - ap_arr @ aa.a),
            tol,
            digest,
        ),
        InequalityCertificate.compare(
            "prop35_range_projectors",
            op_norm(ba.p_range - aa.p_range),
            op_norm(ba.a @ bp_arr - aa.a @ ap_arr),
            tol,
            digest,
        ),
    ]
