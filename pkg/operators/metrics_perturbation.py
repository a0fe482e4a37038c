"""The range and nullspace metrics d_R, d_N and the perturbation bounds around them."""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np
import numpy.typing as npt

from config.settings import ToleranceConfig, resolve_tolerances
from .certificates import InequalityCertificate
from .errors import PreconditionError
from .numeric_core import (
    ComplexMatrix,
    adjoint,
    as_matrix,
    digest_inputs,
    normalize_phase,
    op_norm,
    require_same_shape,
)
from .operator_calculus import OperatorAnalysis, analyze, polar_decompose

logger = logging.getLogger(__name__)

__all__ = [
    "FlipResult",
    "InequalityCertificate",
    "MetricKind",
    "cor33_certificate",
    "cor34_certificate",
    "cor39_certificate",
    "lemma310_certificate",
    "lemma32_certificate",
    "lemma38_certificates",
    "m_membership",
    "metric_axioms",
    "metric_dx",
    "metric_dx_from",
    "openness_certificate",
    "remark31_checks",
    "rk_membership",
    "thm312_flip",
    "thm36_gadget",
]


class MetricKind(str, Enum):
    R = "R"
    N = "N"


@dataclass(frozen=True, eq=False)
class FlipResult:
    w: ComplexMatrix
    b_tilde: ComplexMatrix
    v_b: ComplexMatrix
    p: ComplexMatrix


def metric_dx_from(aa: OperatorAnalysis, ba: OperatorAnalysis, kind: MetricKind) -> float:
    """d_X from precomputed analyses."""
    require_same_shape(aa.a, ba.a)
    if MetricKind(kind) is MetricKind.R:
        gap = op_norm(aa.p_range - ba.p_range)
    else:
        gap = op_norm(aa.p_null - ba.p_null)
    return math.hypot(gap, op_norm(aa.a - ba.a))


def metric_dx(
    a: npt.ArrayLike,
    b: npt.ArrayLike,
    kind: MetricKind = MetricKind.R,
    tol: Optional[ToleranceConfig] = None,
) -> float:
    """(‖P_X(A) − P_X(B)‖² + ‖A − B‖²)^{1/2} with X the range (R) or nullspace (N)."""
    return metric_dx_from(analyze(a, tol), analyze(b, tol), kind)


def lemma32_certificate(
    a: npt.ArrayLike,
    b: npt.ArrayLike,
    kind: MetricKind = MetricKind.R,
    tol: Optional[ToleranceConfig] = None,
) -> InequalityCertificate:
    """γ(B) ≤ √(1+γ(B)²)·d_X(A,B) + γ(A)."""
    aa, ba = analyze(a, tol), analyze(b, tol)
    digest = digest_inputs(aa.a, ba.a)
    name = f"lemma32_{MetricKind(kind).value}"
    if math.isinf(ba.gamma) or math.isinf(aa.gamma):
        return InequalityCertificate.skip(name, "zero operator has γ = +inf", digest)
    d = metric_dx_from(aa, ba, kind)
    return InequalityCertificate.compare(
        name, ba.gamma, math.sqrt(1.0 + ba.gamma**2) * d + aa.gamma, tol, digest
    )


def cor33_bound(b_pinv_norm: float) -> float:
    """Radius of the d_X ball around B on which ‖A†‖ ≤ 2‖B†‖."""
    return 1.0 / (2.0 * math.sqrt(1.0 + b_pinv_norm**2))


def cor33_certificate(
    a: npt.ArrayLike,
    b: npt.ArrayLike,
    kind: MetricKind = MetricKind.R,
    tol: Optional[ToleranceConfig] = None,
) -> InequalityCertificate:
    tol = resolve_tolerances(tol)
    aa, ba = analyze(a, tol), analyze(b, tol)
    d = metric_dx_from(aa, ba, kind)
    radius = cor33_bound(ba.pinv_norm)
    if not d < radius - tol.eq_tol:
        raise PreconditionError(f"d_X(A, B) = {d:.3e} is not below {radius:.3e}")
    return InequalityCertificate.compare(
        f"cor33_{MetricKind(kind).value}",
        aa.pinv_norm,
        2.0 * ba.pinv_norm,
        tol,
        digest_inputs(aa.a, ba.a),
    )


def cor34_certificate(
    a: npt.ArrayLike,
    b: npt.ArrayLike,
    kind: MetricKind = MetricKind.R,
    tol: Optional[ToleranceConfig] = None,
) -> InequalityCertificate:
    """|γ(B) − γ(A)| ≤ √(1+γ(B)²)·√(1+γ(A)²)·d_X(A,B); symmetric in A and B."""
    aa, ba = analyze(a, tol), analyze(b, tol)
    name = f"cor34_{MetricKind(kind).value}"
    digest = digest_inputs(aa.a, ba.a)
    if math.isinf(ba.gamma) or math.isinf(aa.gamma):
        return InequalityCertificate.skip(name, "zero operator has γ = +inf", digest)
    d = metric_dx_from(aa, ba, kind)
    return InequalityCertificate.compare(
        name,
        abs(ba.gamma - aa.gamma),
        math.sqrt(1.0 + ba.gamma**2) * math.sqrt(1.0 + aa.gamma**2) * d,
        tol,
        digest,
    )


def rk_membership(a: npt.ArrayLike, k: int, tol: Optional[ToleranceConfig] = None) -> bool:
    """A ∈ R_k iff γ(A) ≥ 1/k."""
    tol = resolve_tolerances(tol)
    if k < 1:
        raise ValueError("k must be a positive integer")
    return analyze(a, tol).gamma >= 1.0 / k - tol.eq_tol


def m_membership(a: npt.ArrayLike, tol: Optional[ToleranceConfig] = None) -> bool:
    """Injective or surjective."""
    sig = analyze(a, tol).signature
    return sig.nullity == 0 or sig.defect == 0


def _require_rk(aa: OperatorAnalysis, ba: OperatorAnalysis, k: int, tol: ToleranceConfig) -> None:
    if k < 1:
        raise ValueError("k must be a positive integer")
    for label, an in (("A", aa), ("B", ba)):
        if an.gamma < 1.0 / k - tol.eq_tol:
            raise PreconditionError(f"{label} is not in R_{k} (γ = {an.gamma:.3e})")


def lemma38_certificates(
    a: npt.ArrayLike, b: npt.ArrayLike, k: int, tol: Optional[ToleranceConfig] = None
) -> List[InequalityCertificate]:
    tol = resolve_tolerances(tol)
    aa, ba = analyze(a, tol), analyze(b, tol)
    require_same_shape(aa.a, ba.a)
    _require_rk(aa, ba, k, tol)
    digest = digest_inputs(aa.a, ba.a)
    dist = op_norm(aa.a - ba.a)

    certs = [
        InequalityCertificate.compare(
            "lemma38_corange", op_norm(aa.p_corange - ba.p_corange), k * dist, tol, digest
        ),
        InequalityCertificate.compare(
            "lemma38_range", op_norm(aa.p_range - ba.p_range), k * dist, tol, digest
        ),
    ]
    if math.isinf(aa.gamma) or math.isinf(ba.gamma):
        certs.append(InequalityCertificate.skip("lemma38_gamma", "zero operator", digest))
    elif dist < 1.0 / k - tol.eq_tol:
        certs.append(
            InequalityCertificate.compare(
                "lemma38_gamma", abs(aa.gamma - ba.gamma), dist, tol, digest
            )
        )
    else:
        certs.append(
            InequalityCertificate.skip("lemma38_gamma", f"‖A − B‖ ≥ 1/{k}", digest)
        )
    return certs


def cor39_certificate(
    a: npt.ArrayLike,
    b: npt.ArrayLike,
    k: int,
    kind: MetricKind = MetricKind.R,
    tol: Optional[ToleranceConfig] = None,
) -> Tuple[InequalityCertificate, InequalityCertificate]:
    """‖A−B‖ ≤ d_X(A,B) ≤ √(1+k²)·‖A−B‖ on R_k, as a (lower, upper) pair."""
    tol = resolve_tolerances(tol)
    aa, ba = analyze(a, tol), analyze(b, tol)
    require_same_shape(aa.a, ba.a)
    _require_rk(aa, ba, k, tol)
    digest = digest_inputs(aa.a, ba.a)
    dist = op_norm(aa.a - ba.a)
    d = metric_dx_from(aa, ba, kind)
    tag = MetricKind(kind).value
    return (
        InequalityCertificate.compare(f"cor39_lower_{tag}", dist, d, tol, digest),
        InequalityCertificate.compare(
            f"cor39_upper_{tag}", d, math.sqrt(1.0 + k * k) * dist, tol, digest
        ),
    )


def lemma310_certificate(
    a: npt.ArrayLike, b: npt.ArrayLike, k: int, tol: Optional[ToleranceConfig] = None
) -> InequalityCertificate:
    """A ↦ A† is 3k²-Lipschitz on R_k."""
    tol = resolve_tolerances(tol)
    aa, ba = analyze(a, tol), analyze(b, tol)
    require_same_shape(aa.a, ba.a)
    _require_rk(aa, ba, k, tol)
    return InequalityCertificate.compare(
        "lemma310",
        op_norm(aa.pinv - ba.pinv),
        3.0 * k * k * op_norm(aa.a - ba.a),
        tol,
        digest_inputs(aa.a, ba.a),
    )


def thm36_gadget(a: npt.ArrayLike, n: int, tol: Optional[ToleranceConfig] = None) -> ComplexMatrix:
    """A_n = A + (1/n)·v·u* with unit u ∈ N(A), v ∈ N(A*)."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    aa = analyze(a, tol)
    if aa.signature.nullity == 0 or aa.signature.defect == 0:
        raise PreconditionError("A is injective or surjective; no rank-one gadget exists")
    u = normalize_phase(aa.null_space().basis[:, 0])
    v = normalize_phase(aa.defect_space().basis[:, 0])
    return aa.a + np.outer(v, u.conj()) / n


def thm312_flip(
    b: npt.ArrayLike, x0: npt.ArrayLike, tol: Optional[ToleranceConfig] = None
) -> FlipResult:
    """W = V_B(I − 2P) and B̃ = |B*|W for the rank-one projector P onto x0 ∈ N(B)⊥."""
    tol = resolve_tolerances(tol)
    aa = analyze(b, tol)
    x = np.asarray(x0, dtype=np.complex128).reshape(-1)
    if x.shape[0] != aa.a.shape[1]:
        raise PreconditionError("x0 must live in the domain of B")
    if abs(np.linalg.norm(x) - 1.0) > tol.eq_tol:
        raise PreconditionError("x0 must be a unit vector")
    if np.linalg.norm(aa.p_null @ x) > tol.eq_tol:
        raise PreconditionError("x0 is not orthogonal to N(B)")
    polar = polar_decompose(aa.a, tol)
    p = np.outer(x, x.conj())
    w = polar.v @ (np.eye(aa.a.shape[1]) - 2.0 * p)
    return FlipResult(w=w, b_tilde=polar.abs_a_star @ w, v_b=polar.v, p=p)


def remark31_checks(
    a: npt.ArrayLike, b: npt.ArrayLike, tol: Optional[ToleranceConfig] = None
) -> List[InequalityCertificate]:
    """d_N(A*, B*) = d_R(A, B) and d_N(A,B) ≤ ‖P_{R(A*)} − P_{R(B*)}‖ + ‖A − B‖."""
    tol = resolve_tolerances(tol)
    a_arr, b_arr = as_matrix(a), as_matrix(b)
    aa, ba = analyze(a_arr, tol), analyze(b_arr, tol)
    aa_star, ba_star = analyze(adjoint(a_arr), tol), analyze(adjoint(b_arr), tol)
    digest = digest_inputs(a_arr, b_arr)
    d_r = metric_dx_from(aa, ba, MetricKind.R)
    d_n_adj = metric_dx_from(aa_star, ba_star, MetricKind.N)
    return [
        InequalityCertificate.compare(
            "remark31_adjoint", abs(d_n_adj - d_r), 0.0, tol, digest
        ),
        InequalityCertificate.compare(
            "remark31_corange",
            metric_dx_from(aa, ba, MetricKind.N),
            op_norm(aa.p_corange - ba.p_corange) + op_norm(a_arr - b_arr),
            tol,
            digest,
        ),
    ]


def openness_certificate(
    a: npt.ArrayLike,
    b: npt.ArrayLike,
    kind: MetricKind = MetricKind.R,
    tol: Optional[ToleranceConfig] = None,
) -> InequalityCertificate:
    """Within d_X < γ(B)/(2√(1+γ(B)²)) of B, γ(A) ≥ γ(B)/2."""
    tol = resolve_tolerances(tol)
    aa, ba = analyze(a, tol), analyze(b, tol)
    name = f"openness_{MetricKind(kind).value}"
    digest = digest_inputs(aa.a, ba.a)
    if math.isinf(ba.gamma):
        return InequalityCertificate.skip(name, "B = 0", digest)
    radius = ba.gamma / (2.0 * math.sqrt(1.0 + ba.gamma**2))
    if metric_dx_from(aa, ba, kind) >= radius - tol.eq_tol:
        return InequalityCertificate.skip(name, "A outside the radius", digest)
    return InequalityCertificate.compare(name, ba.gamma / 2.0, aa.gamma, tol, digest)


def metric_axioms(
    a: npt.ArrayLike,
    b: npt.ArrayLike,
    c: npt.ArrayLike,
    kind: MetricKind = MetricKind.R,
    tol: Optional[ToleranceConfig] = None,
) -> List[InequalityCertificate]:
    aa, ba, ca = analyze(a, tol), analyze(b, tol), analyze(c, tol)
    digest = digest_inputs(aa.a, ba.a, ca.a)
    d_ab = metric_dx_from(aa, ba, kind)
    d_ba = metric_dx_from(ba, aa, kind)
    d_bc = metric_dx_from(ba, ca, kind)
    d_ac = metric_dx_from(aa, ca, kind)
    tag = MetricKind(kind).value
    return [
        InequalityCertificate.compare(f"metric_zero_{tag}", metric_dx_from(aa, aa, kind), 0.0, tol, digest),
        InequalityCertificate.compare(f"metric_symmetry_{tag}", abs(d_ab - d_ba), 0.0, tol, digest),
        InequalityCertificate.compare(f"metric_triangle_{tag}", d_ac, d_ab + d_bc, tol, digest),
        InequalityCertificate.compare(f"metric_norm_{tag}", op_norm(aa.a - ba.a), d_ab, tol, digest),
    ]
