"""Orbits of the two-sided action (G, H)·A = G A H⁻¹ and their geometry."""

import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel
from scipy import linalg as sla

from config.settings import ToleranceConfig, resolve_tolerances
from .errors import (
    OutsideNeighborhoodError,
    PreconditionError,
    ShapeMismatchError,
    SingularOperatorError,
)
from .metrics_perturbation import MetricKind, metric_dx_from
from .numeric_core import (
    ComplexMatrix,
    OrbitSignature,
    Subspace,
    adjoint,
    as_matrix,
    min_singular_value,
    op_norm,
    range_basis,
    require_same_shape,
)
from .operator_calculus import analyze, polar_decompose
from .random_ops import random_invertible

logger = logging.getLogger(__name__)

__all__ = [
    "CornerConstruction",
    "Intertwiner",
    "OrbitDistanceWitness",
    "OrbitReport",
    "OrbitSignature",
    "ProjectorPair",
    "UnitaryOrbitCriteria",
    "apply_action",
    "big_pi",
    "build_intertwiner",
    "cor54_construction",
    "local_section_sigma",
    "orbit_distance_witness",
    "orbit_report",
    "partial_isometry_unitary_intertwiner",
    "phi",
    "projection_formula_unsquared",
    "projection_under_g",
    "projector_unitary_witness",
    "prop53_intertwiner",
    "prop53_verdicts",
    "same_orbit",
    "sf_index",
    "signature",
]


@dataclass(frozen=True, eq=False)
class Intertwiner:
    """Invertible (g, h) with g·A·h⁻¹ ≈ B; residual = ‖g·A·h⁻¹ − B‖."""
    g: ComplexMatrix
    h: ComplexMatrix
    residual: float


@dataclass(frozen=True, eq=False)
class ProjectorPair:
    p: ComplexMatrix
    q: ComplexMatrix


@dataclass(frozen=True)
class UnitaryOrbitCriteria:
    same_orbit: bool
    projector_ranks_match: bool
    partial_isometries_match: bool

    @property
    def agree(self) -> bool:
        return self.same_orbit == self.projector_ranks_match == self.partial_isometries_match


@dataclass(frozen=True, eq=False)
class CornerConstruction:
    """G = |A†*| + I − P_{R(A)} with GA = V_A and its claimed inverse."""
    g: ComplexMatrix
    g_inv: ComplexMatrix
    residual: float
    inverse_residual: float


@dataclass(frozen=True)
class OrbitDistanceWitness:
    kind: MetricKind
    epsilon: float
    lower_bound_is_one: bool
    witness_dx: float
    projector_gaps: List[float] = field(default_factory=list)


class OrbitReport(BaseModel):
    signature: List[int]
    index: int
    orbit_id: str


def _require_invertible(x: np.ndarray, tol: ToleranceConfig, label: str) -> None:
    if x.ndim != 2 or x.shape[0] != x.shape[1]:
        raise ShapeMismatchError(f"{label} must be square, got {x.shape}")
    smallest = min_singular_value(x)
    if smallest <= tol.eq_tol:
        raise SingularOperatorError(f"{label} is singular (smallest singular value {smallest:.3e})")


def _right_divide(x: np.ndarray, h: np.ndarray) -> np.ndarray:
    """x·h⁻¹ without forming the inverse."""
    return adjoint(sla.solve(adjoint(h), adjoint(x)))


def apply_action(
    g: npt.ArrayLike, h: npt.ArrayLike, a: npt.ArrayLike, tol: Optional[ToleranceConfig] = None
) -> ComplexMatrix:
    tol = resolve_tolerances(tol)
    g_arr, h_arr, a_arr = as_matrix(g), as_matrix(h), as_matrix(a)
    if g_arr.shape[0] != a_arr.shape[0] or h_arr.shape[0] != a_arr.shape[1]:
        raise ShapeMismatchError(
            f"Cannot act with G {g_arr.shape}, H {h_arr.shape} on A {a_arr.shape}"
        )
    _require_invertible(g_arr, tol, "G")
    _require_invertible(h_arr, tol, "H")
    return _right_divide(g_arr @ a_arr, h_arr)


def signature(a: npt.ArrayLike, tol: Optional[ToleranceConfig] = None) -> OrbitSignature:
    return analyze(a, tol).signature


def sf_index(a: npt.ArrayLike, tol: Optional[ToleranceConfig] = None) -> int:
    return signature(a, tol).index


def orbit_report(a: npt.ArrayLike, tol: Optional[ToleranceConfig] = None) -> OrbitReport:
    sig = signature(a, tol)
    return OrbitReport(signature=sig.as_list(), index=sig.index, orbit_id=sig.orbit_id)


def same_orbit(a: npt.ArrayLike, b: npt.ArrayLike, tol: Optional[ToleranceConfig] = None) -> bool:
    a_arr, b_arr = as_matrix(a), as_matrix(b)
    require_same_shape(a_arr, b_arr)
    return signature(a_arr, tol) == signature(b_arr, tol)


def build_intertwiner(
    a: npt.ArrayLike, b: npt.ArrayLike, tol: Optional[ToleranceConfig] = None
) -> Intertwiner:
    """Explicit (G, H) with G·A·H⁻¹ = B for two operators in the same orbit.

    H matches right singular bases (N(A)⊥ → N(B)⊥ and N(A) → N(B)); on R(A)
    G is B·H·A†, and on R(A)⊥ it matches the left singular bases.
    """
    tol = resolve_tolerances(tol)
    aa, ba = analyze(a, tol), analyze(b, tol)
    require_same_shape(aa.a, ba.a)
    if aa.signature != ba.signature:
        raise PreconditionError(
            f"Different orbits: {aa.signature.orbit_id} vs {ba.signature.orbit_id}"
        )
    r = aa.rank
    fa, fb = aa.factorization, ba.factorization

    h = fb.v @ adjoint(fa.v)
    v_prime = fb.u[:, r:] @ adjoint(fa.u[:, r:])
    g = ba.a @ h @ aa.pinv @ aa.p_range + v_prime @ aa.p_defect
    _require_invertible(g, tol, "G")
    residual = op_norm(_right_divide(g @ aa.a, h) - ba.a)
    logger.debug("intertwiner %s: residual=%.3e", aa.signature.orbit_id, residual)
    return Intertwiner(g=g, h=h, residual=residual)


def phi(b: npt.ArrayLike, tol: Optional[ToleranceConfig] = None) -> ProjectorPair:
    """(BB†, B†B) = (P_{R(B)}, P_{R(B*)})."""
    ba = analyze(b, tol)
    return ProjectorPair(p=ba.p_range, q=ba.p_corange)


def projector_unitary_witness(
    p: npt.ArrayLike, q: npt.ArrayLike, tol: Optional[ToleranceConfig] = None
) -> ComplexMatrix:
    """A unitary U with U·P·U* = Q for orthogonal projections of equal rank."""
    tol = resolve_tolerances(tol)
    p_arr, q_arr = as_matrix(p), as_matrix(q)
    require_same_shape(p_arr, q_arr)
    fp, fq = analyze(p_arr, tol), analyze(q_arr, tol)
    if fp.rank != fq.rank:
        raise PreconditionError(f"Projection ranks differ: {fp.rank} vs {fq.rank}")
    # the full left singular basis of a projection splits as range ⊕ complement
    return fq.factorization.u @ adjoint(fp.factorization.u)


def prop53_verdicts(
    a: npt.ArrayLike, b: npt.ArrayLike, tol: Optional[ToleranceConfig] = None
) -> UnitaryOrbitCriteria:
    tol = resolve_tolerances(tol)
    aa, ba = analyze(a, tol), analyze(b, tol)
    require_same_shape(aa.a, ba.a)
    ranks_match = (
        analyze(aa.p_range, tol).rank == analyze(ba.p_range, tol).rank
        and analyze(aa.p_corange, tol).rank == analyze(ba.p_corange, tol).rank
    )
    v_a = polar_decompose(aa.a, tol).v
    v_b = polar_decompose(ba.a, tol).v
    return UnitaryOrbitCriteria(
        same_orbit=aa.signature == ba.signature,
        projector_ranks_match=ranks_match,
        partial_isometries_match=signature(v_a, tol) == signature(v_b, tol),
    )


def prop53_intertwiner(
    a: npt.ArrayLike, b: npt.ArrayLike, tol: Optional[ToleranceConfig] = None
) -> Intertwiner:
    """From unitaries U, W moving φ(A) onto φ(B), build B = U·A·H⁻¹.

    H = B†UA + W(I − P_{R(A*)}) with inverse A†U*B + (I − P_{R(A*)})W*.
    """
    tol = resolve_tolerances(tol)
    aa, ba = analyze(a, tol), analyze(b, tol)
    require_same_shape(aa.a, ba.a)
    if aa.signature != ba.signature:
        raise PreconditionError("Operators lie in different orbits")
    u = projector_unitary_witness(aa.p_range, ba.p_range, tol)
    w = projector_unitary_witness(aa.p_corange, ba.p_corange, tol)
    h = ba.pinv @ u @ aa.a + w @ aa.p_null
    h_inv = aa.pinv @ adjoint(u) @ ba.a + aa.p_null @ adjoint(w)
    n = aa.a.shape[1]
    if op_norm(h @ h_inv - np.eye(n)) > tol.eq_tol * (1.0 + op_norm(h) * op_norm(h_inv)):
        raise SingularOperatorError("H·G ≠ I for the unitary-orbit construction")
    return Intertwiner(g=u, h=h, residual=op_norm(u @ aa.a @ h_inv - ba.a))


def partial_isometry_unitary_intertwiner(
    v: npt.ArrayLike, w: npt.ArrayLike, tol: Optional[ToleranceConfig] = None
) -> Intertwiner:
    """Unitaries (U₁, U₂) with U₁·V·U₂* = W for partial isometries of one signature."""
    tol = resolve_tolerances(tol)
    va, wa = analyze(v, tol), analyze(w, tol)
    require_same_shape(va.a, wa.a)
    if va.signature != wa.signature:
        raise PreconditionError("Partial isometries have different signatures")
    u1 = wa.factorization.u @ adjoint(va.factorization.u)
    u2 = wa.factorization.v @ adjoint(va.factorization.v)
    return Intertwiner(g=u1, h=u2, residual=op_norm(u1 @ va.a @ adjoint(u2) - wa.a))


def cor54_construction(a: npt.ArrayLike, tol: Optional[ToleranceConfig] = None) -> CornerConstruction:
    """G = |A†*| + I − P_{R(A)}, read as ((A†)*A†)^{1/2} + I − P_{R(A)} on the codomain.

    Both |A†*| = U_r·Σ_r⁻¹·U_r* and |A*| = U_r·Σ_r·U_r* come from the retained
    singular triplets, so G·G⁻¹ = U_r·U_r* + I − P_{R(A)} up to rounding.
    """
    tol = resolve_tolerances(tol)
    aa = analyze(a, tol)
    polar = polar_decompose(aa.a, tol)
    m = aa.a.shape[0]
    u_r = aa.factorization.u[:, : aa.rank]
    sigma_r = aa.factorization.singular_values[: aa.rank]
    g = (u_r / sigma_r) @ adjoint(u_r) + aa.p_defect
    g_inv = (u_r * sigma_r) @ adjoint(u_r) + aa.p_defect
    return CornerConstruction(
        g=g,
        g_inv=g_inv,
        residual=op_norm(g @ aa.a - polar.v),
        inverse_residual=op_norm(g @ g_inv - np.eye(m)),
    )


def _moved_idempotent(g: np.ndarray, s: Subspace, tol: ToleranceConfig) -> np.ndarray:
    if s.ambient_dim != g.shape[0]:
        raise ShapeMismatchError(f"S lives in dimension {s.ambient_dim}, G is {g.shape}")
    _require_invertible(g, tol, "G")
    return _right_divide(g @ s.projector(), g)


def projection_under_g(
    g: npt.ArrayLike, s: Subspace, tol: Optional[ToleranceConfig] = None
) -> ComplexMatrix:
    """Orthogonal projection onto G(S) from the idempotent Q = G·P_S·G⁻¹.

    P = Q·Q*·(I − (Q − Q*)²)⁻¹; the factor is positive definite because
    Q − Q* is skew-Hermitian.
    """
    tol = resolve_tolerances(tol)
    q = _moved_idempotent(as_matrix(g), s, tol)
    skew = q - adjoint(q)
    factor = np.eye(q.shape[0]) - skew @ skew
    _require_invertible(factor, tol, "I − (Q − Q*)²")
    return _right_divide(q @ adjoint(q), factor)


def projection_formula_unsquared(
    g: npt.ArrayLike, s: Subspace, tol: Optional[ToleranceConfig] = None
) -> ComplexMatrix:
    """Q·Q*·(I − (Q − Q*))⁻¹, kept only to report how far it is from P_{G(S)}."""
    tol = resolve_tolerances(tol)
    q = _moved_idempotent(as_matrix(g), s, tol)
    factor = np.eye(q.shape[0]) - (q - adjoint(q))
    _require_invertible(factor, tol, "I − (Q − Q*)")
    return _right_divide(q @ adjoint(q), factor)


def big_pi(
    g: npt.ArrayLike, h: npt.ArrayLike, a: npt.ArrayLike, tol: Optional[ToleranceConfig] = None
) -> ProjectorPair:
    """(P_{G R(A)}, P_{(H N(A))⊥}), the projector pair of G·A·H⁻¹ computed from (G, H)."""
    tol = resolve_tolerances(tol)
    aa = analyze(a, tol)
    h_arr = as_matrix(h)
    p = projection_under_g(g, aa.range_space(), tol)
    q = np.eye(h_arr.shape[0]) - projection_under_g(h_arr, aa.null_space(), tol)
    return ProjectorPair(p=p, q=q)


def local_section_sigma(
    a: npt.ArrayLike, b: npt.ArrayLike, tol: Optional[ToleranceConfig] = None
) -> Intertwiner:
    """σ(B) = (B·A† + (I − P_{R(B)})(I − P_{R(A)}), P_{R(B†)}P_{R(A†)} + (I − P_{R(B*)})(I − P_{R(A*)}))."""
    tol = resolve_tolerances(tol)
    aa, ba = analyze(a, tol), analyze(b, tol)
    require_same_shape(aa.a, ba.a)
    g = ba.a @ aa.pinv + ba.p_defect @ aa.p_defect
    h = ba.p_corange @ aa.p_corange + ba.p_null @ aa.p_null
    for label, x in (("G", g), ("H", h)):
        if min_singular_value(x) <= tol.eq_tol:
            raise OutsideNeighborhoodError(f"{label} factor of the local section is singular")
    return Intertwiner(g=g, h=h, residual=op_norm(_right_divide(g @ aa.a, h) - ba.a))


def orbit_distance_witness(
    a: npt.ArrayLike,
    b: npt.ArrayLike,
    kind: MetricKind = MetricKind.R,
    epsilon: float = 0.1,
    tol: Optional[ToleranceConfig] = None,
    samples: int = 4,
    seed: int = 0,
) -> OrbitDistanceWitness:
    """Distance-1 branch for operators of different rank.

    Sampled representatives A′ = G_a·A·H_a⁻¹, B′ = G_b·B·H_b⁻¹ always have
    range projectors at gap 1; the rescaled pair
    A″ = ε/(2(‖A′‖+‖B′‖))·A′, B″ likewise, sits within ε of that gap.
    The N variant runs on the adjoints.
    """
    tol = resolve_tolerances(tol)
    kind = MetricKind(kind)
    if epsilon <= 0.0:
        raise ValueError("epsilon must be positive")
    a_arr, b_arr = as_matrix(a), as_matrix(b)
    require_same_shape(a_arr, b_arr)
    if kind is MetricKind.N:
        a_arr, b_arr = adjoint(a_arr), adjoint(b_arr)
    if same_orbit(a_arr, b_arr, tol):
        raise PreconditionError("A and B lie in the same orbit")

    m, n = a_arr.shape
    rng = np.random.default_rng(seed)
    gaps: List[float] = []
    witness = float("nan")
    for i in range(samples):
        a_rep = apply_action(random_invertible(m, rng), random_invertible(n, rng), a_arr, tol)
        b_rep = apply_action(random_invertible(m, rng), random_invertible(n, rng), b_arr, tol)
        ra, rb = analyze(a_rep, tol), analyze(b_rep, tol)
        gaps.append(op_norm(ra.p_range - rb.p_range))
        if i == 0:
            scale = epsilon / (2.0 * (ra.norm + rb.norm))
            witness = metric_dx_from(
                analyze(scale * a_rep, tol), analyze(scale * b_rep, tol), MetricKind.R
            )
    return OrbitDistanceWitness(
        kind=kind,
        epsilon=epsilon,
        lower_bound_is_one=all(abs(gap - 1.0) <= tol.angle_one_tol for gap in gaps),
        witness_dx=witness,
        projector_gaps=gaps,
    )
