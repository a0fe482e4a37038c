"""Operators with a fixed range S: the slice CR_S, its factorization through
C_P × PI_S, Thompson components and the actions that preserve the slice.

C_P is the set of positive operators with range S and PI_S the set of
partial isometries whose final space is S; B ↦ (|B*|, |B*|†B) identifies
CR_S with their product.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
import numpy.typing as npt
from scipy import linalg as sla

from config.settings import ToleranceConfig, resolve_tolerances
from .errors import OutsideNeighborhoodError, PreconditionError, ShapeMismatchError
from .numeric_core import ComplexMatrix, Subspace, adjoint, as_matrix, op_norm
from .operator_calculus import analyze, is_partial_isometry, is_psd, polar_decompose, psd_sqrt
from .orbit_geometry import Intertwiner, apply_action, build_intertwiner

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FixedRangeContext:
    """The fixed range S ⊆ K together with P = P_S."""
    s: Subspace
    p: ComplexMatrix

    @classmethod
    def from_subspace(cls, s: Subspace) -> "FixedRangeContext":
        return cls(s=s, p=s.projector())

    @classmethod
    def from_vectors(cls, vectors: npt.ArrayLike, tol: Optional[ToleranceConfig] = None) -> "FixedRangeContext":
        return cls.from_subspace(Subspace.span(vectors, tol))

    @property
    def ambient_dim(self) -> int:
        return self.s.ambient_dim

    @property
    def complement(self) -> ComplexMatrix:
        return np.eye(self.ambient_dim) - self.p


@dataclass(frozen=True)
class ThompsonCertificate:
    """A ≤ β·B and B ≤ α·A on the common range; both infinite across components."""
    same_component: bool
    alpha: float
    beta: float


@dataclass(frozen=True, eq=False)
class FixedRangeFactors:
    abs_b_star: ComplexMatrix
    v: ComplexMatrix


@dataclass(frozen=True, eq=False)
class SectionResult:
    g: ComplexMatrix
    u: ComplexMatrix
    residual: float
    unitarity_error: float


def _require_codomain(b: np.ndarray, ctx: FixedRangeContext) -> None:
    if b.shape[0] != ctx.ambient_dim:
        raise ShapeMismatchError(
            f"Operator codomain {b.shape[0]} does not match S ⊆ C^{ctx.ambient_dim}"
        )


def crs_membership(b: npt.ArrayLike, ctx: FixedRangeContext, tol: Optional[ToleranceConfig] = None) -> bool:
    tol = resolve_tolerances(tol)
    b_arr = as_matrix(b)
    _require_codomain(b_arr, ctx)
    return op_norm(analyze(b_arr, tol).p_range - ctx.p) <= tol.eq_tol


def is_cp_member(a: npt.ArrayLike, ctx: FixedRangeContext, tol: Optional[ToleranceConfig] = None) -> bool:
    tol = resolve_tolerances(tol)
    a_arr = as_matrix(a)
    return a_arr.shape == ctx.p.shape and is_psd(a_arr, tol) and crs_membership(a_arr, ctx, tol)


def is_pis_member(v: npt.ArrayLike, ctx: FixedRangeContext, tol: Optional[ToleranceConfig] = None) -> bool:
    tol = resolve_tolerances(tol)
    v_arr = as_matrix(v)
    _require_codomain(v_arr, ctx)
    return is_partial_isometry(v_arr, tol) and op_norm(v_arr @ adjoint(v_arr) - ctx.p) <= tol.eq_tol


def is_gs_member(g: npt.ArrayLike, ctx: FixedRangeContext, tol: Optional[ToleranceConfig] = None) -> bool:
    """G maps S onto S invertibly and fixes S⊥ pointwise."""
    tol = resolve_tolerances(tol)
    g_arr = as_matrix(g)
    if g_arr.shape != ctx.p.shape:
        return False
    q = ctx.complement
    if op_norm(g_arr @ q - q) > tol.eq_tol or op_norm(q @ g_arr @ ctx.p) > tol.eq_tol:
        return False
    if ctx.s.dim == 0:
        return True
    block = adjoint(ctx.s.basis) @ g_arr @ ctx.s.basis
    return float(sla.svdvals(block)[-1]) > tol.eq_tol


def thompson_scalars(
    a: npt.ArrayLike, b: npt.ArrayLike, tol: Optional[ToleranceConfig] = None
) -> ThompsonCertificate:
    tol = resolve_tolerances(tol)
    a_arr, b_arr = as_matrix(a), as_matrix(b)
    if a_arr.shape != b_arr.shape:
        raise ShapeMismatchError(f"Shape mismatch: {a_arr.shape} vs {b_arr.shape}")
    for label, x in (("A", a_arr), ("B", b_arr)):
        if not is_psd(x, tol):
            raise PreconditionError(f"{label} is not positive semidefinite")
    aa, ba = analyze(a_arr, tol), analyze(b_arr, tol)
    if op_norm(aa.p_range - ba.p_range) > tol.eq_tol:
        return ThompsonCertificate(same_component=False, alpha=math.inf, beta=math.inf)
    if aa.rank == 0:
        return ThompsonCertificate(same_component=True, alpha=1.0, beta=1.0)

    q = aa.range_space().basis
    a_c = adjoint(q) @ a_arr @ q
    b_c = adjoint(q) @ b_arr @ q
    # A_c x = λ B_c x; both compressions are positive definite on the common range
    lam = sla.eigh(0.5 * (a_c + adjoint(a_c)), 0.5 * (b_c + adjoint(b_c)), eigvals_only=True)
    logger.debug("thompson generalized eigenvalues: [%.3e, %.3e]", lam[0], lam[-1])
    return ThompsonCertificate(same_component=True, alpha=float(1.0 / lam[0]), beta=float(lam[-1]))


def thompson_same_component(a: npt.ArrayLike, b: npt.ArrayLike, tol: Optional[ToleranceConfig] = None) -> bool:
    return thompson_scalars(a, b, tol).same_component


def factorize_f(b: npt.ArrayLike, ctx: FixedRangeContext, tol: Optional[ToleranceConfig] = None) -> FixedRangeFactors:
    """B ↦ (|B*|, |B*|†B)."""
    tol = resolve_tolerances(tol)
    b_arr = as_matrix(b)
    if not crs_membership(b_arr, ctx, tol):
        raise PreconditionError("B does not have range S")
    abs_b_star = polar_decompose(b_arr, tol).abs_a_star
    return FixedRangeFactors(abs_b_star=abs_b_star, v=analyze(abs_b_star, tol).pinv @ b_arr)


def factorize_f_inverse(
    a: npt.ArrayLike, v: npt.ArrayLike, ctx: FixedRangeContext, tol: Optional[ToleranceConfig] = None
) -> ComplexMatrix:
    tol = resolve_tolerances(tol)
    a_arr, v_arr = as_matrix(a), as_matrix(v)
    if not is_cp_member(a_arr, ctx, tol):
        raise PreconditionError("A is not a positive operator with range S")
    if not is_pis_member(v_arr, ctx, tol):
        raise PreconditionError("V is not a partial isometry with final space S")
    return a_arr @ v_arr


def section_pi(
    b_pos: npt.ArrayLike,
    v: npt.ArrayLike,
    ctx: FixedRangeContext,
    w: npt.ArrayLike,
    tol: Optional[ToleranceConfig] = None,
) -> SectionResult:
    """σ(B, V) = (B^{1/2} + I − P, u) with g·P·g* = B and W·u* = V.

    u = V*W plus the polar partial isometry of (I − V*V)(I − W*W), which
    matches N(W) onto N(V); V lies in the admissible neighborhood of W
    exactly when that block has full rank on N(W).
    """
    tol = resolve_tolerances(tol)
    b_arr, v_arr, w_arr = as_matrix(b_pos), as_matrix(v), as_matrix(w)
    if not is_cp_member(b_arr, ctx, tol):
        raise PreconditionError("B is not a positive operator with range S")
    for label, x in (("V", v_arr), ("W", w_arr)):
        if not is_pis_member(x, ctx, tol):
            raise PreconditionError(f"{label} is not a partial isometry with final space S")
    if v_arr.shape != w_arr.shape:
        raise ShapeMismatchError(f"Shape mismatch: {v_arr.shape} vs {w_arr.shape}")

    g = psd_sqrt(b_arr, tol) + ctx.complement
    n = v_arr.shape[1]
    kernel_block = (np.eye(n) - adjoint(v_arr) @ v_arr) @ (np.eye(n) - adjoint(w_arr) @ w_arr)
    wa = analyze(w_arr, tol)
    if analyze(kernel_block, tol).rank != wa.signature.nullity:
        raise OutsideNeighborhoodError("N(V) and N(W) are not in general position for the section")
    u = adjoint(v_arr) @ w_arr + polar_decompose(kernel_block, tol).v

    unitarity = op_norm(adjoint(u) @ u - np.eye(n))
    if unitarity > tol.eq_tol:
        raise OutsideNeighborhoodError(f"unitary factor is not unitary (error {unitarity:.3e})")
    residual = max(
        op_norm(g @ ctx.p @ adjoint(g) - b_arr),
        op_norm(w_arr @ adjoint(u) - v_arr),
    )
    return SectionResult(g=g, u=u, residual=residual, unitarity_error=unitarity)


def l1_action(
    g: npt.ArrayLike, b: npt.ArrayLike, ctx: FixedRangeContext, tol: Optional[ToleranceConfig] = None
) -> ComplexMatrix:
    """L₁(G, B) = G·B·G* for G ∈ G_S, B ∈ C_P."""
    tol = resolve_tolerances(tol)
    g_arr, b_arr = as_matrix(g), as_matrix(b)
    if not is_gs_member(g_arr, ctx, tol):
        raise PreconditionError("G does not belong to G_S")
    if not is_cp_member(b_arr, ctx, tol):
        raise PreconditionError("B is not a positive operator with range S")
    return g_arr @ b_arr @ adjoint(g_arr)


def l2_action(
    u: npt.ArrayLike, v: npt.ArrayLike, ctx: FixedRangeContext, tol: Optional[ToleranceConfig] = None
) -> ComplexMatrix:
    """L₂(U, V) = V·U* for a unitary U on the domain."""
    tol = resolve_tolerances(tol)
    u_arr, v_arr = as_matrix(u), as_matrix(v)
    if u_arr.shape != (v_arr.shape[1], v_arr.shape[1]):
        raise ShapeMismatchError(f"U must be {v_arr.shape[1]}x{v_arr.shape[1]}, got {u_arr.shape}")
    if op_norm(adjoint(u_arr) @ u_arr - np.eye(u_arr.shape[0])) > tol.eq_tol:
        raise PreconditionError("U is not unitary")
    if not is_pis_member(v_arr, ctx, tol):
        raise PreconditionError("V is not a partial isometry with final space S")
    return v_arr @ adjoint(u_arr)


def ls_action(
    g: npt.ArrayLike,
    h: npt.ArrayLike,
    b: npt.ArrayLike,
    ctx: FixedRangeContext,
    tol: Optional[ToleranceConfig] = None,
) -> ComplexMatrix:
    """G·B·H⁻¹ restricted to G ∈ G_S, which keeps the range equal to S."""
    tol = resolve_tolerances(tol)
    if not is_gs_member(g, ctx, tol):
        raise PreconditionError("G does not belong to G_S")
    if not crs_membership(b, ctx, tol):
        raise PreconditionError("B does not have range S")
    return apply_action(g, h, b, tol)


def l_prime_action(
    g: npt.ArrayLike,
    u: npt.ArrayLike,
    a: npt.ArrayLike,
    v: npt.ArrayLike,
    ctx: FixedRangeContext,
    tol: Optional[ToleranceConfig] = None,
) -> Tuple[ComplexMatrix, ComplexMatrix]:
    return l1_action(g, a, ctx, tol), l2_action(u, v, ctx, tol)


def l_prime_orbit_member(
    b: npt.ArrayLike,
    g: npt.ArrayLike,
    u: npt.ArrayLike,
    ctx: FixedRangeContext,
    tol: Optional[ToleranceConfig] = None,
) -> ComplexMatrix:
    """f⁻¹(L′((G, U), f(B))), an element of CR_S in the orbit of B."""
    tol = resolve_tolerances(tol)
    factors = factorize_f(b, ctx, tol)
    a_new, v_new = l_prime_action(g, u, factors.abs_b_star, factors.v, ctx, tol)
    return factorize_f_inverse(a_new, v_new, ctx, tol)


def fixed_range_intertwiner(
    b: npt.ArrayLike, c: npt.ArrayLike, ctx: FixedRangeContext, tol: Optional[ToleranceConfig] = None
) -> Intertwiner:
    """(G′, H) with G′ ∈ G_S and C = G′·B·H⁻¹ for two members of CR_S."""
    tol = resolve_tolerances(tol)
    for label, x in (("B", b), ("C", c)):
        if not crs_membership(x, ctx, tol):
            raise PreconditionError(f"{label} does not have range S")
    base = build_intertwiner(b, c, tol)
    g_prime = base.g @ ctx.p + ctx.complement
    residual = op_norm(apply_action(g_prime, base.h, b, tol) - as_matrix(c))
    return Intertwiner(g=g_prime, h=base.h, residual=residual)
