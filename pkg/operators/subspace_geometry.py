"""Minimal angles between subspaces and the sum/intersection criteria built on them."""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
import numpy.typing as npt
from scipy import linalg as sla

from config.settings import ToleranceConfig, resolve_tolerances
from .errors import ShapeMismatchError
from .numeric_core import Subspace, adjoint, as_matrix, nullspace_basis, op_norm
from .operator_calculus import analyze

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SumCriterion:
    sum_is_everything: bool
    c0_perp_lt_1: bool

    @property
    def agree(self) -> bool:
        return self.sum_is_everything == self.c0_perp_lt_1


@dataclass(frozen=True)
class NullspaceCriteria:
    """Four readings of "N(C) is a good perturbation of N(B)".

    ``iv`` is the corrected form N(B) = P_{N(B)}(N(C)); ``iv_as_printed`` keeps
    the literal N(C) = P_{N(B)}(N(C)) for the report.
    """
    i: bool
    ii: bool
    iii: bool
    iv: bool
    iv_as_printed: bool
    equal_nullity: bool

    def as_tuple(self) -> Tuple[bool, bool, bool, bool]:
        return self.i, self.ii, self.iii, self.iv


def _require_same_ambient(m: Subspace, n: Subspace) -> None:
    if m.ambient_dim != n.ambient_dim:
        raise ShapeMismatchError(
            f"Ambient dimension mismatch: {m.ambient_dim} vs {n.ambient_dim}"
        )


def _cosines(m: Subspace, n: Subspace) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Full SVD of Q_M* Q_N: principal cosines and both sets of principal vectors."""
    u, s, vh = sla.svd(adjoint(m.basis) @ n.basis, full_matrices=True)
    return u, np.clip(s, 0.0, 1.0), adjoint(vh)


def cos_c0(m: Subspace, n: Subspace, tol: Optional[ToleranceConfig] = None) -> float:
    _require_same_ambient(m, n)
    if m.dim == 0 or n.dim == 0:
        return 0.0
    return float(min(1.0, sla.svdvals(adjoint(m.basis) @ n.basis)[0]))


def orth_complement(s: Subspace, tol: Optional[ToleranceConfig] = None) -> Subspace:
    if s.dim == 0:
        return Subspace.full(s.ambient_dim)
    if s.dim == s.ambient_dim:
        return Subspace.zero(s.ambient_dim)
    return nullspace_basis(adjoint(s.basis), tol)


def _split(
    m: Subspace, n: Subspace, tol: ToleranceConfig
) -> Tuple[Subspace, Subspace, Subspace, np.ndarray]:
    """(M ∩ N, M ⊖ (M ∩ N), N ⊖ (M ∩ N), principal cosines)."""
    ambient = m.ambient_dim
    if m.dim == 0 or n.dim == 0:
        return Subspace.zero(ambient), m, n, np.zeros(0)
    u, s, v = _cosines(m, n)
    k = int(np.count_nonzero(s >= 1.0 - tol.angle_one_tol))
    common = Subspace(ambient, m.basis @ u[:, :k])
    return (
        common,
        Subspace(ambient, m.basis @ u[:, k:]),
        Subspace(ambient, n.basis @ v[:, k:]),
        s,
    )


def intersect(m: Subspace, n: Subspace, tol: Optional[ToleranceConfig] = None) -> Subspace:
    """M ∩ N: principal directions whose cosine is within angle_one_tol of 1."""
    tol = resolve_tolerances(tol)
    _require_same_ambient(m, n)
    return _split(m, n, tol)[0]


def cos_c(m: Subspace, n: Subspace, tol: Optional[ToleranceConfig] = None) -> float:
    """c(M, N) = c0(M ∩ (M ∩ N)⊥, N ∩ (M ∩ N)⊥)."""
    tol = resolve_tolerances(tol)
    _require_same_ambient(m, n)
    _, m_red, n_red, _ = _split(m, n, tol)
    return cos_c0(m_red, n_red, tol)


def angle(m: Subspace, n: Subspace, tol: Optional[ToleranceConfig] = None) -> float:
    return math.acos(min(1.0, max(0.0, cos_c(m, n, tol))))


def subspace_sum_dim(m: Subspace, n: Subspace, tol: Optional[ToleranceConfig] = None) -> int:
    """dim(M + N) as the rank of the concatenated bases.

    A singular value σ of [Q_M Q_N] with σ² ≤ angle_one_tol marks a dependent
    direction, the same cutoff ``intersect`` applies to cosines.
    """
    tol = resolve_tolerances(tol)
    _require_same_ambient(m, n)
    stacked = np.hstack([m.basis, n.basis])
    if stacked.shape[1] == 0:
        return 0
    s = sla.svdvals(stacked)
    return int(np.count_nonzero(s * s > tol.angle_one_tol))


def contains(outer: Subspace, inner: Subspace, tol: Optional[ToleranceConfig] = None) -> bool:
    """inner ⊆ outer within eq_tol."""
    tol = resolve_tolerances(tol)
    _require_same_ambient(outer, inner)
    if inner.dim == 0:
        return True
    residual = inner.basis - outer.projector() @ inner.basis
    return op_norm(residual) <= tol.eq_tol


def same_subspace(m: Subspace, n: Subspace, tol: Optional[ToleranceConfig] = None) -> bool:
    return m.dim == n.dim and contains(m, n, tol) and contains(n, m, tol)


def image_under(p: np.ndarray, s: Subspace, tol: Optional[ToleranceConfig] = None) -> Subspace:
    """Span of p applied to a subspace."""
    return Subspace.span(p @ s.basis, tol) if s.dim else Subspace.zero(p.shape[0])


def prop22_verdict(m: Subspace, n: Subspace, tol: Optional[ToleranceConfig] = None) -> SumCriterion:
    """M + N = H exactly when c0(M⊥, N⊥) < 1."""
    tol = resolve_tolerances(tol)
    _require_same_ambient(m, n)
    sum_is_everything = subspace_sum_dim(m, n, tol) == m.ambient_dim
    c0_perp = cos_c0(orth_complement(m, tol), orth_complement(n, tol), tol)
    return SumCriterion(
        sum_is_everything=sum_is_everything,
        c0_perp_lt_1=c0_perp < 1.0 - tol.angle_one_tol,
    )


def prop23_verdicts(
    b: npt.ArrayLike, c: npt.ArrayLike, tol: Optional[ToleranceConfig] = None
) -> NullspaceCriteria:
    tol = resolve_tolerances(tol)
    b_arr, c_arr = as_matrix(b), as_matrix(c)
    if b_arr.shape != c_arr.shape:
        raise ShapeMismatchError(f"Shape mismatch: {b_arr.shape} vs {c_arr.shape}")
    ba, ca = analyze(b_arr, tol), analyze(c_arr, tol)
    null_b, null_c = ba.null_space(), ca.null_space()
    threshold = 1.0 - tol.angle_one_tol

    gap = op_norm(ba.p_null - ca.p_null)
    cond_i = gap < threshold
    cond_ii = subspace_sum_dim(null_c, ba.corange_space(), tol) == b_arr.shape[1]
    cond_iii = cos_c0(null_b, ca.corange_space(), tol) < threshold

    # P_{N(B)}(N(C)) fills N(B) iff no direction of N(B) is orthogonal to N(C);
    # a cosine s counts as zero once the complementary cosine passes the
    # intersection cutoff, i.e. s² ≤ τ(2 − τ).
    tau = tol.angle_one_tol
    if null_b.dim == 0:
        cond_iv = True
    elif null_c.dim == 0:
        cond_iv = False
    else:
        s = sla.svdvals(adjoint(null_b.basis) @ null_c.basis)
        cond_iv = int(np.count_nonzero(s * s > tau * (2.0 - tau))) == null_b.dim

    projected = image_under(ba.p_null, null_c, tol)
    iv_as_printed = same_subspace(null_c, projected, tol)
    logger.debug(
        "nullspace criteria: gap=%.3e i=%s ii=%s iii=%s iv=%s iv_as_printed=%s",
        gap, cond_i, cond_ii, cond_iii, cond_iv, iv_as_printed,
    )
    return NullspaceCriteria(
        i=cond_i,
        ii=cond_ii,
        iii=cond_iii,
        iv=cond_iv,
        iv_as_printed=iv_as_printed,
        equal_nullity=null_b.dim == null_c.dim,
    )


def projector_gap_identity(
    m: Subspace, n: Subspace, tol: Optional[ToleranceConfig] = None
) -> Tuple[float, float]:
    """(c(M, N), ‖P_M − P_{N⊥}‖); the two differ in general and are only reported."""
    tol = resolve_tolerances(tol)
    n_perp = orth_complement(n, tol)
    return cos_c(m, n, tol), op_norm(m.projector() - n_perp.projector())
