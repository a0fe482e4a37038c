"""Perturbation sequences and the battery of equivalent convergence conditions.

A finite sequence B₁ … B_N stands in for Bₙ → B. Limit statements are
decided by ``vanishes`` on the tail of the sequence (the last
``tail_fraction`` of the terms); "for n large enough" means "for every
tail term".
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel
from scipy import linalg as sla

from config.settings import ConvergenceThresholds, ToleranceConfig, resolve_tolerances
from .certificates import InequalityCertificate
from .errors import ConstructionInapplicableError, PreconditionError
from .metrics_perturbation import MetricKind, m_membership, metric_dx_from
from .numeric_core import (
    ComplexMatrix,
    adjoint,
    digest_inputs,
    normalize_phase,
    op_norm,
    require_same_shape,
)
from .operator_calculus import OperatorAnalysis, analyze, polar_decompose, polar_via_pinv
from .random_ops import unit_direction
from .subspace_geometry import contains, cos_c0, image_under, subspace_sum_dim

logger = logging.getLogger(__name__)

THM48_CONDITIONS = (
    "i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix", "x", "xi", "xii", "xiii",
)
IZUMINO_CONDITIONS = ("iz1", "iz2", "iz3", "iz4", "iz5", "iz6")
DEFAULT_LENGTH = 50


class SequenceKind(str, Enum):
    RANK_PRESERVING = "rank_preserving"
    RANK_DROPPING = "rank_dropping"
    ISOMETRY_FLIP = "isometry_flip"
    PINV_BLOWUP = "pinv_blowup"


@dataclass(frozen=True, eq=False)
class PerturbationSequence:
    base: ComplexMatrix
    terms: List[ComplexMatrix]
    kind: SequenceKind
    params: Dict[str, Any] = field(default_factory=dict)
    seed: int = 0
    evidence: Dict[str, List[float]] = field(default_factory=dict)

    @property
    def length(self) -> int:
        return len(self.terms)


class ConvergenceReport(BaseModel):
    kind: str
    length: int
    tail_index: int
    verdicts: Dict[str, bool]
    evidence: Dict[str, float]
    thresholds: Dict[str, float]
    consistent: bool


class ShadowReport(BaseModel):
    """Quantitative side statements that accompany a convergent sequence."""
    uniform_angle: float
    lipschitz_ratio: float
    lipschitz_constant: float
    gamma_relative_gap: float
    polar_gap: float
    polar_vanishes: bool
    metrics_agree: bool


@dataclass(frozen=True, eq=False)
class GeneralizedInverse:
    """Aₙ = G₁⁻¹B† together with the residuals that certify it."""
    a_n: ComplexMatrix
    outer_residual: float
    inner_residual: float
    commutation_residual: float
    norm: float
    norm_bound: float


@dataclass(frozen=True, eq=False)
class DiscontinuityReport:
    sequence: PerturbationSequence
    certificates: List[InequalityCertificate]
    distances: List[float]
    pinv_norms: List[float]
    projector_gaps: List[float]


# -- limit decisions -------------------------------------------------------

def tail_index(length: int, thresholds: ConvergenceThresholds) -> int:
    return length - max(1, int(math.ceil(length * thresholds.tail_fraction)))


def _head_length(length: int, thresholds: ConvergenceThresholds) -> int:
    return max(1, int(length * thresholds.tail_fraction))


def vanishes(values: Sequence[float], thresholds: Optional[ConvergenceThresholds] = None) -> bool:
    """Decide "qₙ → 0" on a finite sequence.

    True when the tail maximum is below ``vanish_abs``, or below
    ``decay_ratio`` times the maximum over the head of the sequence.
    """
    thresholds = thresholds or ConvergenceThresholds()
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        return True
    tail = arr[tail_index(arr.size, thresholds):]
    if not np.all(np.isfinite(tail)):
        return False
    tail_max = float(tail.max())
    if tail_max <= thresholds.vanish_abs:
        return True
    head = arr[: _head_length(arr.size, thresholds)]
    head_max = float(np.max(np.where(np.isfinite(head), head, np.inf)))
    return tail_max <= thresholds.decay_ratio * head_max


def _relative_gamma_gap(gamma_n: float, gamma: float) -> float:
    if math.isinf(gamma_n) and math.isinf(gamma):
        return 0.0
    if math.isinf(gamma_n) or math.isinf(gamma):
        return math.inf
    return abs(gamma_n - gamma) / gamma


# -- sequence generation ---------------------------------------------------

def _rank_one_direction(ba: OperatorAnalysis) -> ComplexMatrix:
    """v·u* with u ∈ N(B), v ∈ N(B*) taken from the SVD, phase-normalized."""
    u = normalize_phase(ba.null_space().basis[:, 0])
    v = normalize_phase(ba.defect_space().basis[:, 0])
    return np.outer(v, u.conj())


def generate_sequence(
    kind: SequenceKind,
    b: npt.ArrayLike,
    params: Optional[Dict[str, Any]] = None,
    seed: int = 0,
    tol: Optional[ToleranceConfig] = None,
) -> PerturbationSequence:
    """Build B₁ … B_N converging in norm to B.

    rank_preserving: Bₙ = Gₙ·B·Hₙ with ‖Gₙ − I‖ = ‖Hₙ − I‖ = c/n.
    rank_dropping:   Bₙ = B + (s/n)·v·u*, u ∈ N(B), v ∈ N(B*), s = min(1, γ(B))
                     unless a `scale` parameter overrides it.
    pinv_blowup:     the same with s fixed, so ‖Bₙ†‖ = n/s.
    isometry_flip:   Bₙ = B − (s/n)·v·u*, the flip of its partner
                     Bₙ⁺ = B + (s/n)·v·u* along u; the partners' polar
                     isometries stay at distance 2.
    """
    tol = resolve_tolerances(tol)
    kind = SequenceKind(kind)
    params = dict(params or {})
    length = int(params.setdefault("length", DEFAULT_LENGTH))
    if length < 1:
        raise ValueError("length must be a positive integer")
    ba = analyze(b, tol)
    base = ba.a
    m, n = base.shape
    evidence: Dict[str, List[float]] = {}

    if kind is SequenceKind.RANK_PRESERVING:
        c = float(params.setdefault("c", 0.25))
        if not 0.0 <= c < 1.0:
            raise ValueError("c must lie in [0, 1)")
        rng = np.random.default_rng(seed)
        e1 = unit_direction((m, m), rng)
        e2 = unit_direction((n, n), rng)
        terms = [
            (np.eye(m) + (c / k) * e1) @ base @ (np.eye(n) + (c / k) * e2)
            for k in range(1, length + 1)
        ]
    else:
        if m_membership(base, tol):
            raise ConstructionInapplicableError(
                f"{kind.value} needs B neither injective nor surjective"
            )
        direction = _rank_one_direction(ba)
        # s ≤ γ(B) keeps ‖Bₙ†‖ = n/s above every bound on ‖B†‖ across the tail
        natural = min(1.0, ba.gamma)
        if kind is SequenceKind.PINV_BLOWUP:
            scale = natural
        else:
            scale = float(params.get("scale", natural))
        if scale <= 0.0:
            raise ValueError("scale must be positive")
        params["scale"] = scale
        sign = -1.0 if kind is SequenceKind.ISOMETRY_FLIP else 1.0
        terms = [base + sign * (scale / k) * direction for k in range(1, length + 1)]

        if kind is SequenceKind.PINV_BLOWUP:
            evidence["pinv_norms"] = [analyze(t, tol).pinv_norm for t in terms]
        if kind is SequenceKind.ISOMETRY_FLIP:
            gaps, distances = [], []
            for k, term in enumerate(terms, start=1):
                partner = base + (scale / k) * direction
                gaps.append(
                    op_norm(polar_decompose(partner, tol).v - polar_decompose(term, tol).v)
                )
                distances.append(op_norm(partner - term))
            evidence["partner_isometry_gap"] = gaps
            evidence["partner_distance"] = distances

    logger.debug("generated %s sequence of length %d for a %dx%d base", kind.value, length, m, n)
    return PerturbationSequence(
        base=base, terms=terms, kind=kind, params=params, seed=seed, evidence=evidence
    )


# -- the constructive inner inverse ---------------------------------------

def build_generalized_inverse(
    b: npt.ArrayLike, bn: npt.ArrayLike, tol: Optional[ToleranceConfig] = None
) -> GeneralizedInverse:
    """Aₙ = G₁⁻¹B† = B†G₂⁻¹ with G₁ = I + B†(Bₙ − B), G₂ = I + (Bₙ − B)B†.

    Applies when ‖Bₙ − B‖ < 1/(2‖B†‖) and R(Bₙ) ∩ N(B†) = {0}; Aₙ is then an
    inner and outer inverse of Bₙ with ‖Aₙ‖ ≤ 2‖B†‖.
    """
    tol = resolve_tolerances(tol)
    ba, bna = analyze(b, tol), analyze(bn, tol)
    require_same_shape(ba.a, bna.a)
    return _generalized_inverse_from(ba, bna, tol)


def _generalized_inverse_from(
    ba: OperatorAnalysis, bna: OperatorAnalysis, tol: ToleranceConfig
) -> GeneralizedInverse:
    diff = bna.a - ba.a
    dist = op_norm(diff)
    if ba.pinv_norm > 0.0 and not dist < 1.0 / (2.0 * ba.pinv_norm):
        raise ConstructionInapplicableError(
            f"‖Bₙ − B‖ = {dist:.3e} is not below 1/(2‖B†‖) = {1.0 / (2.0 * ba.pinv_norm):.3e}"
        )
    if cos_c0(bna.range_space(), ba.defect_space(), tol) >= 1.0 - tol.angle_one_tol:
        raise ConstructionInapplicableError("R(Bₙ) meets N(B†) nontrivially")

    m, n = ba.a.shape
    g1 = np.eye(n) + ba.pinv @ diff
    g2 = np.eye(m) + diff @ ba.pinv
    a_n = sla.solve(g1, ba.pinv)
    other = adjoint(sla.solve(adjoint(g2), adjoint(ba.pinv)))
    return GeneralizedInverse(
        a_n=a_n,
        outer_residual=op_norm(a_n @ bna.a @ a_n - a_n),
        inner_residual=op_norm(bna.a @ a_n @ bna.a - bna.a),
        commutation_residual=op_norm(a_n - other),
        norm=op_norm(a_n),
        norm_bound=2.0 * ba.pinv_norm,
    )


def _bounded_inner_inverse_norm(
    ba: OperatorAnalysis, bna: OperatorAnalysis, tol: ToleranceConfig
) -> Tuple[float, bool]:
    """Norm of the constructed inner inverse, or of Bₙ† when the construction does not apply.

    The flag says whether the constructed inverse was used.
    """
    try:
        built = _generalized_inverse_from(ba, bna, tol)
    except ConstructionInapplicableError:
        return bna.pinv_norm, False
    scale = 1.0 + bna.norm * built.norm
    if built.inner_residual > tol.eq_tol * scale * scale:
        return bna.pinv_norm, False
    return built.norm, True


# -- the condition battery -------------------------------------------------

@dataclass
class _Measures:
    """Per-term quantities shared by both batteries."""
    norm_gap: List[float] = field(default_factory=list)
    pinv_gap: List[float] = field(default_factory=list)
    d_r: List[float] = field(default_factory=list)
    d_n: List[float] = field(default_factory=list)
    d_r_pinv: List[float] = field(default_factory=list)
    d_n_pinv: List[float] = field(default_factory=list)
    pinv_norm: List[float] = field(default_factory=list)
    inner_inverse_norm: List[float] = field(default_factory=list)
    inner_inverse_constructed: List[bool] = field(default_factory=list)
    gamma: List[float] = field(default_factory=list)
    gamma_gap: List[float] = field(default_factory=list)
    range_proj_gap: List[float] = field(default_factory=list)
    corange_proj_gap: List[float] = field(default_factory=list)
    sum_fills: List[bool] = field(default_factory=list)
    angle_xi: List[float] = field(default_factory=list)
    null_projection_ok: List[bool] = field(default_factory=list)
    angle_xiii: List[float] = field(default_factory=list)


def _measure(seq: PerturbationSequence, tol: ToleranceConfig) -> _Measures:
    ba = analyze(seq.base, tol)
    bpa = analyze(ba.pinv, tol)
    null_b = ba.null_space()
    corange_b = ba.corange_space()
    n = ba.a.shape[1]
    out = _Measures()
    for term in seq.terms:
        bna = analyze(term, tol)
        bnpa = analyze(bna.pinv, tol)
        out.norm_gap.append(op_norm(bna.a - ba.a))
        out.pinv_gap.append(op_norm(bna.pinv - ba.pinv))
        out.d_r.append(metric_dx_from(bna, ba, MetricKind.R))
        out.d_n.append(metric_dx_from(bna, ba, MetricKind.N))
        out.d_r_pinv.append(metric_dx_from(bnpa, bpa, MetricKind.R))
        out.d_n_pinv.append(metric_dx_from(bnpa, bpa, MetricKind.N))
        out.pinv_norm.append(bna.pinv_norm)
        inner_norm, constructed = _bounded_inner_inverse_norm(ba, bna, tol)
        out.inner_inverse_norm.append(inner_norm)
        out.inner_inverse_constructed.append(constructed)
        out.gamma.append(bna.gamma)
        out.gamma_gap.append(_relative_gamma_gap(bna.gamma, ba.gamma))
        out.range_proj_gap.append(op_norm(bna.p_range - ba.p_range))
        out.corange_proj_gap.append(op_norm(bna.p_corange - ba.p_corange))
        out.sum_fills.append(subspace_sum_dim(bna.null_space(), corange_b, tol) == n)
        out.angle_xi.append(cos_c0(bna.corange_space(), null_b, tol))
        projected = image_under(ba.p_null, bna.null_space(), tol)
        out.null_projection_ok.append(
            projected.dim == null_b.dim and contains(null_b, projected, tol)
        )
        out.angle_xiii.append(cos_c0(bna.range_space(), ba.defect_space(), tol))
    return out


def _tail(values: Sequence[Any], start: int) -> List[Any]:
    return list(values[start:])


def _tail_max(values: Sequence[float], start: int) -> float:
    tail = _tail(values, start)
    return float(max(tail)) if tail else 0.0


def _tail_min(values: Sequence[float], start: int) -> float:
    tail = _tail(values, start)
    return float(min(tail)) if tail else math.inf


def _tail_fraction(flags: Sequence[bool], start: int) -> float:
    tail = _tail(flags, start)
    return sum(tail) / len(tail) if tail else 0.0


def _report(
    seq: PerturbationSequence,
    start: int,
    verdicts: Dict[str, bool],
    evidence: Dict[str, float],
    thresholds: ConvergenceThresholds,
) -> ConvergenceReport:
    return ConvergenceReport(
        kind=seq.kind.value,
        length=seq.length,
        tail_index=start,
        verdicts=verdicts,
        evidence=evidence,
        thresholds=thresholds.as_dict(),
        consistent=len(set(verdicts.values())) <= 1,
    )


def _require_terms(seq: PerturbationSequence) -> None:
    if not seq.terms:
        raise PreconditionError("the sequence has no terms")
    for term in seq.terms:
        require_same_shape(seq.base, term)


def _thm48_from(
    seq: PerturbationSequence, mz: _Measures, tol: ToleranceConfig, thresholds: ConvergenceThresholds
) -> ConvergenceReport:
    start = tail_index(seq.length, thresholds)
    ba = analyze(seq.base, tol)
    bound = thresholds.bound_factor * ba.pinv_norm + tol.eq_tol
    gamma_floor = ba.gamma / thresholds.bound_factor - tol.eq_tol
    one = 1.0 - tol.angle_one_tol
    norm_conv = vanishes(mz.norm_gap, thresholds)

    verdicts = {
        "i": vanishes(mz.d_n, thresholds),
        "ii": vanishes(mz.d_r, thresholds),
        "iii": vanishes(mz.d_n_pinv, thresholds),
        "iv": vanishes(mz.d_r_pinv, thresholds),
        "v": norm_conv and vanishes(mz.pinv_gap, thresholds),
        "vi": norm_conv and _tail_max(mz.pinv_norm, start) <= bound,
        "vii": norm_conv and _tail_max(mz.inner_inverse_norm, start) <= bound,
        "viii": norm_conv and _tail_min(mz.gamma, start) >= gamma_floor,
        "ix": norm_conv and vanishes(mz.gamma_gap, thresholds),
        "x": norm_conv and all(_tail(mz.sum_fills, start)),
        "xi": norm_conv and _tail_max(mz.angle_xi, start) < one,
        "xii": norm_conv and all(_tail(mz.null_projection_ok, start)),
        "xiii": norm_conv and _tail_max(mz.angle_xiii, start) < one,
    }
    evidence = {
        "i": _tail_max(mz.d_n, start),
        "ii": _tail_max(mz.d_r, start),
        "iii": _tail_max(mz.d_n_pinv, start),
        "iv": _tail_max(mz.d_r_pinv, start),
        "v": _tail_max(mz.pinv_gap, start),
        "vi": _tail_max(mz.pinv_norm, start),
        "vii": _tail_max(mz.inner_inverse_norm, start),
        "vii_constructed": _tail_fraction(mz.inner_inverse_constructed, start),
        "viii": _tail_min(mz.gamma, start),
        "ix": _tail_max(mz.gamma_gap, start),
        "x": float(sum(not ok for ok in _tail(mz.sum_fills, start))),
        "xi": _tail_max(mz.angle_xi, start),
        "xii": float(sum(not ok for ok in _tail(mz.null_projection_ok, start))),
        "xiii": _tail_max(mz.angle_xiii, start),
        "norm_gap": _tail_max(mz.norm_gap, start),
        "pinv_bound": bound,
    }
    return _report(seq, start, verdicts, evidence, thresholds)


def _izumino_from(
    seq: PerturbationSequence, mz: _Measures, tol: ToleranceConfig, thresholds: ConvergenceThresholds
) -> ConvergenceReport:
    start = tail_index(seq.length, thresholds)
    ba = analyze(seq.base, tol)
    bound = thresholds.bound_factor * ba.pinv_norm + tol.eq_tol
    norm_conv = vanishes(mz.norm_gap, thresholds)
    verdicts = {
        "iz1": norm_conv and vanishes(mz.pinv_gap, thresholds),
        "iz2": norm_conv and vanishes(mz.range_proj_gap, thresholds),
        "iz3": norm_conv and vanishes(mz.corange_proj_gap, thresholds),
        "iz4": norm_conv and _tail_max(mz.pinv_norm, start) <= bound,
        "iz5": norm_conv and vanishes(mz.gamma_gap, thresholds),
        "iz6": norm_conv and _tail_max(mz.angle_xiii, start) < 1.0 - tol.angle_one_tol,
    }
    evidence = {
        "iz1": _tail_max(mz.pinv_gap, start),
        "iz2": _tail_max(mz.range_proj_gap, start),
        "iz3": _tail_max(mz.corange_proj_gap, start),
        "iz4": _tail_max(mz.pinv_norm, start),
        "iz5": _tail_max(mz.gamma_gap, start),
        "iz6": _tail_max(mz.angle_xiii, start),
        "norm_gap": _tail_max(mz.norm_gap, start),
    }
    return _report(seq, start, verdicts, evidence, thresholds)


def thm48_report(
    seq: PerturbationSequence,
    tol: Optional[ToleranceConfig] = None,
    thresholds: Optional[ConvergenceThresholds] = None,
) -> ConvergenceReport:
    """The thirteen equivalent conditions for Bₙ → B in d_X, each measured on the tail."""
    tol = resolve_tolerances(tol)
    thresholds = thresholds or ConvergenceThresholds()
    _require_terms(seq)
    return _thm48_from(seq, _measure(seq, tol), tol, thresholds)


def izumino_report(
    seq: PerturbationSequence,
    tol: Optional[ToleranceConfig] = None,
    thresholds: Optional[ConvergenceThresholds] = None,
) -> ConvergenceReport:
    """The six classical conditions, each conjoined with ‖Bₙ − B‖ → 0."""
    tol = resolve_tolerances(tol)
    thresholds = thresholds or ConvergenceThresholds()
    _require_terms(seq)
    return _izumino_from(seq, _measure(seq, tol), tol, thresholds)


def full_report(
    seq: PerturbationSequence,
    tol: Optional[ToleranceConfig] = None,
    thresholds: Optional[ConvergenceThresholds] = None,
) -> ConvergenceReport:
    """Both batteries on one measurement pass; consistent iff all nineteen verdicts agree."""
    tol = resolve_tolerances(tol)
    thresholds = thresholds or ConvergenceThresholds()
    _require_terms(seq)
    mz = _measure(seq, tol)
    main = _thm48_from(seq, mz, tol, thresholds)
    classic = _izumino_from(seq, mz, tol, thresholds)
    verdicts = {**main.verdicts, **classic.verdicts}
    evidence = {**classic.evidence, **main.evidence}
    report = _report(seq, main.tail_index, verdicts, evidence, thresholds)
    if not report.consistent:
        logger.warning(
            "inconsistent verdicts for %s sequence: %s",
            seq.kind.value,
            {k: v for k, v in verdicts.items()},
        )
    return report


def evaluate_shadows(
    seq: PerturbationSequence,
    tol: Optional[ToleranceConfig] = None,
    thresholds: Optional[ConvergenceThresholds] = None,
) -> ShadowReport:
    """Uniform angle bound, Lipschitz ratio of B ↦ B†, γ and polar-part convergence, d_R/d_N agreement."""
    tol = resolve_tolerances(tol)
    thresholds = thresholds or ConvergenceThresholds()
    _require_terms(seq)
    start = tail_index(seq.length, thresholds)
    ba = analyze(seq.base, tol)
    v_b = polar_via_pinv(ba.a, tol)
    null_b = ba.null_space()

    angles, ratios, gamma_gaps, polar_gaps, d_r, d_n = [], [], [], [], [], []
    for term in seq.terms:
        bna = analyze(term, tol)
        angles.append(cos_c0(null_b, bna.corange_space(), tol))
        dist = op_norm(bna.a - ba.a)
        ratios.append(op_norm(bna.pinv - ba.pinv) / dist if dist > 0.0 else 0.0)
        gamma_gaps.append(_relative_gamma_gap(bna.gamma, ba.gamma))
        polar_gaps.append(op_norm(polar_via_pinv(bna.a, tol) - v_b))
        d_r.append(metric_dx_from(bna, ba, MetricKind.R))
        d_n.append(metric_dx_from(bna, ba, MetricKind.N))

    # ‖A†‖ ≤ 2‖B†‖ near B turns the three-term estimate into 7‖B†‖²
    constant = 7.0 * ba.pinv_norm**2
    return ShadowReport(
        uniform_angle=_tail_max(angles, start),
        lipschitz_ratio=_tail_max(ratios, start),
        lipschitz_constant=constant,
        gamma_relative_gap=_tail_max(gamma_gaps, start),
        polar_gap=_tail_max(polar_gaps, start),
        polar_vanishes=vanishes(polar_gaps, thresholds),
        metrics_agree=vanishes(d_r, thresholds) == vanishes(d_n, thresholds),
    )


def discontinuity_demo(
    b: npt.ArrayLike, n_max: int = DEFAULT_LENGTH, tol: Optional[ToleranceConfig] = None
) -> DiscontinuityReport:
    """Bₙ → B in norm while ‖Bₙ†‖ grows without bound, at B neither injective nor surjective."""
    tol = resolve_tolerances(tol)
    ba = analyze(b, tol)
    if m_membership(ba.a, tol):
        raise PreconditionError("B is injective or surjective; B ↦ B† is continuous there")
    seq = generate_sequence(SequenceKind.PINV_BLOWUP, ba.a, {"length": n_max}, tol=tol)
    scale = seq.params["scale"]

    certificates: List[InequalityCertificate] = []
    distances, pinv_norms, gaps = [], [], []
    for k, term in enumerate(seq.terms, start=1):
        bna = analyze(term, tol)
        digest = digest_inputs(ba.a, bna.a)
        distances.append(op_norm(bna.a - ba.a))
        pinv_norms.append(bna.pinv_norm)
        gaps.append(op_norm(bna.p_range - ba.p_range))
        certificates.append(
            InequalityCertificate.compare(
                f"pinv_blowup_n{k}",
                k / scale - ba.pinv_norm,
                op_norm(bna.pinv - ba.pinv),
                tol,
                digest,
            )
        )
        certificates.append(
            InequalityCertificate.compare(
                f"projector_gap_n{k}", 1.0, metric_dx_from(bna, ba, MetricKind.R), tol, digest
            )
        )
    return DiscontinuityReport(
        sequence=seq,
        certificates=certificates,
        distances=distances,
        pinv_norms=pinv_norms,
        projector_gaps=gaps,
    )
