"""Random operator ensembles with prescribed singular values.

Every generator takes an explicit ``numpy.random.Generator`` so callers can
derive independent deterministic streams per trial.
"""

from typing import Optional, Sequence, Tuple

import numpy as np

from config.settings import ToleranceConfig
from .numeric_core import ComplexMatrix, Subspace, adjoint
from .operator_calculus import analyze


def complex_gaussian(rng: np.random.Generator, shape: Tuple[int, ...]) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def haar_unitary(n: int, rng: np.random.Generator) -> ComplexMatrix:
    """QR of a complex Gaussian with the diagonal phases of R removed."""
    q, r = np.linalg.qr(complex_gaussian(rng, (n, n)))
    d = np.diag(r)
    return q * (d / np.abs(d))


def with_singular_values(
    m: int, n: int, sigma: Sequence[float], rng: np.random.Generator
) -> ComplexMatrix:
    """U·diag(σ)·V* for Haar U, V; len(σ) ≤ min(m, n), missing values are zero."""
    k = min(m, n)
    if len(sigma) > k:
        raise ValueError(f"{len(sigma)} singular values do not fit a {m}x{n} operator")
    diag = np.zeros((m, n), dtype=np.complex128)
    diag[np.arange(len(sigma)), np.arange(len(sigma))] = sigma
    return haar_unitary(m, rng) @ diag @ adjoint(haar_unitary(n, rng))


def random_sigma(
    rank: int,
    rng: np.random.Generator,
    sigma_min: float = 1e-2,
    sigma_max: float = 1.0,
) -> np.ndarray:
    """Log-uniform singular values in [sigma_min, sigma_max], both ends attained."""
    if rank == 0:
        return np.zeros(0)
    if rank == 1:
        return np.array([sigma_max])
    inner = np.exp(rng.uniform(np.log(sigma_min), np.log(sigma_max), size=rank - 2))
    return np.sort(np.concatenate([[sigma_max, sigma_min], inner]))[::-1]


def random_operator(
    m: int,
    n: int,
    rank: int,
    rng: np.random.Generator,
    sigma_min: float = 1e-2,
    sigma_max: float = 1.0,
) -> ComplexMatrix:
    return with_singular_values(m, n, random_sigma(rank, rng, sigma_min, sigma_max), rng)


def random_shape(rng: np.random.Generator, max_dim: int, min_dim: int = 2) -> Tuple[int, int]:
    m = int(rng.integers(min_dim, max_dim + 1))
    n = int(rng.integers(min_dim, max_dim + 1))
    return m, n


def ensemble_operator(rng: np.random.Generator, max_dim: int) -> ComplexMatrix:
    """One draw from the harness ensemble.

    Square and rectangular shapes, every rank from 0 to min(m, n), and a
    mix of well conditioned and near-deficient spectra (γ down to 1e-6).
    """
    m, n = random_shape(rng, max_dim)
    rank = int(rng.integers(0, min(m, n) + 1))
    sigma_min = float(10.0 ** rng.uniform(-6.0, -0.5)) if rng.random() < 0.3 else float(
        10.0 ** rng.uniform(-2.0, -0.3)
    )
    scale = float(10.0 ** rng.uniform(-0.5, 1.0))
    return random_operator(m, n, rank, rng, sigma_min=sigma_min * scale, sigma_max=scale)


def random_invertible(
    n: int, rng: np.random.Generator, sigma_min: float = 0.5, sigma_max: float = 2.0
) -> ComplexMatrix:
    return random_operator(n, n, n, rng, sigma_min=sigma_min, sigma_max=sigma_max)


def random_subspace(ambient: int, dim: int, rng: np.random.Generator) -> Subspace:
    return Subspace(ambient, haar_unitary(ambient, rng)[:, :dim])


def random_inner_inverse(
    b: np.ndarray,
    rng: np.random.Generator,
    scale: float = 1.0,
    tol: Optional[ToleranceConfig] = None,
) -> ComplexMatrix:
    """B† + (I − B†B)X + Y(I − BB†): every inner inverse of B has this form."""
    ba = analyze(b, tol)
    m, n = ba.a.shape
    x = scale * complex_gaussian(rng, (n, m))
    y = scale * complex_gaussian(rng, (n, m))
    return ba.pinv + ba.p_null @ x + y @ ba.p_defect


def near_identity(n: int, rng: np.random.Generator, radius: float) -> ComplexMatrix:
    """I + E with ‖E‖ = radius exactly."""
    e = complex_gaussian(rng, (n, n))
    return np.eye(n) + radius * e / np.linalg.norm(e, 2)


def unit_direction(shape: Tuple[int, int], rng: np.random.Generator) -> ComplexMatrix:
    e = complex_gaussian(rng, shape)
    return e / np.linalg.norm(e, 2)


def random_gs_member(s: Subspace, rng: np.random.Generator) -> ComplexMatrix:
    """Q_S·M·Q_S* + (I − P_S) for a random invertible M on S."""
    block = random_invertible(s.dim, rng) if s.dim else np.zeros((0, 0), dtype=np.complex128)
    return s.basis @ block @ adjoint(s.basis) + np.eye(s.ambient_dim) - s.projector()


def random_crs_member(s: Subspace, n: int, rng: np.random.Generator) -> ComplexMatrix:
    """Q_S·X with X of full row rank, so the range is exactly S."""
    if s.dim > n:
        raise ValueError(f"a {s.dim}-dimensional range does not fit a domain of dimension {n}")
    if s.dim == 0:
        return np.zeros((s.ambient_dim, n), dtype=np.complex128)
    x = random_operator(s.dim, n, s.dim, rng, sigma_min=0.2, sigma_max=2.0)
    return s.basis @ x
