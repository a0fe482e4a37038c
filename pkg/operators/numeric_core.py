"""Dense complex matrix substrate: SVD, numerical rank and orthonormal bases.

Matrices are plain ``numpy`` arrays of dtype ``complex128``; real input is
embedded into the complex field. Every function here is pure.
"""

import hashlib
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Tuple

import numpy as np
import numpy.typing as npt
from scipy import linalg as sla

from config.settings import ToleranceConfig, resolve_tolerances
from .errors import ShapeMismatchError, SvdConvergenceError

logger = logging.getLogger(__name__)

ComplexMatrix = npt.NDArray[np.complex128]


def as_matrix(a: npt.ArrayLike) -> ComplexMatrix:
    """Coerce input to a finite 2-D complex128 array."""
    arr = np.array(a, dtype=np.complex128)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        raise ShapeMismatchError(f"Expected a 2-D matrix, got {arr.ndim} dimensions")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ShapeMismatchError(f"Matrix must have at least one row and column, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("Matrix entries must be finite")
    return arr


def adjoint(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def op_norm(a: np.ndarray) -> float:
    """Spectral norm; zero for matrices with an empty dimension."""
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))


def require_same_shape(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise ShapeMismatchError(f"Shape mismatch: {a.shape} vs {b.shape}")


def digest_inputs(*arrays: np.ndarray) -> str:
    """sha256 over the shapes and little-endian complex128 bytes of the inputs."""
    h = hashlib.sha256()
    for arr in arrays:
        data = np.ascontiguousarray(np.asarray(arr, dtype="<c16"))
        h.update(repr(data.shape).encode("ascii"))
        h.update(data.tobytes())
    return h.hexdigest()


@dataclass(frozen=True, eq=False)
class SvdFactorization:
    """A = u @ diag(singular_values) @ v^H with u (m x m), v (n x n) unitary."""
    u: ComplexMatrix
    singular_values: npt.NDArray[np.float64]
    v: ComplexMatrix

    @property
    def shape(self) -> Tuple[int, int]:
        return self.u.shape[0], self.v.shape[0]

    def sigma_matrix(self) -> np.ndarray:
        m, n = self.shape
        s = np.zeros((m, n), dtype=np.complex128)
        k = len(self.singular_values)
        s[np.arange(k), np.arange(k)] = self.singular_values
        return s

    def reconstruct(self) -> ComplexMatrix:
        return self.u @ self.sigma_matrix() @ adjoint(self.v)

    def unitarity_error(self) -> float:
        m, n = self.shape
        return max(
            op_norm(adjoint(self.u) @ self.u - np.eye(m)),
            op_norm(adjoint(self.v) @ self.v - np.eye(n)),
        )

    def reconstruction_error(self, a: np.ndarray) -> float:
        return op_norm(self.reconstruct() - a)


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of C^ambient_dim given by an orthonormal basis (columns)."""
    ambient_dim: int
    basis: ComplexMatrix

    def __post_init__(self):
        if self.ambient_dim < 1:
            raise ShapeMismatchError("ambient_dim must be positive")
        basis = np.array(self.basis, dtype=np.complex128)
        if basis.ndim == 1:
            basis = basis.reshape(-1, 1)
        if basis.ndim != 2 or basis.shape[0] != self.ambient_dim:
            raise ShapeMismatchError(
                f"Basis shape {basis.shape} does not live in dimension {self.ambient_dim}"
            )
        if basis.shape[1] > self.ambient_dim:
            raise ShapeMismatchError(
                f"Basis has {basis.shape[1]} columns in a {self.ambient_dim}-dimensional space"
            )
        basis.setflags(write=False)
        object.__setattr__(self, "basis", basis)

    @property
    def dim(self) -> int:
        return int(self.basis.shape[1])

    def projector(self) -> ComplexMatrix:
        return self.basis @ adjoint(self.basis)

    def orthonormality_error(self) -> float:
        if self.dim == 0:
            return 0.0
        return op_norm(adjoint(self.basis) @ self.basis - np.eye(self.dim))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, np.zeros((ambient_dim, 0), dtype=np.complex128))

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, np.eye(ambient_dim, dtype=np.complex128))

    @classmethod
    def span(cls, vectors: npt.ArrayLike, tol: Optional[ToleranceConfig] = None) -> "Subspace":
        """Orthonormalize the column span of ``vectors``."""
        arr = np.array(vectors, dtype=np.complex128)
        if arr.ndim == 1:
            arr = arr.reshape(-1, 1)
        if arr.shape[1] == 0:
            return cls.zero(arr.shape[0])
        return range_basis(arr, tol)


@dataclass(frozen=True)
class OrbitSignature:
    """(nullity k, rank l, defect m): the complete invariant of GAH^-1 orbits."""
    nullity: int
    rank: int
    defect: int

    @property
    def domain_dim(self) -> int:
        return self.nullity + self.rank

    @property
    def codomain_dim(self) -> int:
        return self.rank + self.defect

    @property
    def index(self) -> int:
        return self.nullity - self.defect

    @property
    def orbit_id(self) -> str:
        return f"k{self.nullity}-l{self.rank}-m{self.defect}"

    def as_list(self) -> List[int]:
        return [self.nullity, self.rank, self.defect]


@lru_cache(maxsize=64)
def _round_robin(n: int) -> Tuple[Tuple[np.ndarray, np.ndarray], ...]:
    """Disjoint column pairs covering every (p, q) once per sweep."""
    players = list(range(n + (n % 2)))
    size = len(players)
    rounds = []
    for _ in range(size - 1):
        pairs = [
            (players[i], players[size - 1 - i])
            for i in range(size // 2)
            if players[i] < n and players[size - 1 - i] < n
        ]
        if pairs:
            p = np.array([min(pair) for pair in pairs], dtype=np.intp)
            q = np.array([max(pair) for pair in pairs], dtype=np.intp)
            rounds.append((p, q))
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(rounds)


def _complete_columns(cols: np.ndarray, size: int) -> np.ndarray:
    """Extend orthonormal columns to a unitary of order ``size``."""
    if cols.shape[1] == 0:
        return np.eye(size, dtype=np.complex128)
    if cols.shape[1] == size:
        return cols
    complement = sla.null_space(adjoint(cols))
    return np.hstack([cols, complement[:, : size - cols.shape[1]]])


def _jacobi_tall(a: np.ndarray, tol: ToleranceConfig) -> SvdFactorization:
    """One-sided (Hestenes) Jacobi SVD for m >= n."""
    m, n = a.shape
    work = a.copy()
    v = np.eye(n, dtype=np.complex128)
    rounds = _round_robin(n)

    converged = n < 2
    sweep = 0
    while not converged:
        if sweep >= tol.svd_max_sweeps:
            alpha = np.sum(np.abs(work) ** 2, axis=0)
            gram = adjoint(work) @ work
            scale = np.sqrt(np.outer(alpha, alpha))
            off = np.abs(gram - np.diag(np.diag(gram)))
            with np.errstate(divide="ignore", invalid="ignore"):
                rel = np.where(scale > 0, off / scale, 0.0)
            raise SvdConvergenceError(
                "Jacobi SVD did not converge", residual=float(np.max(rel)), sweeps=sweep
            )
        sweep += 1
        rotated = False
        for p, q in rounds:
            ap = work[:, p]
            aq = work[:, q]
            alpha = np.sum(np.abs(ap) ** 2, axis=0)
            beta = np.sum(np.abs(aq) ** 2, axis=0)
            g = np.sum(ap.conj() * aq, axis=0)
            off = np.abs(g)
            active = off > tol.svd_tol * m * np.sqrt(alpha * beta)
            if not np.any(active):
                continue
            rotated = True
            p, q = p[active], q[active]
            ap, aq = ap[:, active], aq[:, active]
            alpha, beta, g, off = alpha[active], beta[active], g[active], off[active]

            phase = g / off
            zeta = (beta - alpha) / (2.0 * off)
            sign = np.where(zeta >= 0.0, 1.0, -1.0)
            t = sign / (np.abs(zeta) + np.sqrt(1.0 + zeta * zeta))
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = c * t

            work[:, p] = c * ap - (s * phase.conj()) * aq
            work[:, q] = (s * phase) * ap + c * aq
            vp, vq = v[:, p], v[:, q]
            v[:, p] = c * vp - (s * phase.conj()) * vq
            v[:, q] = (s * phase) * vp + c * vq
        converged = not rotated

    logger.debug("Jacobi SVD of %dx%d converged after %d sweeps", m, n, sweep)

    sigma = np.linalg.norm(work, axis=0)
    order = np.argsort(-sigma, kind="stable")
    sigma = sigma[order]
    work = work[:, order]
    v = v[:, order]

    nonzero = sigma > 0.0
    u_cols = work[:, nonzero] / sigma[nonzero]
    u = _complete_columns(u_cols, m)
    return SvdFactorization(u=u, singular_values=sigma, v=v)


def svd(a: npt.ArrayLike, tol: Optional[ToleranceConfig] = None) -> SvdFactorization:
    """Full SVD with descending singular values.

    The default one-sided Jacobi method keeps small singular values
    relatively accurate, which matters because the reduced minimum
    modulus is the smallest retained one.
    """
    tol = resolve_tolerances(tol)
    arr = as_matrix(a)
    if tol.svd_method == "lapack":
        u, s, vh = sla.svd(arr, full_matrices=True)
        return SvdFactorization(u=u, singular_values=s, v=adjoint(vh))

    m, n = arr.shape
    if m >= n:
        return _jacobi_tall(arr, tol)
    flipped = _jacobi_tall(adjoint(arr), tol)
    return SvdFactorization(u=flipped.v, singular_values=flipped.singular_values, v=flipped.u)


def numerical_rank(f: SvdFactorization, tol: Optional[ToleranceConfig] = None) -> int:
    """Count singular values above rank_tol_rel * sigma_1 * max(m, n)."""
    tol = resolve_tolerances(tol)
    sigma = f.singular_values
    if sigma.size == 0 or sigma[0] == 0.0:
        return 0
    cutoff = tol.rank_tol_rel * sigma[0] * max(f.shape)
    return int(np.count_nonzero(sigma > cutoff))


def range_basis(a: npt.ArrayLike, tol: Optional[ToleranceConfig] = None) -> Subspace:
    f = svd(a, tol)
    r = numerical_rank(f, tol)
    return Subspace(f.shape[0], f.u[:, :r])


def nullspace_basis(a: npt.ArrayLike, tol: Optional[ToleranceConfig] = None) -> Subspace:
    f = svd(a, tol)
    r = numerical_rank(f, tol)
    return Subspace(f.shape[1], f.v[:, r:])


def min_singular_value(a: np.ndarray) -> float:
    """Smallest singular value of a square matrix (0 for singular ones)."""
    return float(sla.svdvals(a)[-1])


def normalize_phase(x: np.ndarray) -> np.ndarray:
    """Scale a unit vector so its largest-magnitude entry is real positive."""
    k = int(np.argmax(np.abs(x)))
    if abs(x[k]) == 0.0:
        return x
    return x * (abs(x[k]) / x[k])
