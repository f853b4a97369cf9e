"""Dense complex matrix kernel with explicit rank tolerance.

Matrices are plain ``numpy.ndarray`` of dtype complex128.  Everything here is
a thin, contract-checked layer over LAPACK (via ``numpy.linalg``): Hermitian
eigendecomposition, SVD, Moore-Penrose pseudoinverse, PSD square root and
spectral norm.  All functions are pure and deterministic for a fixed input.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonSquareError, NotHermitianError, NotPSDError

DEFAULT_HERMITICITY_TOL = 1e-10


@dataclass(frozen=True)
class RankTolerance:
    """Relative cutoff below which singular values count as zero.

    ``relative_cutoff`` is a fraction of the largest singular value; ``None``
    selects the default ``1e-10 * max(rows, cols)``.
    """

    relative_cutoff: float | None = None

    def __post_init__(self):
        rc = self.relative_cutoff
        if rc is not None and not (0.0 <= rc < 1.0):
            raise ValueError(f"relative_cutoff must lie in [0, 1), got {rc}")

    def cutoff_for(self, shape: tuple[int, int]) -> float:
        if self.relative_cutoff is not None:
            return self.relative_cutoff
        return 1e-10 * max(shape)


def as_cmatrix(M, name: str = "matrix") -> np.ndarray:
    """Validate and convert to a complex128 2-D array with finite entries."""
    A = np.asarray(M, dtype=np.complex128)
    if A.ndim != 2 or A.shape[0] < 1 or A.shape[1] < 1:
        raise ValueError(f"{name} must be a 2-D matrix with positive shape, got shape {A.shape}")
    if not np.all(np.isfinite(A.real)) or not np.all(np.isfinite(A.imag)):
        raise ValueError(f"{name} contains non-finite entries")
    return A


def frob(M: np.ndarray) -> float:
    return float(np.linalg.norm(M))


def _require_square(M: np.ndarray, name: str) -> None:
    if M.shape[0] != M.shape[1]:
        raise NonSquareError(f"{name} must be square, got shape {M.shape}")


def hermitian_residual(M: np.ndarray) -> float:
    """Relative Frobenius distance of M from its conjugate transpose."""
    return frob(M - M.conj().T) / max(1.0, frob(M))


def hermitian_eig(M, hermiticity_tol: float = DEFAULT_HERMITICITY_TOL):
    """Eigendecomposition of a Hermitian matrix.

    Returns ``(eigenvalues, V)`` with eigenvalues real ascending and
    ``M = V diag(eigenvalues) V*``.  The symmetry residual must satisfy
    ``||M - M*||_F <= hermiticity_tol * max(1, ||M||_F)``; the decomposition
    is taken of the symmetrized matrix, so round-off asymmetry is harmless.
    """
    M = as_cmatrix(M)
    _require_square(M, "matrix")
    if frob(M - M.conj().T) > hermiticity_tol * max(1.0, frob(M)):
        raise NotHermitianError(
            f"symmetry residual {hermitian_residual(M):.3e} exceeds tolerance {hermiticity_tol:.1e}"
        )
    evals, V = np.linalg.eigh(0.5 * (M + M.conj().T))
    return evals, V


def svd(M):
    """Singular value decomposition ``M = U diag(s) Vh``.

    ``s`` is nonincreasing and nonnegative; ``s[0]`` is the spectral norm.
    """
    M = as_cmatrix(M)
    return np.linalg.svd(M)


def spectral_norm(M) -> float:
    """Largest singular value."""
    M = as_cmatrix(M)
    return float(np.linalg.svd(M, compute_uv=False)[0])


def pinv(M, tol: RankTolerance | None = None) -> np.ndarray:
    """Moore-Penrose pseudoinverse with an explicit rank cutoff.

    Singular values at or below ``cutoff * s_max`` are zeroed rather than
    inverted, which fixes the effective rank of the result.
    """
    M = as_cmatrix(M)
    tol = tol or RankTolerance()
    U, s, Vh = np.linalg.svd(M, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros((M.shape[1], M.shape[0]), dtype=np.complex128)
    keep = s > tol.cutoff_for(M.shape) * s[0]
    s_inv = np.zeros_like(s)
    s_inv[keep] = 1.0 / s[keep]
    return (Vh.conj().T * s_inv) @ U.conj().T


def psd_sqrt(A, tol: RankTolerance | None = None) -> np.ndarray:
    """Hermitian PSD square root ``S`` with ``S @ S = A``.

    Eigenvalues in ``[-cutoff * lam_max, 0)`` are clamped to zero (round-off
    from random PSD constructions); a significantly negative eigenvalue
    raises ``NotPSDError``.  The range of ``S`` equals the range of ``A`` at
    the effective rank.
    """
    A = as_cmatrix(A)
    _require_square(A, "matrix")
    tol = tol or RankTolerance()
    try:
        evals, V = hermitian_eig(A)
    except NotHermitianError as exc:
        raise NotPSDError(f"matrix is not Hermitian: {exc}") from exc
    lam_max = max(float(evals[-1]), 0.0)
    cutoff = tol.cutoff_for(A.shape) * max(lam_max, 1e-300)
    if float(evals[0]) < -cutoff:
        raise NotPSDError(f"eigenvalue {evals[0]:.3e} below -{cutoff:.3e}")
    lam = np.where(evals > cutoff, evals, 0.0)
    return (V * np.sqrt(lam)) @ V.conj().T
