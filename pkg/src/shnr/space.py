"""Weighted (semi-Hilbertian) space context and the adjoint calculus.

A positive semidefinite weight ``A`` induces the semi-inner product
``<x, y>_A = <Ax, y>`` (linear in the first slot, conjugate-linear in the
second).  ``SemiHilbertSpace`` caches the factors needed everywhere else:
the PSD square root ``S = A^(1/2)``, its pseudoinverse, ``A^+``, an
orthonormal basis ``U_r`` of the range of ``A`` and the orthogonal range
projection ``P``.

The computational reduction used throughout: an operator ``T`` that admits a
weighted adjoint maps the null space of ``A`` into itself, so its weighted
seminorm / numerical radius / Crawford number / angle cosine all equal the
classical ones of the r-by-r compression ``B = U_r* S T S^+ U_r``.  The
compression is a unital *-homomorphism: products map to products and the
weighted adjoint maps to the conjugate transpose.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatchError,
    NoAdjointError,
    NonSquareError,
    NotPSDError,
)
from .linalg import RankTolerance, as_cmatrix, frob, hermitian_eig

DEFAULT_MEMBERSHIP_TOL = 1e-8


@dataclass(frozen=True)
class CompressedOperator:
    """r-by-r classical-space compression of an operator.

    Built only for operators passing the membership test; the weighted
    functionals of the source operator equal the classical functionals of
    ``B``.
    """

    B: np.ndarray
    source_dim: int


@dataclass(frozen=True)
class SemiHilbertSpace:
    """Immutable bundle of the weight ``A`` and its cached factorizations."""

    A: np.ndarray
    S: np.ndarray
    S_pinv: np.ndarray
    A_pinv: np.ndarray
    U_r: np.ndarray
    P: np.ndarray
    rank: int
    dim: int
    tol: RankTolerance
    membership_tol: float = DEFAULT_MEMBERSHIP_TOL
    is_identity: bool = field(default=False)

    # -- vectors ---------------------------------------------------------

    def _check_vec(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.complex128).reshape(-1)
        if x.shape[0] != self.dim:
            raise DimensionMismatchError(f"vector of length {x.shape[0]}, space dim {self.dim}")
        return x

    def semi_inner(self, x, y) -> complex:
        """Weighted inner product <Ax, y>."""
        x = self._check_vec(x)
        y = self._check_vec(y)
        return complex(np.vdot(y, self.A @ x))

    def vec_seminorm(self, x) -> float:
        """Weighted seminorm ||S x||_2 = sqrt(<Ax, x>)."""
        x = self._check_vec(x)
        return float(np.linalg.norm(self.S @ x))

    # -- operators -------------------------------------------------------

    def _check_op(self, T) -> np.ndarray:
        T = as_cmatrix(T, "operator")
        if T.shape != (self.dim, self.dim):
            raise DimensionMismatchError(f"operator of shape {T.shape}, space dim {self.dim}")
        return T

    def admits_adjoint(self, T) -> bool:
        """Finite-dimensional membership test: range(T* A) inside range(A).

        True iff ``||(I - P) T* A||_F <= membership_tol * max(1, ||T* A||_F)``.
        """
        T = self._check_op(T)
        R = T.conj().T @ self.A
        res = frob(R - self.P @ R)
        return res <= self.membership_tol * max(1.0, frob(R))

    def sharp(self, T) -> np.ndarray:
        """Distinguished weighted adjoint ``A^+ T* A`` (reduced solution of A X = T* A)."""
        T = self._check_op(T)
        if not self.admits_adjoint(T):
            raise NoAdjointError("operator does not admit a weighted adjoint at tolerance")
        if self.is_identity:
            # classical limit: exact conjugate transpose, no pseudoinverse round-off
            return T.conj().T
        return self.A_pinv @ T.conj().T @ self.A

    def is_A_selfadjoint(self, T, rtol: float = 1e-8) -> bool:
        """True iff the product ``A T`` is Hermitian at relative tolerance."""
        T = self._check_op(T)
        M = self.A @ T
        return frob(M - M.conj().T) <= rtol * max(1.0, frob(M))

    def is_A_positive(self, T, rtol: float = 1e-8) -> bool:
        """True iff the product ``A T`` is PSD at relative tolerance."""
        T = self._check_op(T)
        M = self.A @ T
        if frob(M - M.conj().T) > rtol * max(1.0, frob(M)):
            return False
        evals = np.linalg.eigvalsh(0.5 * (M + M.conj().T))
        lam_max = max(float(evals[-1]), 0.0)
        return float(evals[0]) >= -rtol * max(1.0, lam_max)

    def compress(self, T) -> CompressedOperator:
        """Classical r-by-r compression ``U_r* S T S^+ U_r``."""
        T = self._check_op(T)
        if not self.admits_adjoint(T):
            raise NoAdjointError("operator does not admit a weighted adjoint at tolerance")
        B = self.U_r.conj().T @ (self.S @ T @ self.S_pinv) @ self.U_r
        return CompressedOperator(B=B, source_dim=self.dim)


def make_space(
    A,
    tol: RankTolerance | None = None,
    membership_tol: float = DEFAULT_MEMBERSHIP_TOL,
) -> SemiHilbertSpace:
    """Build the space context from a PSD weight.

    The weight must be square and Hermitian; eigenvalues in
    ``[-cutoff * lam_max, 0)`` are clamped to zero, anything more negative
    raises ``NotPSDError``.  The effective rank collects eigenvalues above
    ``cutoff * lam_max``.
    """
    A = as_cmatrix(A, "weight")
    if A.shape[0] != A.shape[1]:
        raise NonSquareError(f"weight must be square, got shape {A.shape}")
    tol = tol or RankTolerance()
    try:
        evals, V = hermitian_eig(A)
    except Exception as exc:  # NotHermitian -> weight is not PSD
        if isinstance(exc, NonSquareError):
            raise
        raise NotPSDError(f"weight is not Hermitian: {exc}") from exc
    n = A.shape[0]
    lam_max = max(float(evals[-1]), 0.0)
    cutoff = tol.cutoff_for(A.shape) * max(lam_max, 1e-300)
    if float(evals[0]) < -cutoff:
        raise NotPSDError(f"weight eigenvalue {evals[0]:.3e} below -{cutoff:.3e}")

    keep = evals > cutoff
    lam_r = evals[keep]
    U_r = np.ascontiguousarray(V[:, keep])
    r = int(lam_r.shape[0])

    S = (U_r * np.sqrt(lam_r)) @ U_r.conj().T
    S_pinv = (U_r / np.sqrt(lam_r)) @ U_r.conj().T if r else np.zeros_like(A)
    A_pinv = (U_r / lam_r) @ U_r.conj().T if r else np.zeros_like(A)
    P = U_r @ U_r.conj().T

    is_identity = bool(np.array_equal(A, np.eye(n, dtype=np.complex128)))
    if is_identity:
        # keep the classical limit free of eigensolver round-off
        S = np.eye(n, dtype=np.complex128)
        S_pinv = np.eye(n, dtype=np.complex128)
        A_pinv = np.eye(n, dtype=np.complex128)
        P = np.eye(n, dtype=np.complex128)
        U_r = np.eye(n, dtype=np.complex128)

    for arr in (A, S, S_pinv, A_pinv, U_r, P):
        arr.setflags(write=False)

    return SemiHilbertSpace(
        A=A,
        S=S,
        S_pinv=S_pinv,
        A_pinv=A_pinv,
        U_r=U_r,
        P=P,
        rank=r,
        dim=n,
        tol=tol,
        membership_tol=membership_tol,
        is_identity=is_identity,
    )
