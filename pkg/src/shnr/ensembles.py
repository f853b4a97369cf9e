"""Reproducible random instances for verification campaigns.

Randomness comes from the Philox counter-based generator keyed by
``(seed, trial_index, stream)``, so every draw is independent of evaluation
order, thread count and prior history.  Weights are complex-Wishart-like
matrices of prescribed rank normalized to unit spectral norm; operators are
members of the adjoint-admitting algebra by construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import FamilyNeedsIdentityAError
from .linalg import RankTolerance
from .space import SemiHilbertSpace, make_space

FAMILIES = (
    "generic",
    "a_selfadjoint",
    "a_positive",
    "nilpotent_classical",
    "normal_classical",
)
_CLASSICAL_FAMILIES = ("nilpotent_classical", "normal_classical")

_MASK64 = 0xFFFFFFFFFFFFFFFF


@dataclass(frozen=True)
class EnsembleSpec:
    """Parameters of one random-instance campaign."""

    dim: int
    rank: int
    trials: int
    seed: int
    family: str = "generic"

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be at least 1")
        if not (1 <= self.rank <= self.dim):
            raise ValueError(f"rank must lie in 1..dim, got {self.rank}")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {FAMILIES}")
        if self.family in _CLASSICAL_FAMILIES and self.rank != self.dim:
            raise ValueError(f"family {self.family!r} uses the identity weight; rank must equal dim")


def _rng(seed: int, trial_index: int, stream: int) -> np.random.Generator:
    bitgen = np.random.Philox(
        key=int(seed) & _MASK64,
        counter=[int(trial_index) & _MASK64, int(stream) & _MASK64, 0, 0],
    )
    return np.random.Generator(bitgen)


def _complex_gaussian(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def gen_space(spec: EnsembleSpec, trial_index: int,
              tol: RankTolerance | None = None) -> SemiHilbertSpace:
    """Random weight of the prescribed rank, unit spectral norm.

    ``A = G* D G`` with iid standard complex Gaussian ``G`` and ``D`` a
    diagonal of ``rank`` positive values padded with zeros.  Classical
    families use the identity weight.
    """
    if spec.family in _CLASSICAL_FAMILIES:
        return make_space(np.eye(spec.dim, dtype=np.complex128), tol)
    rng = _rng(spec.seed, trial_index, 0)
    G = _complex_gaussian(rng, (spec.dim, spec.dim))
    d = np.zeros(spec.dim)
    d[: spec.rank] = rng.uniform(0.5, 1.5, size=spec.rank)
    A = G.conj().T @ (d[:, None] * G)
    A = 0.5 * (A + A.conj().T)
    A /= np.linalg.norm(A, 2)
    return make_space(A, tol)


def gen_operator(spec: EnsembleSpec, sp: SemiHilbertSpace, trial_index: int,
                 component: int = 0) -> np.ndarray:
    """Random operator admitting a weighted adjoint, per family.

    ``component`` separates independent operand draws (T, S, ...) of the
    same trial.  Membership holds by construction: generic operators are
    assembled as ``T0 P + (I - P) T0 (I - P)``, which maps the null space of
    the weight into itself.
    """
    rng = _rng(spec.seed, trial_index, 1 + component)
    n = sp.dim
    if spec.family == "generic":
        T0 = _complex_gaussian(rng, (n, n))
        Q = np.eye(n) - sp.P
        return T0 @ sp.P + Q @ T0 @ Q
    if spec.family == "a_selfadjoint":
        H0 = _complex_gaussian(rng, (n, n))
        H0 = 0.5 * (H0 + H0.conj().T)
        return sp.A_pinv @ (sp.P @ H0 @ sp.P)
    if spec.family == "a_positive":
        C = _complex_gaussian(rng, (n, n))
        return sp.A_pinv @ (sp.P @ (C @ C.conj().T) @ sp.P)
    if not sp.is_identity:
        raise FamilyNeedsIdentityAError(
            f"family {spec.family!r} requires the identity weight"
        )
    if spec.family == "nilpotent_classical":
        # block strictly upper-triangular, hence T @ T = 0 in every dimension
        k = (n + 1) // 2
        T = np.zeros((n, n), dtype=np.complex128)
        if n > 1:
            T[:k, k:] = _complex_gaussian(rng, (k, n - k))
        return T
    # normal_classical
    Z = _complex_gaussian(rng, (n, n))
    Q, _ = np.linalg.qr(Z)
    lam = _complex_gaussian(rng, n)
    return (Q * lam) @ Q.conj().T
