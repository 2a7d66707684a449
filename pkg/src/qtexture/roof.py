"""Pure-state ensemble decompositions and a convex-roof evaluator.

Every size-m decomposition of a rank-r state arises from an m x r isometry
applied to the spectral decomposition, so sampling isometries sweeps the
whole search space. For the geometric texture measure the ensemble average
is constant over that space; the roof evaluator exists to verify this, not
to search hard.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import InvalidSize
from .linalg import DEFAULT_TOL, Tolerances, hermitian_eig
from .states import DensityMatrix, PureState, complex_ginibre

_WEIGHT_SUM_TOL = 1e-10
_RECONSTRUCT_TOL = 1e-9
_MEMBER_FLOOR = 1e-12


@dataclass(frozen=True, eq=False)
class EnsembleDecomposition:
    """Weights p_i and pure states psi_i with sum_i p_i |psi_i><psi_i| = rho."""

    weights: np.ndarray
    states: tuple[PureState, ...]

    def __post_init__(self) -> None:
        w = np.asarray(self.weights, dtype=float).reshape(-1)
        if w.size != len(self.states) or w.size == 0:
            raise InvalidSize("weights and states must be nonempty and of equal length")
        if np.any(w <= 0.0):
            raise ValueError("ensemble weights must be strictly positive")
        if abs(w.sum() - 1.0) > _WEIGHT_SUM_TOL:
            raise ValueError(f"weights sum to {w.sum()!r}, not 1")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "states", tuple(self.states))

    @property
    def size(self) -> int:
        return self.weights.size

    def reconstruct(self) -> np.ndarray:
        """The density matrix sum_i p_i |psi_i><psi_i|."""
        d = self.states[0].dim
        acc = np.zeros((d, d), dtype=complex)
        for p, psi in zip(self.weights, self.states):
            acc += p * np.outer(psi.amplitudes, psi.amplitudes.conj())
        return acc


def _check_reconstruction(ens: EnsembleDecomposition, rho: DensityMatrix) -> EnsembleDecomposition:
    err = float(np.abs(ens.reconstruct() - rho.matrix).max())
    if err > _RECONSTRUCT_TOL:
        raise ValueError(f"ensemble reconstruction error {err:.3e} exceeds {_RECONSTRUCT_TOL:.1e}")
    return ens


def _spectral_parts(rho: DensityMatrix, tol: Tolerances) -> tuple[np.ndarray, np.ndarray]:
    w, v = hermitian_eig(rho.matrix, tol)
    w = np.clip(w, 0.0, None)
    keep = w > tol.rank_rel_tol * w.max()
    return w[keep], v[:, keep]


def spectral_ensemble(rho: DensityMatrix, tol: Tolerances = DEFAULT_TOL) -> EnsembleDecomposition:
    """Eigenvalue/eigenvector decomposition as the canonical ensemble."""
    w, v = _spectral_parts(rho, tol)
    states = tuple(PureState(v[:, i]) for i in range(w.size))
    return _check_reconstruction(EnsembleDecomposition(w / w.sum(), states), rho)


def _random_isometry(m: int, r: int, rng: np.random.Generator) -> np.ndarray:
    q, rr = np.linalg.qr(complex_ginibre(m, r, rng))
    diag = np.diagonal(rr)
    return q * (diag / np.abs(diag))


def random_ensemble(rho: DensityMatrix, m: int, seed, tol: Tolerances = DEFAULT_TOL) -> EnsembleDecomposition:
    """Random size-m decomposition steered by an m x rank isometry.

    Unnormalized members are psi_i = sum_j V_ij sqrt(lambda_j) e_j; weights
    are their squared norms. Members below a 1e-12 weight floor are dropped
    and the rest renormalized.
    """
    lam, vecs = _spectral_parts(rho, tol)
    r = lam.size
    if m < r:
        raise InvalidSize(f"ensemble size {m} below the state's rank {r}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    iso = _random_isometry(m, r, rng)
    members = (vecs * np.sqrt(lam)) @ iso.T
    weights = np.linalg.norm(members, axis=0) ** 2
    keep = weights > _MEMBER_FLOOR
    members, weights = members[:, keep], weights[keep]
    states = tuple(PureState(members[:, i] / np.sqrt(weights[i])) for i in range(weights.size))
    return _check_reconstruction(EnsembleDecomposition(weights / weights.sum(), states), rho)


def ensemble_average(ens: EnsembleDecomposition, f: Callable[[PureState], float]) -> float:
    """Weighted average sum_i p_i f(psi_i) of a pure-state functional."""
    return float(sum(p * f(psi) for p, psi in zip(ens.weights, ens.states)))


@dataclass(frozen=True, eq=False)
class RoofResult:
    value: float
    argmin: EnsembleDecomposition


def roof_minimize(
    rho: DensityMatrix,
    f: Callable[[PureState], float],
    budget: int = 100,
    seed: int = 0,
    tol: Tolerances = DEFAULT_TOL,
) -> RoofResult:
    """Minimum ensemble average of ``f`` over the spectral ensemble plus
    ``budget`` random ensembles with sizes in rank..2*rank.

    Deterministic for a fixed seed; ties resolve to the earliest sample.
    """
    if budget < 1:
        raise InvalidSize(f"budget must be >= 1, got {budget}")
    spectral = spectral_ensemble(rho, tol)
    rank = spectral.size
    best_value = ensemble_average(spectral, f)
    best_ens = spectral
    rng = np.random.default_rng(seed)
    for _ in range(budget):
        m = int(rng.integers(rank, 2 * rank + 1))
        ens = random_ensemble(rho, m, rng, tol)
        val = ensemble_average(ens, f)
        if val < best_value - 0.0:
            best_value, best_ens = val, ens
    return RoofResult(best_value, best_ens)
