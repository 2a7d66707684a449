"""Kraus-form channels and generators of free operations.

A channel is *free* when it fixes the textureless state. All generator
families below satisfy a stronger structural condition: every individual
Kraus operator maps the textureless vector to a scalar multiple of itself
(possibly zero), which guarantees freeness by construction.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DimensionMismatch, IncompleteChannel
from .linalg import DEFAULT_TOL, Tolerances, as_complex_matrix
from .states import (
    DensityMatrix,
    PureState,
    complex_ginibre,
    fourier_state,
    textureless_state,
    validate_density,
)

_RESIDUAL_TOL = 1e-9


class Freeness(enum.Enum):
    CERTIFIED = "certified"
    UNCERTIFIED = "uncertified"


class Diagnostic(NamedTuple):
    """Boolean verdict plus the max-entry residual it was decided on."""

    ok: bool
    residual: float


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """Finite list of same-dimension Kraus operators.

    Construction only checks shapes; completeness and freeness are asserted
    by :func:`certify_free` (for generated channels) or diagnosed after the
    fact with :func:`is_cptp` / :func:`is_free`, so that deliberately broken
    channels can still be inspected.
    """

    kraus: tuple[np.ndarray, ...]
    freeness: Freeness = Freeness.UNCERTIFIED

    def __post_init__(self) -> None:
        if not self.kraus:
            raise ValueError("channel needs at least one Kraus operator")
        ops = tuple(as_complex_matrix(k) for k in self.kraus)
        d = ops[0].shape[0]
        for k in ops:
            if k.shape[0] != d:
                raise DimensionMismatch("Kraus operators must share one dimension")
        object.__setattr__(self, "kraus", ops)

    @property
    def dim(self) -> int:
        return self.kraus[0].shape[0]


def completeness_residual(ch: KrausChannel) -> float:
    """Max-entry deviation of sum K^dag K from the identity."""
    acc = sum(k.conj().T @ k for k in ch.kraus)
    return float(np.abs(acc - np.eye(ch.dim)).max())


def freeness_residual(ch: KrausChannel) -> float:
    """Max-entry deviation of the channel's image of the textureless state."""
    flat = textureless_state(ch.dim).density().matrix
    out = sum(k @ flat @ k.conj().T for k in ch.kraus)
    return float(np.abs(out - flat).max())


def is_cptp(ch: KrausChannel) -> Diagnostic:
    r = completeness_residual(ch)
    return Diagnostic(r <= _RESIDUAL_TOL, r)


def is_free(ch: KrausChannel) -> Diagnostic:
    r = freeness_residual(ch)
    return Diagnostic(r <= _RESIDUAL_TOL, r)


def certify_free(kraus: Sequence[np.ndarray]) -> KrausChannel:
    """Build a channel and assert both the CPTP and freeness residuals."""
    ch = KrausChannel(tuple(kraus), Freeness.CERTIFIED)
    r = completeness_residual(ch)
    if r > _RESIDUAL_TOL:
        raise IncompleteChannel(f"completeness residual {r:.3e} exceeds {_RESIDUAL_TOL:.1e}")
    rf = freeness_residual(ch)
    if rf > _RESIDUAL_TOL:
        raise ValueError(f"freeness residual {rf:.3e} exceeds {_RESIDUAL_TOL:.1e}")
    return ch


def apply(ch: KrausChannel, rho: DensityMatrix, tol: Tolerances = DEFAULT_TOL) -> DensityMatrix:
    """Apply the channel: sum_n K_n rho K_n^dag, validated as a density matrix."""
    if ch.dim != rho.dim:
        raise DimensionMismatch(f"channel dim {ch.dim} != state dim {rho.dim}")
    r = completeness_residual(ch)
    if r > _RESIDUAL_TOL:
        raise IncompleteChannel(f"completeness residual {r:.3e} exceeds {_RESIDUAL_TOL:.1e}")
    out = sum(k @ rho.matrix @ k.conj().T for k in ch.kraus)
    return validate_density(out, tol)


def haar_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary: QR of a Ginibre matrix with the phase correction."""
    q, r = np.linalg.qr(complex_ginibre(d, d, rng))
    diag = np.diagonal(r)
    return q * (diag / np.abs(diag))


def flat_basis_change(d: int) -> np.ndarray:
    """Fixed Householder reflection sending e_1 to the textureless vector.

    Real symmetric and involutory, so it is its own inverse.
    """
    flat = textureless_state(d).amplitudes.real
    u = np.zeros(d)
    u[0] = 1.0
    u -= flat
    nrm2 = float(u @ u)
    if nrm2 < 1e-30:
        return np.eye(d, dtype=complex)
    h = np.eye(d) - 2.0 * np.outer(u, u) / nrm2
    return h.astype(complex)


def free_unitary_mixture(d: int, n_unitaries: int, seed) -> KrausChannel:
    """Random mixture of unitaries that each fix the textureless vector up to phase.

    Each unitary is a random phase on the textureless direction plus a Haar
    block on its orthocomplement, conjugated into the computational basis;
    the mixing weights are uniform on the simplex.
    """
    if n_unitaries < 1:
        raise ValueError(f"n_unitaries must be >= 1, got {n_unitaries}")
    rng = np.random.default_rng(seed) if not isinstance(seed, np.random.Generator) else seed
    basis = flat_basis_change(d)
    weights = rng.exponential(size=n_unitaries)
    weights /= weights.sum()
    kraus = []
    for n in range(n_unitaries):
        block = np.zeros((d, d), dtype=complex)
        block[0, 0] = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))
        if d > 1:
            block[1:, 1:] = haar_unitary(d - 1, rng)
        kraus.append(np.sqrt(weights[n]) * (basis @ block @ basis))
    return certify_free(kraus)


def fourier_dephasing(d: int) -> KrausChannel:
    """Projective dephasing in the Fourier basis: Kraus set {|f_k><f_k|}."""
    kraus = []
    for k in range(1, d + 1):
        v = fourier_state(d, k).amplitudes
        kraus.append(np.outer(v, v.conj()))
    return certify_free(kraus)


def fourier_replace(d: int, targets: Sequence[PureState]) -> KrausChannel:
    """Channel that keeps the textureless component and rewrites each other
    Fourier component k >= 2 onto the corresponding target state.

    Kraus set: K_1 = |f_1><f_1| and K_k = |target_k><f_k|. Completeness is
    exact because the Fourier vectors are orthonormal; freeness holds since
    K_1 fixes the textureless vector and every other K_k annihilates it.
    """
    if len(targets) != d - 1:
        raise DimensionMismatch(f"expected {d - 1} target states, got {len(targets)}")
    for t in targets:
        if t.dim != d:
            raise DimensionMismatch(f"target dim {t.dim} != channel dim {d}")
    flat = textureless_state(d).amplitudes
    kraus = [np.outer(flat, flat.conj())]
    for k, target in enumerate(targets, start=2):
        fk = fourier_state(d, k).amplitudes
        kraus.append(np.outer(target.amplitudes, fk.conj()))
    return certify_free(kraus)
