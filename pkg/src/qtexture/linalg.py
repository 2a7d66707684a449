"""Dense Hermitian matrix kernel shared by every other module.

All routines take the Hermitian path only: inputs are validated against a
Hermiticity tolerance and decomposed with ``numpy.linalg.eigh``. General
non-normal matrices are rejected on purpose; everything this library
analyzes is Hermitian or a difference of Hermitians.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

import numpy as np

from .errors import NotHermitian, NotPSD

# Relative floor below which eigenvalues of a PSD matrix are treated as
# exact zeros (they are indistinguishable from eigensolver noise). Keeping
# them would let sqrt amplify O(eps) noise into O(sqrt(eps)) errors.
_NOISE_FLOOR_REL = 1e-13


@dataclass(frozen=True)
class Tolerances:
    """Shared tolerance policy for validation and rank decisions."""

    hermiticity_tol: float = 1e-9
    psd_tol: float = 1e-9
    trace_tol: float = 1e-9
    rank_rel_tol: float = 1e-10
    monotonicity_slack: float = 1e-9

    def __post_init__(self) -> None:
        for f in fields(self):
            if getattr(self, f.name) <= 0.0:
                raise ValueError(f"{f.name} must be strictly positive")


DEFAULT_TOL = Tolerances()


def as_complex_matrix(m) -> np.ndarray:
    """Return ``m`` as a square complex128 array, rejecting non-finite entries."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValueError("matrix contains non-finite entries")
    return a


def hermiticity_defect(m: np.ndarray) -> float:
    """Max-entry deviation of ``m`` from its own adjoint."""
    return float(np.abs(m - m.conj().T).max()) if m.size else 0.0


def require_hermitian(m: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    defect = hermiticity_defect(m)
    if defect > tol.hermiticity_tol:
        raise NotHermitian(f"max |M - M^dag| = {defect:.3e} exceeds {tol.hermiticity_tol:.1e}")
    return m


def hermitian_eig(m, tol: Tolerances = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns eigenvalues in ascending order and the matching orthonormal
    eigenvectors as columns. Raises :class:`NotHermitian` for inputs whose
    Hermiticity defect exceeds the tolerance.
    """
    a = as_complex_matrix(m)
    require_hermitian(a, tol)
    w, v = np.linalg.eigh(a)
    return w, v


def trace_norm(m, tol: Tolerances = DEFAULT_TOL) -> float:
    """Trace norm (sum of absolute eigenvalues) of a Hermitian matrix."""
    w, _ = hermitian_eig(m, tol)
    return float(np.abs(w).sum())


def _clip_psd_eigenvalues(w: np.ndarray, tol: Tolerances) -> np.ndarray:
    if w.size and w[0] < -tol.psd_tol:
        raise NotPSD(f"min eigenvalue {w[0]:.3e} below -{tol.psd_tol:.1e}")
    w = np.clip(w, 0.0, None)
    if w.size:
        # zero out sub-noise components so sqrt/log cannot amplify them
        w[w < w.max() * _NOISE_FLOOR_REL] = 0.0
    return w


def psd_sqrt(m, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Hermitian PSD square root via eigendecomposition.

    Eigenvalues in [-psd_tol, 0) are clipped to exactly 0; anything more
    negative raises :class:`NotPSD`.
    """
    w, v = hermitian_eig(m, tol)
    w = _clip_psd_eigenvalues(w, tol)
    return (v * np.sqrt(w)) @ v.conj().T


def support_projector(m, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Orthogonal projector onto the span of the nonzero eigenvectors.

    Rank is decided by the relative threshold ``rank_rel_tol * lambda_max``;
    an all-zero spectrum yields the zero projector.
    """
    w, v = hermitian_eig(m, tol)
    w = _clip_psd_eigenvalues(w, tol)
    if not w.size or w.max() == 0.0:
        return np.zeros_like(v)
    keep = w > tol.rank_rel_tol * w.max()
    vk = v[:, keep]
    return vk @ vk.conj().T


def numerical_rank(m, tol: Tolerances = DEFAULT_TOL) -> int:
    """Number of eigenvalues above the relative rank threshold."""
    w, _ = hermitian_eig(m, tol)
    w = _clip_psd_eigenvalues(w, tol)
    if not w.size or w.max() == 0.0:
        return 0
    return int(np.count_nonzero(w > tol.rank_rel_tol * w.max()))
