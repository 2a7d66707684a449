"""Constructors and validators for the states used throughout the library.

Basis convention: the computational basis is indexed 0..d-1; two-qubit
states use the order |00>, |01>, |10>, |11>.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    InvalidDimension,
    IndexOutOfRange,
    InvalidRank,
    NonpositiveTemperature,
    NotHermitian,
    NotPSD,
    ParameterOutOfRange,
    TraceNotOne,
)
from .linalg import DEFAULT_TOL, Tolerances, as_complex_matrix, hermiticity_defect

_NORM_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class PureState:
    """Unit-norm complex state vector."""

    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        a = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if a.size == 0:
            raise InvalidDimension("state vector must have at least one amplitude")
        if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
            raise ValueError("amplitudes contain non-finite entries")
        norm = float(np.linalg.norm(a))
        if abs(norm - 1.0) > _NORM_TOL:
            raise ValueError(f"state norm {norm!r} deviates from 1 beyond {_NORM_TOL:.1e}")
        object.__setattr__(self, "amplitudes", a)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def density(self, tol: Tolerances = DEFAULT_TOL) -> "DensityMatrix":
        """Rank-1 density matrix |psi><psi|."""
        return validate_density(np.outer(self.amplitudes, self.amplitudes.conj()), tol)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Validated density operator: Hermitian, unit trace, PSD within tolerances."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = as_complex_matrix(self.matrix)
        _check_density_invariants(m, DEFAULT_TOL)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class HamiltonianSpec:
    """Energy levels and a positive temperature, in units with k_B = 1."""

    energies: np.ndarray
    temperature: float

    def __post_init__(self) -> None:
        e = np.asarray(self.energies, dtype=float).reshape(-1)
        if e.size == 0:
            raise InvalidDimension("at least one energy level is required")
        if not np.all(np.isfinite(e)):
            raise ValueError("energies contain non-finite entries")
        if not self.temperature > 0.0:
            raise NonpositiveTemperature(f"temperature must be > 0, got {self.temperature}")
        object.__setattr__(self, "energies", e)

    @property
    def dim(self) -> int:
        return self.energies.size

    def boltzmann_weights(self) -> np.ndarray:
        """Normalized Boltzmann weights, computed with a max-energy shift."""
        shifted = -(self.energies - self.energies.min()) / self.temperature
        w = np.exp(shifted)
        return w / w.sum()


def _check_density_invariants(m: np.ndarray, tol: Tolerances) -> None:
    defect = hermiticity_defect(m)
    if defect > tol.hermiticity_tol:
        raise NotHermitian(f"max |M - M^dag| = {defect:.3e} exceeds {tol.hermiticity_tol:.1e}")
    tr = m.trace()
    if abs(tr - 1.0) > tol.trace_tol:
        raise TraceNotOne(f"trace {tr.real!r} deviates from 1 beyond {tol.trace_tol:.1e}")
    wmin = float(np.linalg.eigvalsh(m)[0])
    if wmin < -tol.psd_tol:
        raise NotPSD(f"min eigenvalue {wmin:.3e} below -{tol.psd_tol:.1e}")


def validate_density(m, tol: Tolerances = DEFAULT_TOL) -> DensityMatrix:
    """Validate a raw matrix as a density operator.

    Raises :class:`NotHermitian`, :class:`TraceNotOne` or :class:`NotPSD`,
    naming the violated invariant and the measured violation.
    """
    a = as_complex_matrix(m)
    _check_density_invariants(a, tol)
    dm = DensityMatrix.__new__(DensityMatrix)
    object.__setattr__(dm, "matrix", a)
    return dm


def textureless_state(d: int) -> PureState:
    """The uniform superposition (1, ..., 1)/sqrt(d): the unique zero-texture state."""
    if d < 1:
        raise InvalidDimension(f"dimension must be >= 1, got {d}")
    return PureState(np.full(d, 1.0 / np.sqrt(d), dtype=complex))


def fourier_state(d: int, k: int) -> PureState:
    """k-th discrete-Fourier basis vector, k in 1..d.

    Amplitude j (1-based) is w^((k-1)(j-1))/sqrt(d) with w = exp(2*pi*i/d).
    k = 1 reproduces the textureless state; every k > 1 is a maximal-texture
    state orthogonal to it.
    """
    if d < 1:
        raise InvalidDimension(f"dimension must be >= 1, got {d}")
    if not 1 <= k <= d:
        raise IndexOutOfRange(f"k must be in 1..{d}, got {k}")
    j = np.arange(d)
    return PureState(np.exp(2j * np.pi * (k - 1) * j / d) / np.sqrt(d))


def bell_state(sign: str) -> PureState:
    """Two-qubit Bell state (|00> +- |11>)/sqrt(2); ``sign`` is "+" or "-"."""
    if sign not in ("+", "-"):
        raise ParameterOutOfRange(f'sign must be "+" or "-", got {sign!r}')
    s = 1.0 if sign == "+" else -1.0
    return PureState(np.array([1.0, 0.0, 0.0, s], dtype=complex) / np.sqrt(2.0))


def sigma_alpha(alpha: float) -> DensityMatrix:
    """Two-qubit family with uniform diagonal 1/4 and anti-diagonal alpha/4."""
    if not 0.0 <= alpha <= 1.0:
        raise ParameterOutOfRange(f"alpha must be in [0, 1], got {alpha}")
    m = np.eye(4, dtype=complex) + alpha * np.fliplr(np.eye(4, dtype=complex))
    return validate_density(m / 4.0)


def tau_alpha(alpha: float) -> DensityMatrix:
    """Two-qubit family with 1/2 at the |00>,|11> corners and alpha/2 off-corners."""
    if not 0.0 <= alpha <= 1.0:
        raise ParameterOutOfRange(f"alpha must be in [0, 1], got {alpha}")
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = m[3, 3] = 1.0
    m[0, 3] = m[3, 0] = alpha
    return validate_density(m / 2.0)


def gibbs_state(h: HamiltonianSpec) -> DensityMatrix:
    """Thermal state diag(exp(-E_i/T))/Z; exactly diagonal by construction."""
    return validate_density(np.diag(h.boltzmann_weights()).astype(complex))


def coherent_gibbs_ket(h: HamiltonianSpec) -> PureState:
    """Pure state with amplitudes exp(-E_i/2T)/sqrt(Z)."""
    amps = np.exp(-(h.energies - h.energies.min()) / (2.0 * h.temperature))
    return PureState(amps.astype(complex) / np.linalg.norm(amps))


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def complex_ginibre(rows: int, cols: int, rng: np.random.Generator) -> np.ndarray:
    """Matrix of independent standard complex Gaussians."""
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def random_pure(d: int, seed) -> PureState:
    """Haar-random pure state: normalized vector of complex Gaussians."""
    if d < 1:
        raise InvalidDimension(f"dimension must be >= 1, got {d}")
    g = complex_ginibre(d, 1, _rng(seed)).reshape(-1)
    return PureState(g / np.linalg.norm(g))


def random_density(d: int, rank: int, seed) -> DensityMatrix:
    """Random density matrix G G^dag / Tr with G a d x rank complex Ginibre matrix."""
    if not 1 <= rank <= d:
        raise InvalidRank(f"rank must be in 1..{d}, got {rank}")
    g = complex_ginibre(d, rank, _rng(seed))
    m = g @ g.conj().T
    return validate_density(m / m.trace().real)
